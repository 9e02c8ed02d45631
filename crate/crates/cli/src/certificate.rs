//! Certificate documents. A certificate embeds the problem it answers, so it
//! can be re-verified on its own.

use std::collections::BTreeMap;

use chaincert_core::chains::Closeness;
use chaincert_core::constructors::{
    DugundjiCertificate, ExtensionCertificate, FillRecord, HomotopyCertificate, LevelMember, LiftCertificate,
    NearestAssignment, NerveFactorization,
};
use chaincert_core::{Chain, ChainHomotopy, ChainMorphism, Ring, Simplex, SimplicialComplex};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::format::{
    chain_doc, complex_doc, morphism_doc, parse_chain, parse_complex, parse_values, ChainDoc, ComplexDoc, MorphismDoc,
    ProblemFile,
};
use crate::CliError;

pub const FORMAT: &str = "chaincert-certificate/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub format: String,
    pub command: String,
    pub problem: ProblemFile,
    pub result: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignedMember {
    pub simplex: Vec<String>,
    pub level: usize,
    pub member: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FillDoc {
    pub simplex: Vec<String>,
    pub cycle: ChainDoc,
    pub level: usize,
    pub pair: String,
    pub member: String,
    pub solution: ChainDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDoc {
    pub phi: MorphismDoc,
    pub cover_assignment: Vec<AssignedMember>,
    pub fill_log: Vec<FillDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CloseDoc {
    pub simplex: Vec<String>,
    pub member: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftDoc {
    pub extension: ExtensionDoc,
    pub lifted_vertices: BTreeMap<String, String>,
    pub closeness: Vec<CloseDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopyDoc {
    pub d: MorphismDoc,
    pub cover_assignment: Vec<AssignedMember>,
    pub fill_log: Vec<FillDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NearestDoc {
    pub vertex: String,
    pub nearest: String,
    pub distance: usize,
    pub factor_two: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DugundjiDoc {
    pub w: ComplexDoc,
    pub radius: usize,
    pub nearest: Vec<NearestDoc>,
    pub extension: ExtensionDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NerveDoc {
    pub k: ComplexDoc,
    pub vertex_assignment: BTreeMap<String, String>,
    pub lambda: MorphismDoc,
    pub phi: ExtensionDoc,
    pub closeness: Vec<CloseDoc>,
}

fn invalid(field: &str, message: impl ToString) -> CliError {
    CliError::Invalid { field: field.into(), message: message.to_string() }
}

fn simplex(v: &[String], field: &str) -> Result<Simplex, CliError> {
    Simplex::new(v).ok_or_else(|| invalid(field, "repeated vertex"))
}

fn assignment_docs(a: &BTreeMap<Simplex, LevelMember>) -> Vec<AssignedMember> {
    a.iter()
        .map(|(s, lm)| AssignedMember { simplex: s.vertices().to_vec(), level: lm.level, member: lm.member.clone() })
        .collect()
}

fn parse_assignment(docs: &[AssignedMember], field: &str) -> Result<BTreeMap<Simplex, LevelMember>, CliError> {
    docs.iter()
        .map(|d| Ok((simplex(&d.simplex, field)?, LevelMember { level: d.level, member: d.member.clone() })))
        .collect()
}

fn fill_docs(log: &[FillRecord], ring: &Ring) -> Vec<FillDoc> {
    log.iter()
        .map(|r| FillDoc {
            simplex: r.simplex.vertices().to_vec(),
            cycle: chain_doc(&r.cycle, ring),
            level: r.level,
            pair: r.pair.clone(),
            member: r.member.clone(),
            solution: chain_doc(&r.solution, ring),
        })
        .collect()
}

fn parse_fills(docs: &[FillDoc], ring: &Ring, field: &str) -> Result<Vec<FillRecord>, CliError> {
    docs.iter()
        .map(|d| {
            let s = simplex(&d.simplex, field)?;
            Ok(FillRecord {
                cycle: parse_chain(&d.cycle, d.level, ring, field)?,
                solution: parse_chain(&d.solution, d.level + 1, ring, field)?,
                simplex: s,
                level: d.level,
                pair: d.pair.clone(),
                member: d.member.clone(),
            })
        })
        .collect()
}

fn close_docs(c: &Closeness) -> Vec<CloseDoc> {
    c.assignment.iter().map(|(s, m)| CloseDoc { simplex: s.vertices().to_vec(), member: m.clone() }).collect()
}

fn parse_close(docs: &[CloseDoc], field: &str) -> Result<Closeness, CliError> {
    let assignment = docs
        .iter()
        .map(|d| Ok((simplex(&d.simplex, field)?, d.member.clone())))
        .collect::<Result<_, CliError>>()?;
    Ok(Closeness { assignment, failure: None })
}

/// `source`/`target` name the complexes in the embedded problem.
pub fn extension_doc(c: &ExtensionCertificate, source: &str, target: &str, ring: &Ring) -> ExtensionDoc {
    ExtensionDoc {
        phi: morphism_doc(source, target, c.phi.degree_cap, &c.phi.assignment, ring),
        cover_assignment: assignment_docs(&c.cover_assignment),
        fill_log: fill_docs(&c.fill_log, ring),
    }
}

pub fn parse_extension(
    d: &ExtensionDoc,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    ring: &Ring,
) -> Result<ExtensionCertificate, CliError> {
    let assignment = parse_values(&d.phi, 0, source, ring, "result.phi")?;
    Ok(ExtensionCertificate {
        phi: ChainMorphism {
            source: source.clone(),
            target: target.clone(),
            degree_cap: d.phi.degree_cap,
            ring: ring.clone(),
            assignment,
        },
        cover_assignment: parse_assignment(&d.cover_assignment, "result.cover_assignment")?,
        fill_log: parse_fills(&d.fill_log, ring, "result.fill_log")?,
    })
}

pub fn lift_doc(c: &LiftCertificate, source: &str, target: &str, ring: &Ring) -> LiftDoc {
    LiftDoc {
        extension: extension_doc(&c.extension, source, target, ring),
        lifted_vertices: c.lifted_vertices.clone(),
        closeness: close_docs(&c.closeness),
    }
}

pub fn parse_lift(
    d: &LiftDoc,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    ring: &Ring,
) -> Result<LiftCertificate, CliError> {
    Ok(LiftCertificate {
        extension: parse_extension(&d.extension, source, target, ring)?,
        lifted_vertices: d.lifted_vertices.clone(),
        closeness: parse_close(&d.closeness, "result.closeness")?,
    })
}

pub fn homotopy_doc(c: &HomotopyCertificate, source: &str, target: &str, ring: &Ring) -> HomotopyDoc {
    HomotopyDoc {
        d: morphism_doc(source, target, c.d.degree_cap, &c.d.assignment, ring),
        cover_assignment: assignment_docs(&c.cover_assignment),
        fill_log: fill_docs(&c.fill_log, ring),
    }
}

pub fn parse_homotopy(
    d: &HomotopyDoc,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    ring: &Ring,
) -> Result<HomotopyCertificate, CliError> {
    let assignment = parse_values(&d.d, 1, source, ring, "result.d")?;
    Ok(HomotopyCertificate {
        d: ChainHomotopy {
            source: source.clone(),
            target: target.clone(),
            degree_cap: d.d.degree_cap,
            ring: ring.clone(),
            assignment,
        },
        cover_assignment: parse_assignment(&d.cover_assignment, "result.cover_assignment")?,
        fill_log: parse_fills(&d.fill_log, ring, "result.fill_log")?,
    })
}

pub fn dugundji_doc(c: &DugundjiCertificate, target: &str, ring: &Ring) -> DugundjiDoc {
    DugundjiDoc {
        w: complex_doc(&c.w),
        radius: c.radius,
        nearest: c
            .nearest
            .iter()
            .map(|x| NearestDoc {
                vertex: x.vertex.clone(),
                nearest: x.nearest.clone(),
                distance: x.distance,
                factor_two: x.factor_two,
            })
            .collect(),
        extension: extension_doc(&c.extension, "W", target, ring),
    }
}

pub fn parse_dugundji(d: &DugundjiDoc, target: &SimplicialComplex, ring: &Ring) -> Result<DugundjiCertificate, CliError> {
    let w = parse_complex(&d.w, "result.w")?;
    Ok(DugundjiCertificate {
        extension: parse_extension(&d.extension, &w, target, ring)?,
        w,
        radius: d.radius,
        nearest: d
            .nearest
            .iter()
            .map(|x| NearestAssignment {
                vertex: x.vertex.clone(),
                nearest: x.nearest.clone(),
                distance: x.distance,
                factor_two: x.factor_two,
            })
            .collect(),
    })
}

pub fn nerve_doc(c: &NerveFactorization, y: &str, x: &str, ring: &Ring) -> NerveDoc {
    NerveDoc {
        k: complex_doc(&c.k),
        vertex_assignment: c.vertex_assignment.clone(),
        lambda: morphism_doc(y, "K", c.lambda.degree_cap, &c.lambda.assignment, ring),
        phi: extension_doc(&c.phi, "K", x, ring),
        closeness: close_docs(&c.closeness),
    }
}

pub fn parse_nerve(
    d: &NerveDoc,
    y: &SimplicialComplex,
    x: &SimplicialComplex,
    ring: &Ring,
) -> Result<NerveFactorization, CliError> {
    let k = parse_complex(&d.k, "result.k")?;
    let lambda_values = parse_values(&d.lambda, 0, y, ring, "result.lambda")?;
    Ok(NerveFactorization {
        lambda: ChainMorphism {
            source: y.clone(),
            target: k.clone(),
            degree_cap: d.lambda.degree_cap,
            ring: ring.clone(),
            assignment: lambda_values,
        },
        phi: parse_extension(&d.phi, &k, x, ring)?,
        vertex_assignment: d.vertex_assignment.clone(),
        closeness: parse_close(&d.closeness, "result.closeness")?,
        k,
    })
}

/// A chain given with its dimension.
pub fn chain_value(c: &Chain, ring: &Ring) -> Value {
    serde_json::json!({ "dim": c.dim(), "terms": chain_doc(c, ring) })
}
