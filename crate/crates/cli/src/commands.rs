//! Command dispatch: resolve the objects a command needs, run it, and render
//! a deterministic plain-text report.

use std::fmt::Write as _;

use chaincert_core::constructors::{
    approximate_lift, build_homotopy, dugundji_extend, extend_realization, nerve_factorization, ConstructError,
    HomotopyProblem, LiftProblem, RealizationProblem,
};
use chaincert_core::homology::homology;
use chaincert_core::uvn::{check_approx_lcn, check_lcn, check_uvn_map, check_uvn_pair, MapReport};
use chaincert_core::verify::{
    verify_dugundji, verify_extension, verify_homotopy_certificate, verify_lift, verify_nerve_factorization, Report,
};
use chaincert_core::{FiltrationTower, SimplicialMap};
use serde_json::Value;

use crate::certificate::{
    dugundji_doc, extension_doc, homotopy_doc, lift_doc, nerve_doc, parse_dugundji, parse_extension,
    parse_homotopy, parse_lift, parse_nerve, CertificateFile, DugundjiDoc, ExtensionDoc, HomotopyDoc, LiftDoc,
    NerveDoc, FORMAT,
};
use crate::format::{to_pretty, Problem, ProblemFile};
use crate::CliError;

/// Exit code for a true verdict or a successful construction.
pub const EXIT_OK: i32 = 0;
/// Exit code for a false verdict or a construction blocked by mathematics.
pub const EXIT_FALSE: i32 = 1;
/// Exit code for malformed input or a failed precondition.
pub const EXIT_ERROR: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Homology,
    CheckUvn,
    CheckLcn,
    CheckAlcn,
    ExtendRealization,
    Lift,
    BuildHomotopy,
    DugundjiExtend,
    NerveFactorize,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Homology => "homology",
            Kind::CheckUvn => "check-uvn",
            Kind::CheckLcn => "check-lcn",
            Kind::CheckAlcn => "check-alcn",
            Kind::ExtendRealization => "extend-realization",
            Kind::Lift => "lift",
            Kind::BuildHomotopy => "build-homotopy",
            Kind::DugundjiExtend => "dugundji-extend",
            Kind::NerveFactorize => "nerve-factorize",
        }
    }

    pub fn from_name(name: &str) -> Option<Kind> {
        [
            Kind::Homology,
            Kind::CheckUvn,
            Kind::CheckLcn,
            Kind::CheckAlcn,
            Kind::ExtendRealization,
            Kind::Lift,
            Kind::BuildHomotopy,
            Kind::DugundjiExtend,
            Kind::NerveFactorize,
        ]
        .into_iter()
        .find(|k| k.name() == name)
    }
}

/// Flags shared by the problem-solving commands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub ring: Option<String>,
    pub n: Option<usize>,
    pub dim: Option<usize>,
    pub strict_vertices: bool,
}

/// Exit code, report text, and the certificate document on success.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    pub certificate: Option<String>,
}

struct Out {
    text: String,
}

impl Out {
    fn new(command: &str) -> Out {
        let mut text = String::new();
        let _ = writeln!(text, "command: {command}");
        Out { text }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn finish(mut self, code: i32, certificate: Option<String>) -> Outcome {
        let verdict = match code {
            EXIT_OK => "PASS",
            EXIT_FALSE => "FAIL",
            _ => "ERROR",
        };
        self.line(format!("verdict: {verdict}"));
        Outcome { code, report: self.text, certificate }
    }

    fn error(mut self, e: &CliError) -> Outcome {
        self.line(format!("error: {e}"));
        self.finish(EXIT_ERROR, None)
    }
}

fn load(text: &str, opts: &Options) -> Result<Problem, CliError> {
    let mut file: ProblemFile = serde_json::from_str(text)?;
    if let Some(r) = &opts.ring {
        file.ring = r.clone();
    }
    Problem::from_file(&file)
}

fn degree(p: &Problem, opts: &Options) -> Result<usize, CliError> {
    opts.n
        .or(p.usize_arg("n")?)
        .ok_or_else(|| CliError::Invalid { field: "n".into(), message: "pass --n or set command_args.n".into() })
}

fn tower_degree(tower: &FiltrationTower, opts: &Options) -> Result<(), CliError> {
    if let Some(n) = opts.n {
        if n != tower.top_degree() {
            return Err(CliError::Invalid {
                field: "n".into(),
                message: format!("the tower has top degree {}, not {n}", tower.top_degree()),
            });
        }
    }
    Ok(())
}

/// Run `kind` on the problem text.
pub fn solve(kind: Kind, text: &str, opts: &Options) -> Outcome {
    let out = Out::new(kind.name());
    let problem = match load(text, opts) {
        Ok(p) => p,
        Err(e) => return out.error(&e),
    };
    let result = match kind {
        Kind::Homology => run_homology(&problem, opts, out),
        Kind::CheckUvn => run_check_uvn(&problem, opts, out),
        Kind::CheckLcn => run_check_lcn(&problem, opts, out),
        Kind::CheckAlcn => run_check_alcn(&problem, opts, out),
        Kind::ExtendRealization => run_extend(&problem, opts, out),
        Kind::Lift => run_lift(&problem, opts, out),
        Kind::BuildHomotopy => run_homotopy(&problem, opts, out),
        Kind::DugundjiExtend => run_dugundji(&problem, opts, out),
        Kind::NerveFactorize => run_nerve(&problem, opts, out),
    };
    match result {
        Ok(o) => o,
        Err((out, e)) => out.error(&e),
    }
}

type Step = Result<Outcome, (Out, CliError)>;

macro_rules! tryo {
    ($out:ident, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Err(($out, CliError::from(e))),
        }
    };
}

fn run_homology(p: &Problem, opts: &Options, mut out: Out) -> Step {
    let (name, k) = tryo!(out, p.pick(&p.complexes, "complex"));
    out.line(format!("ring: {}", p.ring));
    out.line(format!("complex: {name}"));
    let dims: Vec<usize> = match opts.dim.or(tryo!(out, p.usize_arg("dim"))) {
        Some(d) => vec![d],
        None => (0..=k.dim().unwrap_or(0)).collect(),
    };
    for d in dims {
        let h = homology(k, d, &p.ring);
        out.line(format!("H_{d} = {}", if h.is_trivial() { "0".to_string() } else { h.to_string() }));
        for (i, g) in h.generators.iter().enumerate() {
            out.line(format!("  generator {i} (order {}): {g}", h.order(i)));
        }
    }
    Ok(out.finish(EXIT_OK, None))
}

fn report_map(out: &mut Out, r: &MapReport) -> i32 {
    for d in &r.defects {
        out.line(format!("defect: {d}"));
    }
    for o in &r.obligations {
        let verdict = if o.holds { "trivial" } else { "NONTRIVIAL" };
        out.line(format!("level {} pair {} -> {}: {verdict}", o.level, o.pair, o.outer));
        if let Some(w) = &o.result.witness {
            out.line(format!("  witness cycle: {w}"));
        }
    }
    if r.holds() {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

fn run_check_uvn(p: &Problem, opts: &Options, mut out: Out) -> Step {
    out.line(format!("ring: {}", p.ring));
    let n = tryo!(out, degree(p, opts).or_else(|e| {
        if p.command_args.contains_key("tower") || (p.towers.len() == 1 && !p.maps.is_empty()) {
            p.pick(&p.towers, "tower").map(|(_, t)| t.tower.top_degree())
        } else {
            Err(e)
        }
    }));
    out.line(format!("n: {n}"));
    if p.command_args.contains_key("map") || (!p.maps.is_empty() && !p.command_args.contains_key("v")) {
        let (fname, f) = tryo!(out, p.pick(&p.maps, "map"));
        let (tname, t) = tryo!(out, p.pick(&p.towers, "tower"));
        out.line(format!("map: {fname}"));
        out.line(format!("tower: {tname}"));
        let r = tryo!(out, check_uvn_map(&f.map, &t.tower, n, &p.ring));
        let code = report_map(&mut out, &r);
        return Ok(out.finish(code, None));
    }
    let (vname, v) = tryo!(out, p.pick(&p.complexes, "v"));
    let (uname, u) = tryo!(out, p.pick(&p.complexes, "u"));
    out.line(format!("pair: {vname} in {uname}"));
    let r = tryo!(out, check_uvn_pair(v, u, n, &p.ring));
    for (k, t) in r.degrees.iter().enumerate() {
        out.line(format!("H_{k}: {}", if t.trivial { "trivial" } else { "NONTRIVIAL" }));
        if let Some(w) = &t.witness {
            out.line(format!("  witness cycle: {w}"));
        }
    }
    Ok(out.finish(if r.holds { EXIT_OK } else { EXIT_FALSE }, None))
}

fn run_check_lcn(p: &Problem, opts: &Options, mut out: Out) -> Step {
    out.line(format!("ring: {}", p.ring));
    let (xname, x) = tryo!(out, p.pick(&p.complexes, "complex"));
    let (tname, t) = tryo!(out, p.pick(&p.towers, "tower"));
    let n = opts.n.or(tryo!(out, p.usize_arg("n"))).unwrap_or(t.tower.top_degree());
    out.line(format!("complex: {xname}"));
    out.line(format!("tower: {tname}"));
    out.line(format!("n: {n}"));
    let r = tryo!(out, check_lcn(x, &t.tower, n, &p.ring));
    let code = report_map(&mut out, &r);
    Ok(out.finish(code, None))
}

fn run_check_alcn(p: &Problem, opts: &Options, mut out: Out) -> Step {
    out.line(format!("ring: {}", p.ring));
    let n = tryo!(out, degree(p, opts));
    let (vn, v) = tryo!(out, p.pick(&p.complexes, "v"));
    let (wn, w) = tryo!(out, p.pick(&p.complexes, "w"));
    let (un, u) = tryo!(out, p.pick(&p.complexes, "u"));
    out.line(format!("triple: {vn} in {wn} in {un}"));
    out.line(format!("n: {n}"));
    out.line(format!("strict vertices: {}", opts.strict_vertices));
    let r = tryo!(out, check_approx_lcn(v, w, u, n, &p.ring, opts.strict_vertices));
    for item in &r.items {
        match &item.companion {
            Some(c) => out.line(format!("degree {} cycle {}: companion {c}", item.degree, item.cycle)),
            None => out.line(format!("degree {} cycle {}: NO COMPANION", item.degree, item.cycle)),
        }
    }
    Ok(out.finish(if r.holds() { EXIT_OK } else { EXIT_FALSE }, None))
}

fn construct_failure(mut out: Out, e: ConstructError) -> Step {
    out.line(format!("failure: {e}"));
    let code = match &e {
        ConstructError::NotFillable(o) => {
            out.line(format!("obstruction simplex: {}", o.simplex));
            out.line(format!("obstruction cycle: {}", o.cycle));
            out.line(format!("obstruction level: {}", o.level));
            out.line(format!("obstruction member: {}", o.member));
            EXIT_FALSE
        }
        ConstructError::CloseFail(_) => EXIT_FALSE,
        _ => EXIT_ERROR,
    };
    Ok(out.finish(code, None))
}

fn certificate(kind: Kind, p: &Problem, result: Value) -> String {
    to_pretty(&CertificateFile { format: FORMAT.into(), command: kind.name().into(), problem: p.to_file(), result })
}

/// Names and objects of an extension problem.
pub(crate) struct RealizationInput {
    pub problem: RealizationProblem,
    pub k: String,
    pub x: String,
}

pub(crate) fn realization_input(p: &Problem) -> Result<RealizationInput, CliError> {
    let (kname, k) = p.pick(&p.complexes, "k")?;
    let l = p.complex("l")?;
    let (_, phi) = p.pick(&p.morphisms, "phi_l")?;
    let (_, f) = p.pick(&p.maps, "map")?;
    let (_, t) = p.pick(&p.towers, "tower")?;
    Ok(RealizationInput {
        problem: RealizationProblem {
            k: k.clone(),
            l: l.clone(),
            phi_l: phi.morphism.clone(),
            f: f.map.clone(),
            tower: t.tower.clone(),
            ring: p.ring.clone(),
        },
        k: kname.into(),
        x: f.source.clone(),
    })
}

fn run_extend(p: &Problem, opts: &Options, mut out: Out) -> Step {
    let input = tryo!(out, realization_input(p));
    tryo!(out, tower_degree(&input.problem.tower, opts));
    out.line(format!("ring: {}", p.ring));
    out.line(format!("n: {}", input.problem.tower.top_degree()));
    match extend_realization(&input.problem) {
        Ok(cert) => {
            for r in &cert.fill_log {
                out.line(format!("fill {} in {} (level {}, pair {}): {}", r.simplex, r.member, r.level, r.pair, r.solution));
            }
            let doc = extension_doc(&cert, &input.k, &input.x, &p.ring);
            let c = certificate(Kind::ExtendRealization, p, serde_json::to_value(doc).expect("serializable"));
            Ok(out.finish(EXIT_OK, Some(c)))
        }
        Err(e) => construct_failure(out, e),
    }
}

pub(crate) fn lift_input(p: &Problem) -> Result<(LiftProblem, String, String), CliError> {
    let (kname, k) = p.pick(&p.complexes, "k")?;
    let l = p.complex("l")?;
    let (_, phi_l) = p.pick(&p.morphisms, "phi_l")?;
    let (_, phi) = p.pick(&p.morphisms, "phi")?;
    let (_, f) = p.pick(&p.maps, "map")?;
    let (_, t) = p.pick(&p.towers, "tower")?;
    let problem = LiftProblem {
        k: k.clone(),
        l: l.clone(),
        phi_l: phi_l.morphism.clone(),
        phi: phi.morphism.clone(),
        f: f.map.clone(),
        tower: t.tower.clone(),
        ring: p.ring.clone(),
    };
    Ok((problem, kname.into(), f.source.clone()))
}

fn run_lift(p: &Problem, opts: &Options, mut out: Out) -> Step {
    let (problem, k, x) = tryo!(out, lift_input(p));
    tryo!(out, tower_degree(&problem.tower, opts));
    out.line(format!("ring: {}", p.ring));
    match approximate_lift(&problem) {
        Ok(cert) => {
            for (v, x) in &cert.lifted_vertices {
                out.line(format!("lifted vertex {v} -> {x}"));
            }
            for r in &cert.extension.fill_log {
                out.line(format!("fill {} in {}: {}", r.simplex, r.member, r.solution));
            }
            for (s, m) in &cert.closeness.assignment {
                out.line(format!("close at {s} in {m}"));
            }
            let doc = lift_doc(&cert, &k, &x, &p.ring);
            let c = certificate(Kind::Lift, p, serde_json::to_value(doc).expect("serializable"));
            Ok(out.finish(EXIT_OK, Some(c)))
        }
        Err(e) => construct_failure(out, e),
    }
}

pub(crate) fn homotopy_input(p: &Problem) -> Result<(HomotopyProblem, String, String), CliError> {
    let (_, phi) = p.pick(&p.morphisms, "phi")?;
    let (_, psi) = p.pick(&p.morphisms, "psi")?;
    let a = p.complex("a")?;
    let (_, d_a) = p.pick(&p.homotopies, "d_a")?;
    let (_, f) = p.pick(&p.maps, "map")?;
    let (_, t) = p.pick(&p.towers, "tower")?;
    let problem = HomotopyProblem {
        phi: phi.morphism.clone(),
        psi: psi.morphism.clone(),
        a: a.clone(),
        d_a: d_a.homotopy.clone(),
        f: f.map.clone(),
        tower: t.tower.clone(),
        ring: p.ring.clone(),
    };
    Ok((problem, phi.source.clone(), f.source.clone()))
}

fn run_homotopy(p: &Problem, opts: &Options, mut out: Out) -> Step {
    let (problem, k, x) = tryo!(out, homotopy_input(p));
    tryo!(out, tower_degree(&problem.tower, opts));
    out.line(format!("ring: {}", p.ring));
    match build_homotopy(&problem) {
        Ok(cert) => {
            for (s, d) in &cert.d.assignment {
                out.line(format!("D{s} = {d}"));
            }
            let doc = homotopy_doc(&cert, &k, &x, &p.ring);
            let c = certificate(Kind::BuildHomotopy, p, serde_json::to_value(doc).expect("serializable"));
            Ok(out.finish(EXIT_OK, Some(c)))
        }
        Err(e) => construct_failure(out, e),
    }
}

pub(crate) struct DugundjiInput<'a> {
    pub m: &'a chaincert_core::SimplicialComplex,
    pub a: &'a chaincert_core::SimplicialComplex,
    pub phi: &'a chaincert_core::ChainMorphism,
    pub f: &'a SimplicialMap,
    pub tower: &'a FiltrationTower,
    pub x: &'a str,
}

pub(crate) fn dugundji_input(p: &Problem) -> Result<DugundjiInput<'_>, CliError> {
    let m = p.complex("m")?;
    let a = p.complex("a")?;
    let (_, phi) = p.pick(&p.morphisms, "phi")?;
    let (_, f) = p.pick(&p.maps, "map")?;
    let (_, t) = p.pick(&p.towers, "tower")?;
    Ok(DugundjiInput { m, a, phi: &phi.morphism, f: &f.map, tower: &t.tower, x: &f.source })
}

fn run_dugundji(p: &Problem, opts: &Options, mut out: Out) -> Step {
    let input = tryo!(out, dugundji_input(p));
    tryo!(out, tower_degree(input.tower, opts));
    out.line(format!("ring: {}", p.ring));
    match dugundji_extend(input.m, input.a, input.phi, input.f, input.tower, &p.ring) {
        Ok(cert) => {
            out.line(format!("radius: {}", cert.radius));
            for x in &cert.nearest {
                out.line(format!("nearest {} -> {} (distance {})", x.vertex, x.nearest, x.distance));
            }
            let doc = dugundji_doc(&cert, input.x, &p.ring);
            let c = certificate(Kind::DugundjiExtend, p, serde_json::to_value(doc).expect("serializable"));
            Ok(out.finish(EXIT_OK, Some(c)))
        }
        Err(e) => construct_failure(out, e),
    }
}

fn run_nerve(p: &Problem, opts: &Options, mut out: Out) -> Step {
    let (yname, y) = tryo!(out, p.pick(&p.complexes, "y"));
    let (_, cover) = tryo!(out, p.pick(&p.covers, "cover"));
    let (_, t) = tryo!(out, p.pick(&p.towers, "tower"));
    let identity;
    let (f, x) = match p.command_args.get("map") {
        Some(_) => {
            let (_, f) = tryo!(out, p.pick(&p.maps, "map"));
            (&f.map, f.source.as_str())
        }
        None => {
            identity = SimplicialMap::identity(y);
            (&identity, yname)
        }
    };
    tryo!(out, tower_degree(&t.tower, opts));
    out.line(format!("ring: {}", p.ring));
    match nerve_factorization(y, &cover.cover, f, &t.tower, &p.ring) {
        Ok(res) => {
            out.line(format!("nerve: {} simplices", res.k.len()));
            for (v, m) in &res.vertex_assignment {
                out.line(format!("vertex {v} -> {m}"));
            }
            let doc = nerve_doc(&res, yname, x, &p.ring);
            let c = certificate(Kind::NerveFactorize, p, serde_json::to_value(doc).expect("serializable"));
            Ok(out.finish(EXIT_OK, Some(c)))
        }
        Err(e) => construct_failure(out, e),
    }
}

fn render(out: &mut Out, r: &Report) -> i32 {
    for c in &r.checks {
        out.line(format!("check {}: {}", c.name, if c.passed() { "pass" } else { "FAIL" }));
        for f in &c.failures {
            out.line(format!("  {f}"));
        }
    }
    if r.passes() {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

/// Re-verify a certificate document from scratch.
pub fn verify_certificate(text: &str) -> Outcome {
    let out = Out::new("verify-certificate");
    match verify_inner(text, out) {
        Ok(o) => o,
        Err((out, e)) => out.error(&e),
    }
}

fn parse<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T, CliError> {
    Ok(serde_json::from_value(v.clone())?)
}

fn verify_inner(text: &str, mut out: Out) -> Step {
    let file: CertificateFile = tryo!(out, serde_json::from_str(text));
    if file.format != FORMAT {
        let e = CliError::Invalid { field: "format".into(), message: format!("unsupported format `{}`", file.format) };
        return Err((out, e));
    }
    let p = tryo!(out, Problem::from_file(&file.problem));
    let kind = match Kind::from_name(&file.command) {
        Some(k) => k,
        None => {
            let e = CliError::Invalid { field: "command".into(), message: format!("unknown command `{}`", file.command) };
            return Err((out, e));
        }
    };
    out.line(format!("certified command: {}", kind.name()));
    let report = match kind {
        Kind::ExtendRealization => {
            let input = tryo!(out, realization_input(&p));
            let doc: ExtensionDoc = tryo!(out, parse(&file.result));
            let cert = tryo!(out, parse_extension(&doc, &input.problem.k, input.problem.f.source(), &p.ring));
            verify_extension(&input.problem, &cert)
        }
        Kind::Lift => {
            let (problem, _, _) = tryo!(out, lift_input(&p));
            let doc: LiftDoc = tryo!(out, parse(&file.result));
            let cert = tryo!(out, parse_lift(&doc, &problem.k, problem.f.source(), &p.ring));
            verify_lift(&problem, &cert)
        }
        Kind::BuildHomotopy => {
            let (problem, _, _) = tryo!(out, homotopy_input(&p));
            let doc: HomotopyDoc = tryo!(out, parse(&file.result));
            let cert = tryo!(out, parse_homotopy(&doc, &problem.phi.source, problem.f.source(), &p.ring));
            verify_homotopy_certificate(&problem, &cert)
        }
        Kind::DugundjiExtend => {
            let input = tryo!(out, dugundji_input(&p));
            let doc: DugundjiDoc = tryo!(out, parse(&file.result));
            let cert = tryo!(out, parse_dugundji(&doc, input.f.source(), &p.ring));
            verify_dugundji(input.m, input.a, input.phi, input.f, &cert)
        }
        Kind::NerveFactorize => {
            let (_, y) = tryo!(out, p.pick(&p.complexes, "y"));
            let (_, t) = tryo!(out, p.pick(&p.towers, "tower"));
            let identity;
            let f = match p.command_args.get("map") {
                Some(_) => &tryo!(out, p.pick(&p.maps, "map")).1.map,
                None => {
                    identity = SimplicialMap::identity(y);
                    &identity
                }
            };
            let doc: NerveDoc = tryo!(out, parse(&file.result));
            let cert = tryo!(out, parse_nerve(&doc, y, f.source(), &p.ring));
            verify_nerve_factorization(y, f, t.tower.top(), &cert, &p.ring)
        }
        _ => {
            let e = CliError::Invalid { field: "command".into(), message: "this command emits no certificate".into() };
            return Err((out, e));
        }
    };
    let code = render(&mut out, &report);
    Ok(out.finish(code, None))
}
