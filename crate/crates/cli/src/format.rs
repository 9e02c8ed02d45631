//! Problem files: the JSON document and its resolution into core types.
//!
//! Simplices are arrays of vertex names; chains are arrays of
//! `[coefficient, [vertices...]]` with coefficients as decimal strings. A
//! term's vertex order contributes the sign of its sorting permutation.

use std::collections::BTreeMap;

use chaincert_core::complexes::{CoverMember, TowerPair, VertexSet};
use chaincert_core::{
    Chain, ChainHomotopy, ChainMorphism, Cover, FiltrationTower, Ring, Simplex, SimplicialComplex,
    SimplicialMap,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

/// `[coefficient, [vertices...]]` terms.
pub type ChainDoc = Vec<(String, Vec<String>)>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub ring: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complexes: BTreeMap<String, ComplexDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub covers: BTreeMap<String, CoverDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub towers: BTreeMap<String, TowerDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub homotopies: BTreeMap<String, MorphismDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub command_args: BTreeMap<String, Value>,
}

/// Vertices plus generating simplices; faces are implied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    #[serde(default)]
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub source: String,
    pub target: String,
    pub assignment: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberDoc {
    pub name: String,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDoc {
    pub complex: String,
    pub members: Vec<MemberDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub name: String,
    pub inner: Vec<String>,
    /// Member name in the next level.
    pub outer: String,
}

/// A tower: cover names per level, and optionally explicit pairs with a
/// pair name per member. Without pairs, every member gets its star paired
/// with the first member of the next level containing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDoc {
    pub levels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<Vec<PairDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueDoc {
    pub simplex: Vec<String>,
    pub chain: ChainDoc,
}

/// A chain morphism or chain homotopy, one value per source simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub source: String,
    pub target: String,
    pub degree_cap: usize,
    pub values: Vec<ValueDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMap {
    pub source: String,
    pub target: String,
    pub map: SimplicialMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCover {
    pub complex: String,
    pub cover: Cover,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedTower {
    pub levels: Vec<String>,
    pub tower: FiltrationTower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMorphism {
    pub source: String,
    pub target: String,
    pub morphism: ChainMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedHomotopy {
    pub source: String,
    pub target: String,
    pub homotopy: ChainHomotopy,
}

/// A resolved problem file: every name checked, every object validated.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub ring: Ring,
    pub complexes: BTreeMap<String, SimplicialComplex>,
    pub maps: BTreeMap<String, NamedMap>,
    pub covers: BTreeMap<String, NamedCover>,
    pub towers: BTreeMap<String, NamedTower>,
    pub morphisms: BTreeMap<String, NamedMorphism>,
    pub homotopies: BTreeMap<String, NamedHomotopy>,
    pub command_args: BTreeMap<String, Value>,
}

fn invalid(field: impl Into<String>, message: impl ToString) -> CliError {
    CliError::Invalid { field: field.into(), message: message.to_string() }
}

fn lookup<'a, T>(table: &'a BTreeMap<String, T>, kind: &str, name: &str, field: &str) -> Result<&'a T, CliError> {
    table.get(name).ok_or_else(|| invalid(field, format!("unknown {kind} `{name}`")))
}

pub fn parse_chain(doc: &ChainDoc, dim: usize, ring: &Ring, field: &str) -> Result<Chain, CliError> {
    let mut terms = Vec::with_capacity(doc.len());
    for (i, (coef, verts)) in doc.iter().enumerate() {
        let c = ring.parse(coef).map_err(|e| invalid(format!("{field}[{i}]"), e))?;
        terms.push((c, verts.clone()));
    }
    Chain::from_terms(dim, &terms, ring).map_err(|e| invalid(field, e))
}

pub fn chain_doc(c: &Chain, ring: &Ring) -> ChainDoc {
    c.terms().iter().map(|(s, x)| (ring.format(x), s.vertices().to_vec())).collect()
}

pub fn complex_doc(k: &SimplicialComplex) -> ComplexDoc {
    ComplexDoc {
        vertices: k.vertices().to_vec(),
        simplices: k.facets().iter().filter(|s| s.dim() > 0).map(|s| s.vertices().to_vec()).collect(),
    }
}

pub fn parse_complex(doc: &ComplexDoc, field: &str) -> Result<SimplicialComplex, CliError> {
    let mut vertices: VertexSet = doc.vertices.iter().cloned().collect();
    if doc.vertices.is_empty() {
        vertices = doc.simplices.iter().flatten().cloned().collect();
    }
    SimplicialComplex::new(vertices.iter(), &doc.simplices).map_err(|e| invalid(field, e))
}

fn parse_simplex(verts: &[String], field: &str) -> Result<Simplex, CliError> {
    match Simplex::oriented(verts) {
        Some((s, 1)) => Ok(s),
        Some(_) => Err(invalid(field, "simplex keys must list vertices in sorted order")),
        None => Err(invalid(field, "simplex has a repeated vertex")),
    }
}

pub fn morphism_doc(source: &str, target: &str, cap: usize, values: &BTreeMap<Simplex, Chain>, ring: &Ring) -> MorphismDoc {
    MorphismDoc {
        source: source.into(),
        target: target.into(),
        degree_cap: cap,
        values: values
            .iter()
            .map(|(s, c)| ValueDoc { simplex: s.vertices().to_vec(), chain: chain_doc(c, ring) })
            .collect(),
    }
}

/// Values of a morphism (`shift = 0`) or homotopy (`shift = 1`).
pub fn parse_values(
    doc: &MorphismDoc,
    shift: usize,
    source: &SimplicialComplex,
    ring: &Ring,
    field: &str,
) -> Result<BTreeMap<Simplex, Chain>, CliError> {
    let mut out = BTreeMap::new();
    for (i, v) in doc.values.iter().enumerate() {
        let f = format!("{field}.values[{i}]");
        let s = parse_simplex(&v.simplex, &f)?;
        if !source.contains(&s) {
            return Err(invalid(&f, format!("{s} is not a simplex of `{}`", doc.source)));
        }
        let c = parse_chain(&v.chain, s.dim() + shift, ring, &format!("{f}.chain"))?;
        if out.insert(s.clone(), c).is_some() {
            return Err(invalid(&f, format!("{s} is assigned twice")));
        }
    }
    Ok(out)
}

fn sorted(v: &VertexSet) -> Vec<String> {
    v.iter().cloned().collect()
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Problem, CliError> {
        let file: ProblemFile = serde_json::from_str(text)?;
        Problem::from_file(&file)
    }

    pub fn from_file(file: &ProblemFile) -> Result<Problem, CliError> {
        let ring: Ring = file.ring.parse().map_err(|e| invalid("ring", e))?;
        let mut complexes = BTreeMap::new();
        for (name, doc) in &file.complexes {
            complexes.insert(name.clone(), parse_complex(doc, &format!("complexes.{name}"))?);
        }
        let mut maps = BTreeMap::new();
        for (name, doc) in &file.maps {
            let field = format!("maps.{name}");
            let s = lookup(&complexes, "complex", &doc.source, &field)?;
            let t = lookup(&complexes, "complex", &doc.target, &field)?;
            let map = SimplicialMap::new(s.clone(), t.clone(), doc.assignment.clone()).map_err(|e| invalid(&field, e))?;
            maps.insert(name.clone(), NamedMap { source: doc.source.clone(), target: doc.target.clone(), map });
        }
        let mut covers = BTreeMap::new();
        for (name, doc) in &file.covers {
            let field = format!("covers.{name}");
            let k = lookup(&complexes, "complex", &doc.complex, &field)?;
            let members = doc
                .members
                .iter()
                .map(|m| CoverMember { name: m.name.clone(), vertices: m.vertices.iter().cloned().collect() })
                .collect();
            let cover = Cover::new(k, members).map_err(|e| invalid(&field, e))?;
            covers.insert(name.clone(), NamedCover { complex: doc.complex.clone(), cover });
        }
        let mut towers = BTreeMap::new();
        for (name, doc) in &file.towers {
            let field = format!("towers.{name}");
            let mut levels = Vec::new();
            for l in &doc.levels {
                levels.push(lookup(&covers, "cover", l, &field)?.cover.clone());
            }
            let tower = match (&doc.pairs, &doc.witnesses) {
                (None, None) => FiltrationTower::auto(levels).map_err(|e| invalid(&field, e))?,
                (Some(pairs), Some(witnesses)) => {
                    if pairs.len() + 1 != levels.len() || witnesses.len() + 1 != levels.len() {
                        return Err(invalid(&field, "pairs and witnesses need one entry per level but the last"));
                    }
                    let mut all_pairs = Vec::new();
                    let mut all_witnesses = Vec::new();
                    for (k, level_pairs) in pairs.iter().enumerate() {
                        let next = &levels[k + 1];
                        let mut ps = Vec::new();
                        for p in level_pairs {
                            let outer = next
                                .index_of(&p.outer)
                                .ok_or_else(|| invalid(&field, format!("level {}: unknown member `{}`", k + 1, p.outer)))?;
                            ps.push(TowerPair { name: p.name.clone(), inner: p.inner.iter().cloned().collect(), outer });
                        }
                        let mut ws = Vec::new();
                        for w in &witnesses[k] {
                            let i = ps
                                .iter()
                                .position(|p| &p.name == w)
                                .ok_or_else(|| invalid(&field, format!("level {k}: unknown pair `{w}`")))?;
                            ws.push(i);
                        }
                        all_pairs.push(ps);
                        all_witnesses.push(ws);
                    }
                    FiltrationTower::new(levels, all_pairs, all_witnesses).map_err(|e| invalid(&field, e))?
                }
                _ => return Err(invalid(&field, "pairs and witnesses must be given together")),
            };
            towers.insert(name.clone(), NamedTower { levels: doc.levels.clone(), tower });
        }
        let mut morphisms = BTreeMap::new();
        for (name, doc) in &file.morphisms {
            let field = format!("morphisms.{name}");
            let s = lookup(&complexes, "complex", &doc.source, &field)?;
            let t = lookup(&complexes, "complex", &doc.target, &field)?;
            let assignment = parse_values(doc, 0, s, &ring, &field)?;
            let morphism = ChainMorphism {
                source: s.clone(),
                target: t.clone(),
                degree_cap: doc.degree_cap,
                ring: ring.clone(),
                assignment,
            };
            morphisms.insert(name.clone(), NamedMorphism { source: doc.source.clone(), target: doc.target.clone(), morphism });
        }
        let mut homotopies = BTreeMap::new();
        for (name, doc) in &file.homotopies {
            let field = format!("homotopies.{name}");
            let s = lookup(&complexes, "complex", &doc.source, &field)?;
            let t = lookup(&complexes, "complex", &doc.target, &field)?;
            let assignment = parse_values(doc, 1, s, &ring, &field)?;
            let homotopy = ChainHomotopy {
                source: s.clone(),
                target: t.clone(),
                degree_cap: doc.degree_cap,
                ring: ring.clone(),
                assignment,
            };
            homotopies.insert(name.clone(), NamedHomotopy { source: doc.source.clone(), target: doc.target.clone(), homotopy });
        }
        Ok(Problem { ring, complexes, maps, covers, towers, morphisms, homotopies, command_args: file.command_args.clone() })
    }

    /// Canonical document: facets only, sorted members, explicit tower pairs.
    pub fn to_file(&self) -> ProblemFile {
        let ring = &self.ring;
        ProblemFile {
            ring: ring.to_string(),
            complexes: self.complexes.iter().map(|(n, k)| (n.clone(), complex_doc(k))).collect(),
            maps: self
                .maps
                .iter()
                .map(|(n, m)| {
                    let doc = MapDoc { source: m.source.clone(), target: m.target.clone(), assignment: m.map.assignment().clone() };
                    (n.clone(), doc)
                })
                .collect(),
            covers: self
                .covers
                .iter()
                .map(|(n, c)| {
                    let members = c
                        .cover
                        .members()
                        .iter()
                        .map(|m| MemberDoc { name: m.name.clone(), vertices: sorted(&m.vertices) })
                        .collect();
                    (n.clone(), CoverDoc { complex: c.complex.clone(), members })
                })
                .collect(),
            towers: self.towers.iter().map(|(n, t)| (n.clone(), tower_doc(t))).collect(),
            morphisms: self
                .morphisms
                .iter()
                .map(|(n, m)| {
                    let doc = morphism_doc(&m.source, &m.target, m.morphism.degree_cap, &m.morphism.assignment, ring);
                    (n.clone(), doc)
                })
                .collect(),
            homotopies: self
                .homotopies
                .iter()
                .map(|(n, h)| {
                    let doc = morphism_doc(&h.source, &h.target, h.homotopy.degree_cap, &h.homotopy.assignment, ring);
                    (n.clone(), doc)
                })
                .collect(),
            command_args: self.command_args.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        to_pretty(&self.to_file())
    }

    /// Name given in `command_args[key]`, or the only entry of `table`.
    pub fn pick<'a, T>(&self, table: &'a BTreeMap<String, T>, key: &str) -> Result<(&'a str, &'a T), CliError> {
        match self.command_args.get(key) {
            Some(Value::String(name)) => table
                .get_key_value(name)
                .map(|(k, v)| (k.as_str(), v))
                .ok_or_else(|| invalid(format!("command_args.{key}"), format!("unknown name `{name}`"))),
            Some(_) => Err(invalid(format!("command_args.{key}"), "expected a name")),
            None if table.len() == 1 => {
                let (k, v) = table.iter().next().expect("one entry");
                Ok((k.as_str(), v))
            }
            None => Err(invalid(format!("command_args.{key}"), "missing, and the choice is ambiguous")),
        }
    }

    pub fn complex(&self, key: &str) -> Result<&SimplicialComplex, CliError> {
        self.pick(&self.complexes, key).map(|(_, k)| k)
    }

    pub fn usize_arg(&self, key: &str) -> Result<Option<usize>, CliError> {
        match self.command_args.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(|x| Some(x as usize))
                .ok_or_else(|| invalid(format!("command_args.{key}"), "expected a nonnegative integer")),
        }
    }
}

fn tower_doc(t: &NamedTower) -> TowerDoc {
    let tower = &t.tower;
    let mut pairs = Vec::new();
    let mut witnesses = Vec::new();
    for k in 0..tower.levels().len() - 1 {
        let next = tower.level(k + 1);
        pairs.push(
            tower
                .pairs(k)
                .iter()
                .map(|p| PairDoc { name: p.name.clone(), inner: sorted(&p.inner), outer: next.members()[p.outer].name.clone() })
                .collect(),
        );
        witnesses.push(tower.witnesses(k).iter().map(|&i| tower.pairs(k)[i].name.clone()).collect());
    }
    TowerDoc { levels: t.levels.clone(), pairs: Some(pairs), witnesses: Some(witnesses) }
}

/// Two-space indented JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_order_contributes_a_sign() {
        let doc: ChainDoc = vec![("3".into(), vec!["b".into(), "a".into()])];
        let c = parse_chain(&doc, 1, &Ring::Integers, "c").unwrap();
        assert_eq!(chain_doc(&c, &Ring::Integers), vec![("-3".to_string(), vec!["a".to_string(), "b".to_string()])]);
    }

    #[test]
    fn names_default_to_the_only_entry() {
        let p = Problem::from_json(r#"{"ring": "Q", "complexes": {"P": {"simplices": [["a"]]}}}"#).unwrap();
        assert_eq!(p.pick(&p.complexes, "complex").unwrap().0, "P");
        let p = Problem::from_json(
            r#"{"ring": "Q", "complexes": {"P": {"simplices": [["a"]]}, "R": {"simplices": [["b"]]}}}"#,
        )
        .unwrap();
        assert!(p.pick(&p.complexes, "complex").is_err());
    }

    #[test]
    fn unsorted_simplex_keys_are_rejected() {
        let text = r#"{"ring": "Z", "complexes": {"E": {"simplices": [["a", "b"]]}},
            "morphisms": {"m": {"source": "E", "target": "E", "degree_cap": 1,
                "values": [{"simplex": ["b", "a"], "chain": []}]}}}"#;
        assert!(Problem::from_json(text).is_err());
    }
}
