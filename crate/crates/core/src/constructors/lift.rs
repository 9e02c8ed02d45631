//! Approximate lifting of a chain morphism through a map.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use super::{extend_realization, ConstructError, ConstructResult, ExtensionCertificate, RealizationProblem};
use crate::chains::{is_close, is_small, Chain, ChainMorphism, Closeness};
use crate::coefficients::Ring;
use crate::complexes::{FiltrationTower, Simplex, SimplicialComplex, SimplicialMap};

/// Data for [`approximate_lift`]: `phi: C(K) -> C(Y)` to be lifted through
/// `f: X -> Y`, already lifted on `L` by `phi_l: C(L) -> C(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftProblem {
    pub k: SimplicialComplex,
    pub l: SimplicialComplex,
    pub phi_l: ChainMorphism,
    pub phi: ChainMorphism,
    pub f: SimplicialMap,
    pub tower: FiltrationTower,
    pub ring: Ring,
}

/// A lift together with its closeness witness against the top level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCertificate {
    pub extension: ExtensionCertificate,
    /// Vertices outside `L` and the fiber vertex chosen for each.
    pub lifted_vertices: BTreeMap<String, String>,
    /// `phi` versus `f_# ∘ phi_K` on the top cover.
    pub closeness: Closeness,
}

/// Lift `phi` to `phi_K: C(K) -> C(X)` extending `phi_l`, with `phi` and
/// `f_# ∘ phi_K` close with respect to the top level of the tower.
///
/// Vertices of `K` missing from `L` are first sent to the least vertex of the
/// fiber over their image.
pub fn approximate_lift(p: &LiftProblem) -> ConstructResult<LiftCertificate> {
    let ring = &p.ring;
    let pre = |m: String| Err(ConstructError::Precondition(m));
    if p.phi.source != p.k || p.phi.target != *p.f.target() {
        return pre("phi must map C(K) into the target of f".into());
    }
    if p.phi_l.source != p.l || p.phi_l.target != *p.f.source() {
        return pre("phi_L must map C(L) into the source of f".into());
    }
    for s in p.l.all_simplices() {
        let (Some(a), Some(b)) = (p.phi.value(s), p.phi_l.value(s)) else {
            return pre(format!("{s} is not assigned by both morphisms"));
        };
        if *a != b.push_forward(&p.f, ring) {
            return pre(format!("phi and f_# phi_L differ on {s}"));
        }
    }
    let small = is_small(&p.phi, p.tower.level(0))?;
    if let Some(s) = small.failure {
        return pre(format!("phi is not small with respect to the first level at {s}"));
    }
    let mut l = p.l.clone();
    let mut phi_l = p.phi_l.clone();
    let mut lifted = BTreeMap::new();
    for v in p.k.vertices() {
        if p.l.has_vertex(v) {
            continue;
        }
        let image = p.phi.value(&Simplex::vertex(v)).expect("phi is defined on vertices");
        let target = match image.terms().iter().next() {
            Some((s, c)) if image.len() == 1 && ring.is_one(c) => s.vertices()[0].clone(),
            _ => return pre(format!("phi is not correct at vertex {v}")),
        };
        let Some(x) = p.f.fiber(&target).into_iter().next() else {
            return pre(format!("the fiber over {target} is empty"));
        };
        phi_l.assignment.insert(Simplex::vertex(v), Chain::simplex(Simplex::vertex(&x)));
        lifted.insert(v.clone(), x);
        l = l.union(&SimplicialComplex::new([v.as_str()], &[] as &[alloc::vec::Vec<&str>])?);
    }
    phi_l.source = l.clone();
    let extension = extend_realization(&RealizationProblem {
        k: p.k.clone(),
        l,
        phi_l,
        f: p.f.clone(),
        tower: p.tower.clone(),
        ring: ring.clone(),
    })?;
    let pushed = ChainMorphism::induced(&p.f, extension.phi.degree_cap, ring).compose(&extension.phi)?;
    let closeness = is_close(&p.phi, &pushed, p.tower.top())?;
    if let Some(s) = &closeness.failure {
        return Err(ConstructError::CloseFail(format!(
            "phi and the pushed-forward lift are not close at {s}"
        )));
    }
    Ok(LiftCertificate { extension, lifted_vertices: lifted, closeness })
}
