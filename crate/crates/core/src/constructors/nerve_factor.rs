//! Factorization of the identity of `C(Y)` through the chains of a nerve, up
//! to closeness.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use super::{extend_realization, ConstructError, ConstructResult, ExtensionCertificate, RealizationProblem};
use crate::chains::{is_close, Chain, ChainMorphism, Closeness};
use crate::coefficients::{int, Ring};
use crate::complexes::{nerve, Cover, FiltrationTower, Simplex, SimplicialComplex, SimplicialMap};

/// Output of [`nerve_factorization`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveFactorization {
    /// The `(n + 1)`-skeleton of the nerve; vertices are member names.
    pub k: SimplicialComplex,
    /// The member picked for each vertex of `Y`.
    pub vertex_assignment: BTreeMap<String, String>,
    /// `C(Y) -> C(K)`: vertex assignment followed by [`theta`].
    pub lambda: ChainMorphism,
    /// `Φ: C(K) -> C(X)`, extended from one chosen vertex per member.
    pub phi: ExtensionCertificate,
    /// The identity of `C(Y)` against `f_# ∘ Φ ∘ lambda` on the top cover.
    pub closeness: Closeness,
}

/// The chain of an ordered array of nerve vertices: zero when two entries
/// coincide, otherwise the simplex with the sign of the sorting permutation.
pub fn theta<S: AsRef<str>>(array: &[S], ring: &Ring) -> Chain {
    let dim = array.len().saturating_sub(1);
    match Simplex::oriented(array) {
        Some((s, sign)) => Chain::term(s, ring.reduce(int(sign.into()))),
        None => Chain::zero(dim),
    }
}

/// Build the nerve `K` of `cover`, a realization `Φ: C(K) -> C(X)` through
/// `f: X -> Y`, and the morphism `lambda: C(Y) -> C(K)`, then certify that
/// `f_# ∘ Φ ∘ lambda` is close to the identity of `C(Y)`.
///
/// Each vertex `v` goes to the first member containing its closed star, or
/// failing that the first member containing `v`.
pub fn nerve_factorization(
    y: &SimplicialComplex,
    cover: &Cover,
    f: &SimplicialMap,
    tower: &FiltrationTower,
    ring: &Ring,
) -> ConstructResult<NerveFactorization> {
    if f.target() != y {
        return Err(ConstructError::Precondition("f does not map onto Y".into()));
    }
    if cover.vertices() != &y.vertex_set() {
        return Err(ConstructError::Precondition("the cover is not a cover of Y".into()));
    }
    let n = tower.top_degree();
    let k = nerve(cover, n + 1);
    let mut vertex_assignment = BTreeMap::new();
    for v in y.vertices() {
        let by_star = cover.first_containing(&y.closed_star(v));
        let by_vertex = || cover.members().iter().position(|m| m.vertices.contains(v));
        let Some(i) = by_star.or_else(by_vertex) else {
            return Err(ConstructError::NoCanonicalAssignment(format!("vertex {v} lies in no member")));
        };
        vertex_assignment.insert(v.clone(), cover.members()[i].name.clone());
    }
    let lambda_map = SimplicialMap::new(y.clone(), k.clone(), vertex_assignment.clone())
        .map_err(|e| ConstructError::NotSimplicial(format!("{e}")))?;
    let lambda = ChainMorphism::induced(&lambda_map, n + 1, ring);

    let l = k.skeleton(0);
    let mut assignment = BTreeMap::new();
    for m in cover.members() {
        let least = m.vertices.iter().next().expect("cover members are nonempty");
        let Some(x) = f.fiber(least).into_iter().next() else {
            return Err(ConstructError::Precondition(format!("the fiber over {least} is empty")));
        };
        assignment.insert(Simplex::vertex(&m.name), Chain::simplex(Simplex::vertex(&x)));
    }
    let phi_l = ChainMorphism { source: l.clone(), target: f.source().clone(), degree_cap: 0, ring: ring.clone(), assignment };
    let phi = extend_realization(&RealizationProblem {
        k: k.clone(),
        l,
        phi_l,
        f: f.clone(),
        tower: tower.clone(),
        ring: ring.clone(),
    })?;

    let round_trip = ChainMorphism::induced(f, n + 1, ring).compose(&phi.phi)?.compose(&lambda)?;
    let identity = ChainMorphism::identity(y, n + 1, ring);
    let closeness = is_close(&identity, &round_trip, tower.top())?;
    if let Some(s) = &closeness.failure {
        return Err(ConstructError::CloseFail(format!("identity and the nerve round trip are not close at {s}")));
    }
    Ok(NerveFactorization { k, vertex_assignment, lambda, phi, closeness })
}
