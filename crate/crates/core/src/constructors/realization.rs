//! Extending a partial algebraic realization to a full one.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{ConstructError, ConstructResult, FillRecord, Ladder, LevelMember};
use crate::chains::{is_correct, verify_chain_morphism, Chain, ChainMorphism};
use crate::coefficients::Ring;
use crate::complexes::{FiltrationTower, Simplex, SimplicialComplex, SimplicialMap, VertexSet};

/// Data for [`extend_realization`]. `phi_l` maps `C(l)` into the chains of
/// the source of `f`; the tower lives on the target of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationProblem {
    pub k: SimplicialComplex,
    pub l: SimplicialComplex,
    pub phi_l: ChainMorphism,
    pub f: SimplicialMap,
    pub tower: FiltrationTower,
    pub ring: Ring,
}

/// A full realization with the data witnessing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCertificate {
    /// Defined on all of `C(K)` up to degree `n + 1`.
    pub phi: ChainMorphism,
    /// For each `k`-simplex, a member of `T_k` whose preimage carries the
    /// images of all its faces.
    pub cover_assignment: BTreeMap<Simplex, LevelMember>,
    /// One entry per simplex outside `L`, in construction order.
    pub fill_log: Vec<FillRecord>,
}

fn precondition<T>(msg: impl Into<alloc::string::String>) -> ConstructResult<T> {
    Err(ConstructError::Precondition(msg.into()))
}

/// Union of the carriers of `phi` on the faces of `s` where it is defined.
pub(crate) fn known_carrier(assignment: &BTreeMap<Simplex, Chain>, s: &Simplex) -> VertexSet {
    let mut out = VertexSet::new();
    for face in s.all_faces() {
        if let Some(c) = assignment.get(&face) {
            out.extend(c.carrier_vertices());
        }
    }
    out
}

/// Extend `phi_l` over every simplex of `K`, dimension by dimension.
///
/// Homological obligations of the tower are not checked up front; a cycle
/// that fails to bound where the tower promises it does is reported as
/// [`ConstructError::NotFillable`] with the cycle and the subcomplex.
pub fn extend_realization(p: &RealizationProblem) -> ConstructResult<ExtensionCertificate> {
    let ring = &p.ring;
    let n = p.tower.top_degree();
    if p.phi_l.ring != *ring {
        return precondition("the partial realization uses a different ring");
    }
    if !p.l.is_subcomplex_of(&p.k) {
        return precondition("L is not a subcomplex of K");
    }
    if let Some(v) = p.k.vertices().iter().find(|v| !p.l.has_vertex(v)) {
        return precondition(format!("vertex {v} of K is missing from L"));
    }
    if p.k.dim().unwrap_or(0) > n + 1 {
        return precondition(format!(
            "K has dimension {}, the tower allows at most {}",
            p.k.dim().unwrap_or(0),
            n + 1
        ));
    }
    if p.phi_l.source != p.l || p.phi_l.target != *p.f.source() {
        return precondition("the partial realization must map C(L) into the source of f");
    }
    if let Some(s) = p.l.all_simplices().find(|s| p.phi_l.value(s).is_none()) {
        return precondition(format!("the partial realization is undefined on {s}"));
    }
    let law = verify_chain_morphism(&p.phi_l);
    if let Some(v) = law.violations.first() {
        return precondition(format!("partial realization at {}: {}", v.simplex, v.reason));
    }
    if !is_correct(&p.phi_l) {
        return precondition("the partial realization is not correct on vertices");
    }
    let mut ladder = Ladder::new(&p.f, &p.tower, ring)?;
    let mut assignment: BTreeMap<Simplex, Chain> = p.phi_l.assignment.clone();
    let mut base: BTreeMap<Simplex, usize> = BTreeMap::new();
    for s in p.k.all_simplices() {
        let carrier = known_carrier(&p.phi_l.assignment, s);
        match ladder.base_member(&carrier) {
            Some(w) => {
                base.insert(s.clone(), w);
            }
            None => {
                return precondition(format!(
                    "no member of the first level contains the image of the partial realization on the faces of {s}"
                ))
            }
        }
    }
    let mut cover_assignment = BTreeMap::new();
    for s in p.l.all_simplices() {
        let k = s.dim();
        let path = ladder.tower().chase(base[s], k);
        cover_assignment.insert(s.clone(), LevelMember { level: k, member: ladder.member_name(k, path[k]) });
    }
    let mut fill_log = Vec::new();
    for d in 1..=p.k.dim().unwrap_or(0) {
        for s in p.k.simplices(d) {
            if p.l.contains(s) {
                continue;
            }
            let k = d - 1;
            let mut cycle = Chain::zero(k);
            for (i, face) in s.boundary_faces().into_iter().enumerate() {
                let value = &assignment[&face];
                cycle = if i % 2 == 0 { cycle.add(value, ring) } else { cycle.sub(value, ring) };
            }
            let pair = ladder.locate(base[s], k);
            let record = ladder.fill(s, &cycle, k, pair)?;
            cover_assignment.insert(s.clone(), LevelMember { level: d, member: record.member.clone() });
            assignment.insert(s.clone(), record.solution.clone());
            fill_log.push(record);
        }
    }
    let phi = ChainMorphism {
        source: p.k.clone(),
        target: p.f.source().clone(),
        degree_cap: n + 1,
        ring: ring.clone(),
        assignment,
    };
    Ok(ExtensionCertificate { phi, cover_assignment, fill_log })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::string::ToString;

    fn vertex_realization(k: &SimplicialComplex, x: &SimplicialComplex, ring: &Ring) -> (SimplicialComplex, ChainMorphism) {
        let l = k.skeleton(0);
        let assignment = l
            .simplices(0)
            .map(|s| (s.clone(), Chain::simplex(s.clone())))
            .collect();
        let phi = ChainMorphism { source: l.clone(), target: x.clone(), degree_cap: 0, ring: ring.clone(), assignment };
        (l, phi)
    }

    #[test]
    fn edge_in_a_triangle() {
        let r = Ring::Integers;
        let y = SimplicialComplex::full_simplex(&["a", "b", "c"]).unwrap();
        let k = SimplicialComplex::full_simplex(&["a", "b"]).unwrap();
        let (l, phi_l) = vertex_realization(&k, &y, &r);
        let p = RealizationProblem {
            k,
            l,
            phi_l,
            f: SimplicialMap::identity(&y),
            tower: FiltrationTower::trivial(&y, 1).unwrap(),
            ring: r.clone(),
        };
        let cert = extend_realization(&p).unwrap();
        let e = Simplex::new(&["a", "b"]).unwrap();
        assert_eq!(cert.phi.value(&e).unwrap().boundary(&r), Chain::simplex(Simplex::vertex("b")).sub(&Chain::simplex(Simplex::vertex("a")), &r));
        assert!(verify_chain_morphism(&cert.phi).passes());
    }

    #[test]
    fn hollow_target_obstructs() {
        let r = Ring::Integers;
        let y = SimplicialComplex::from_simplices(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap();
        let k = SimplicialComplex::full_simplex(&["a", "b", "c"]).unwrap();
        let l = y.clone();
        let phi_l = ChainMorphism::identity(&y, 1, &r);
        let p = RealizationProblem {
            k,
            l,
            phi_l,
            f: SimplicialMap::identity(&y),
            tower: FiltrationTower::trivial(&y, 1).unwrap(),
            ring: r,
        };
        match extend_realization(&p) {
            Err(ConstructError::NotFillable(o)) => {
                assert_eq!(o.simplex.to_string(), "[a,b,c]");
                assert_eq!(o.level, 1);
            }
            other => panic!("expected an obstruction, got {other:?}"),
        }
    }
}
