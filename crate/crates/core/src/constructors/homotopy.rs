//! Small chain homotopies between close chain morphisms, relative to a
//! subcomplex where the homotopy is already given.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{ConstructError, ConstructResult, FillRecord, Ladder, LevelMember};
use crate::chains::{is_correct, verify_chain_morphism, verify_homotopy, Chain, ChainHomotopy, ChainMorphism};
use crate::coefficients::Ring;
use crate::complexes::{FiltrationTower, Simplex, SimplicialComplex, SimplicialMap, VertexSet};

/// Data for [`build_homotopy`]: `phi, psi: C(K) -> C(X)` with `X` the source
/// of `f`, and `d_a` a homotopy between their restrictions to `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyProblem {
    pub phi: ChainMorphism,
    pub psi: ChainMorphism,
    pub a: SimplicialComplex,
    pub d_a: ChainHomotopy,
    pub f: SimplicialMap,
    pub tower: FiltrationTower,
    pub ring: Ring,
}

/// The homotopy with its per-simplex cover witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyCertificate {
    /// Defined on every simplex of dimension at most `n`.
    pub d: ChainHomotopy,
    /// For each `k`-simplex, a member of `T_{k+1}` whose preimage carries
    /// `D`, `phi` and `psi` on all its faces.
    pub cover_assignment: BTreeMap<Simplex, LevelMember>,
    pub fill_log: Vec<FillRecord>,
}

fn precondition<T>(msg: impl Into<String>) -> ConstructResult<T> {
    Err(ConstructError::Precondition(msg.into()))
}

fn check_morphism(name: &str, m: &ChainMorphism, p: &HomotopyProblem, n: usize) -> ConstructResult<()> {
    if m.ring != p.ring {
        return precondition(format!("{name} uses a different ring"));
    }
    if m.target != *p.f.source() {
        return precondition(format!("{name} does not map into the source of f"));
    }
    if m.degree_cap < n.min(m.source.dim().unwrap_or(0)) {
        return precondition(format!("{name} is only defined up to degree {}", m.degree_cap));
    }
    if let Some(v) = verify_chain_morphism(m).violations.first() {
        return precondition(format!("{name} at {}: {}", v.simplex, v.reason));
    }
    if !is_correct(m) {
        return precondition(format!("{name} is not correct on vertices"));
    }
    Ok(())
}

/// Build `D` with `∂D + D∂ = phi - psi` in degrees `0..=n`, extending `d_a`.
///
/// Generators outside `A` are handled by increasing dimension: the cycle
/// `phi(σ) - psi(σ) - D(∂σ)` is filled through the tower pair located from
/// the first `T_0` member containing everything known about the faces of `σ`.
pub fn build_homotopy(p: &HomotopyProblem) -> ConstructResult<HomotopyCertificate> {
    let ring = &p.ring;
    let n = p.tower.top_degree();
    let k_complex = &p.phi.source;
    if p.psi.source != *k_complex {
        return precondition("phi and psi have different sources");
    }
    check_morphism("phi", &p.phi, p, n)?;
    check_morphism("psi", &p.psi, p, n)?;
    if !p.a.is_subcomplex_of(k_complex) {
        return precondition("A is not a subcomplex of the source");
    }
    if p.d_a.source != p.a || p.d_a.target != *p.f.source() || p.d_a.ring != *ring {
        return precondition("the given homotopy is not from C(A) into the source of f");
    }
    if let Some(s) = p.a.all_simplices().find(|s| s.dim() <= n && !p.d_a.assignment.contains_key(s)) {
        return precondition(format!("the given homotopy is undefined on {s}"));
    }
    if !p.a.is_empty() {
        let phi_a = p.phi.restrict(&p.a)?;
        let psi_a = p.psi.restrict(&p.a)?;
        let mut d_a = p.d_a.clone();
        d_a.degree_cap = d_a.degree_cap.min(n);
        d_a.assignment.retain(|s, _| s.dim() <= n);
        if let Some(v) = verify_homotopy(&d_a, &phi_a, &psi_a, None).violations.first() {
            return precondition(format!("the given homotopy fails at {}: {}", v.simplex, v.reason));
        }
    }
    let mut ladder = Ladder::new(&p.f, &p.tower, ring)?;
    let mut base: BTreeMap<Simplex, usize> = BTreeMap::new();
    for s in k_complex.all_simplices().filter(|s| s.dim() <= n) {
        let mut carrier: VertexSet = p.phi.face_carrier(s);
        carrier.extend(p.psi.face_carrier(s));
        for face in s.all_faces() {
            if let Some(c) = p.a.contains(&face).then(|| p.d_a.assignment.get(&face)).flatten() {
                carrier.extend(c.carrier_vertices());
            }
        }
        match ladder.base_member(&carrier) {
            Some(w) => {
                base.insert(s.clone(), w);
            }
            None => {
                return precondition(format!(
                    "no member of the first level contains the images of the faces of {s}"
                ))
            }
        }
    }
    let mut assignment: BTreeMap<Simplex, Chain> = BTreeMap::new();
    let mut cover_assignment = BTreeMap::new();
    let mut fill_log = Vec::new();
    for k in 0..=n.min(k_complex.dim().unwrap_or(0)) {
        for s in k_complex.simplices(k) {
            if p.a.contains(s) {
                assignment.insert(s.clone(), p.d_a.assignment[s].clone());
                let path = ladder.tower().chase(base[s], k + 1);
                cover_assignment
                    .insert(s.clone(), LevelMember { level: k + 1, member: ladder.member_name(k + 1, path[k + 1]) });
                continue;
            }
            let mut cycle = p.phi.assignment[s].sub(&p.psi.assignment[s], ring);
            for (i, face) in s.boundary_faces().into_iter().enumerate() {
                let value = &assignment[&face];
                cycle = if i % 2 == 0 { cycle.sub(value, ring) } else { cycle.add(value, ring) };
            }
            let pair = ladder.locate(base[s], k);
            let record = ladder.fill(s, &cycle, k, pair)?;
            cover_assignment.insert(s.clone(), LevelMember { level: k + 1, member: record.member.clone() });
            assignment.insert(s.clone(), record.solution.clone());
            fill_log.push(record);
        }
    }
    let d = ChainHomotopy {
        source: k_complex.clone(),
        target: p.f.source().clone(),
        degree_cap: n,
        ring: ring.clone(),
        assignment,
    };
    Ok(HomotopyCertificate { d, cover_assignment, fill_log })
}
