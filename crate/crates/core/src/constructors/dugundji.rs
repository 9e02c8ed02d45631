//! Extension of a chain morphism from a full subcomplex to a neighborhood of
//! it, sending every new vertex to the image of a nearest vertex of `A`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{extend_realization, ConstructError, ConstructResult, ExtensionCertificate, RealizationProblem};
use crate::chains::ChainMorphism;
use crate::coefficients::Ring;
use crate::complexes::{FiltrationTower, Simplex, SimplicialComplex, SimplicialMap, VertexSet};

/// The vertex of `A` chosen for a vertex `w` of `W` outside `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearestAssignment {
    pub vertex: String,
    pub nearest: String,
    /// Edge-path distance from `vertex` to `A`.
    pub distance: usize,
    /// Whether `ρ(nearest, vertex) < 2 ρ(vertex, A)`.
    pub factor_two: bool,
}

/// Output of [`dugundji_extend`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DugundjiCertificate {
    /// Vertices within `radius` of `A`, as a full subcomplex truncated at `n + 1`.
    pub w: SimplicialComplex,
    pub radius: usize,
    pub nearest: Vec<NearestAssignment>,
    pub extension: ExtensionCertificate,
}

/// Extend `phi: C(A) -> C(X)` over the largest edge-path neighborhood `W` of
/// `A` in `M` on which the tower allows it.
///
/// Radii are tried from the largest down to zero; the first one where the
/// realization extends wins.
pub fn dugundji_extend(
    m: &SimplicialComplex,
    a: &SimplicialComplex,
    phi: &ChainMorphism,
    f: &SimplicialMap,
    tower: &FiltrationTower,
    ring: &Ring,
) -> ConstructResult<DugundjiCertificate> {
    if a.is_empty() {
        return Err(ConstructError::EmptyA);
    }
    let a_set = a.vertex_set();
    if *a != m.full_subcomplex(&a_set) {
        return Err(ConstructError::Precondition("A is not a full subcomplex of M".into()));
    }
    if phi.source != *a || phi.target != *f.source() {
        return Err(ConstructError::Precondition("phi must map C(A) into the source of f".into()));
    }
    let n = tower.top_degree();
    let dist = m.edge_distances(&a_set);
    let mut nearest = Vec::new();
    for (v, &d) in &dist {
        if d == 0 {
            continue;
        }
        let from_v = m.edge_distances(&VertexSet::from([v.clone()]));
        let (choice, rho) = a
            .vertices()
            .iter()
            .filter_map(|x| from_v.get(x).map(|&r| (x.clone(), r)))
            .min_by(|p, q| p.1.cmp(&q.1).then_with(|| p.0.cmp(&q.0)))
            .expect("a reachable vertex of A exists");
        nearest.push(NearestAssignment { vertex: v.clone(), nearest: choice, distance: d, factor_two: rho < 2 * d });
    }
    let max_radius = dist.values().copied().max().unwrap_or(0);
    let mut last_err = None;
    for radius in (0..=max_radius).rev() {
        let w_set: VertexSet = dist.iter().filter(|(_, &d)| d <= radius).map(|(v, _)| v.clone()).collect();
        let w = m.full_subcomplex(&w_set).skeleton(n + 1);
        let chosen: Vec<NearestAssignment> =
            nearest.iter().filter(|x| x.distance <= radius).cloned().collect();
        let a_part = a.skeleton(n + 1);
        let extra: Vec<&str> = chosen.iter().map(|x| x.vertex.as_str()).collect();
        let l = a_part.union(&SimplicialComplex::new(extra, &[] as &[Vec<&str>])?);
        let mut assignment = BTreeMap::new();
        for s in a_part.all_simplices() {
            let Some(c) = phi.value(s) else {
                return Err(ConstructError::Precondition(format!("phi is undefined on {s}")));
            };
            assignment.insert(s.clone(), c.clone());
        }
        for x in &chosen {
            let image = phi.value(&Simplex::vertex(&x.nearest)).expect("phi is defined on vertices of A");
            assignment.insert(Simplex::vertex(&x.vertex), image.clone());
        }
        let phi_l = ChainMorphism {
            source: l.clone(),
            target: f.source().clone(),
            degree_cap: phi.degree_cap.min(n + 1),
            ring: ring.clone(),
            assignment,
        };
        let problem = RealizationProblem { k: w.clone(), l, phi_l, f: f.clone(), tower: tower.clone(), ring: ring.clone() };
        match extend_realization(&problem) {
            Ok(extension) => return Ok(DugundjiCertificate { w, radius, nearest: chosen, extension }),
            Err(e @ (ConstructError::NotFillable(_) | ConstructError::Precondition(_))) if radius > 0 => {
                last_err = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| ConstructError::Precondition("no radius admits an extension".into())))
}
