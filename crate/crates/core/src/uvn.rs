//! Decision procedures for homological `UV^n(G)` pairs and maps, `lc^n_G`,
//! and the approximate `lc^n_G` property on nested triples.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::chains::Chain;
use crate::coefficients::{int, kernel_basis, Ring, RingMatrix, Scalar};
use crate::complexes::{FiltrationTower, Simplex, SimplicialComplex, SimplicialMap, TowerDefect, VertexSet};
use crate::homology::{boundary_matrix, is_trivial_induced, CycleFiller, Triviality};
use crate::{Error, Result};

/// Outcome of [`check_uvn_pair`]: one triviality record per degree checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub holds: bool,
    pub degrees: Vec<Triviality>,
    /// First degree at which the inclusion is nontrivial.
    pub failed_degree: Option<usize>,
}

/// `H_k(v) -> H_k(u)` is zero for all `k <= n`.
pub fn check_uvn_pair(
    v: &SimplicialComplex,
    u: &SimplicialComplex,
    n: usize,
    ring: &Ring,
) -> Result<PairReport> {
    if !v.is_subcomplex_of(u) {
        return Err(Error::NotSubcomplex("V is not contained in U".into()));
    }
    let mut degrees = Vec::new();
    for k in 0..=n {
        let t = is_trivial_induced(v, u, k, ring)?;
        let ok = t.trivial;
        degrees.push(t);
        if !ok {
            return Ok(PairReport { holds: false, degrees, failed_degree: Some(k) });
        }
    }
    Ok(PairReport { holds: true, degrees, failed_degree: None })
}

/// A single tower obligation checked against a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obligation {
    pub level: usize,
    pub pair: String,
    pub outer: String,
    pub holds: bool,
    pub result: Triviality,
}

/// Outcome of [`check_uvn_map`]; defects and homological failures are kept apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapReport {
    pub obligations: Vec<Obligation>,
    pub defects: Vec<TowerDefect>,
}

impl MapReport {
    pub fn holds(&self) -> bool {
        self.defects.is_empty() && self.obligations.iter().all(|o| o.holds)
    }

    pub fn first_failure(&self) -> Option<&Obligation> {
        self.obligations.iter().find(|o| !o.holds)
    }
}

/// For every level `k <= n` and every pair `(V, U)` of that level, check that
/// `H_k(f^{-1}V) -> H_k(f^{-1}U)` is zero. The tower lives on the target of `f`.
pub fn check_uvn_map(
    f: &SimplicialMap,
    tower: &FiltrationTower,
    n: usize,
    ring: &Ring,
) -> Result<MapReport> {
    if tower.level(0).vertices() != &f.target().vertex_set() {
        return Err(Error::InvalidTower("tower is not on the target of the map".into()));
    }
    if tower.top_degree() < n {
        return Err(Error::InvalidTower(format!(
            "tower has obligations up to degree {}, {} requested",
            tower.top_degree(),
            n
        )));
    }
    if !f.is_surjective() {
        return Err(Error::InvalidMap("the map is not surjective".into()));
    }
    let x = f.source();
    let mut obligations = Vec::new();
    let mut fillers: BTreeMap<(usize, VertexSet), CycleFiller> = BTreeMap::new();
    for k in 0..=n {
        for p in tower.pairs(k) {
            let outer = &tower.level(k + 1).members()[p.outer];
            let v = x.full_subcomplex(&f.preimage_vertices(&p.inner));
            let u_verts = f.preimage_vertices(&outer.vertices);
            let result = if !p.inner.is_subset(&outer.vertices) {
                // reported as a defect; the homological check is skipped
                Triviality { trivial: false, fillings: Vec::new(), witness: None }
            } else {
                let filler = fillers
                    .entry((k, u_verts.clone()))
                    .or_insert_with(|| CycleFiller::new(&x.full_subcomplex(&u_verts), k, ring));
                trivial_with(&v, filler, k, ring)?
            };
            obligations.push(Obligation {
                level: k,
                pair: p.name.clone(),
                outer: outer.name.clone(),
                holds: result.trivial,
                result,
            });
        }
    }
    Ok(MapReport { obligations, defects: tower.defects() })
}

fn trivial_with(v: &SimplicialComplex, filler: &CycleFiller, k: usize, ring: &Ring) -> Result<Triviality> {
    let h = crate::homology::homology(v, k, ring);
    let mut fillings = Vec::new();
    for g in h.generators {
        match filler.fill(&g)? {
            Some(x) => fillings.push((g, x)),
            None => return Ok(Triviality { trivial: false, fillings, witness: Some(g) }),
        }
    }
    Ok(Triviality { trivial: true, fillings, witness: None })
}

/// `check_uvn_map` for the identity of `x`.
pub fn check_lcn(x: &SimplicialComplex, tower: &FiltrationTower, n: usize, ring: &Ring) -> Result<MapReport> {
    check_uvn_map(&SimplicialMap::identity(x), tower, n, ring)
}

/// Witness data for one cycle in [`check_approx_lcn`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxItem {
    pub degree: usize,
    pub cycle: Chain,
    /// The companion cycle in `W`, when found.
    pub companion: Option<Chain>,
    /// A chain in `U` bounding the companion.
    pub filling: Option<Chain>,
}

/// Outcome of [`check_approx_lcn`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxReport {
    pub items: Vec<ApproxItem>,
}

impl ApproxReport {
    pub fn holds(&self) -> bool {
        self.items.iter().all(|i| i.companion.is_some())
    }
}

/// For each `k <= n` and each generator `c` of the cycle module `Z_k(v)`, look
/// for a cycle `c'` in `w` on the vertices of `c` that bounds in `u`.
///
/// `c' = c` is tried first. Otherwise the boundaries `∂y`, `y` a chain of `u`,
/// supported on simplices of `w` spanned by vertices of `c`, are computed as a
/// module and combined greedily to cover as many vertices of `c` as possible.
/// With `strict_vertices` the companion must use exactly the vertices of `c`;
/// otherwise any nonzero companion on a subset of them is accepted.
pub fn check_approx_lcn(
    v: &SimplicialComplex,
    w: &SimplicialComplex,
    u: &SimplicialComplex,
    n: usize,
    ring: &Ring,
    strict_vertices: bool,
) -> Result<ApproxReport> {
    if !v.is_subcomplex_of(w) || !w.is_subcomplex_of(u) {
        return Err(Error::NestingViolated("expected V ⊆ W ⊆ U".into()));
    }
    let mut items = Vec::new();
    for k in 0..=n {
        let basis = v.basis(k);
        if basis.is_empty() {
            continue;
        }
        let filler = CycleFiller::new(u, k, ring);
        let d = boundary_matrix(v, k, ring);
        for z in kernel_basis(&d, ring) {
            let c = Chain::from_vector(k, &basis, &z, ring);
            if c.is_zero() {
                continue;
            }
            if let Some(x) = filler.fill(&c)? {
                items.push(ApproxItem { degree: k, cycle: c.clone(), companion: Some(c), filling: Some(x) });
                continue;
            }
            let companion = search_companion(&c, w, u, ring, strict_vertices)?;
            let filling = match &companion {
                Some(cc) => filler.fill(cc)?,
                None => None,
            };
            items.push(ApproxItem { degree: k, cycle: c, companion, filling });
        }
    }
    Ok(ApproxReport { items })
}

fn search_companion(
    c: &Chain,
    w: &SimplicialComplex,
    u: &SimplicialComplex,
    ring: &Ring,
    strict: bool,
) -> Result<Option<Chain>> {
    let k = c.dim();
    let target = c.carrier_vertices();
    let eligible = |s: &Simplex| w.contains(s) && s.within(&target);
    let rows = u.basis(k);
    let cols = u.basis(k + 1);
    let full = if k == 0 { boundary_matrix(u, 1, ring) } else { boundary_matrix(u, k + 1, ring) };
    // y with ∂y vanishing on ineligible k-simplices
    let outside: Vec<usize> = (0..rows.len()).filter(|&i| !eligible(&rows[i])).collect();
    let mut restricted = RingMatrix::zeros(outside.len(), cols.len());
    for (r, &i) in outside.iter().enumerate() {
        for j in 0..cols.len() {
            let x = full.get(i, j);
            if !x.is_zero() {
                restricted.set(r, j, x);
            }
        }
    }
    let ys = kernel_basis(&restricted, ring);
    let gens: Vec<Chain> = ys
        .iter()
        .map(|y| Chain::from_vector(k + 1, &cols, y, ring).boundary(ring))
        .filter(|g| !g.is_zero())
        .collect();
    let mut cur = Chain::zero(k);
    let multipliers: Vec<Scalar> = (1..=3).map(int).collect();
    for g in &gens {
        let mut best = cur.clone();
        let mut best_count = cur.carrier_vertices().len();
        for t in &multipliers {
            let cand = cur.axpy(t, g, ring);
            let count = cand.carrier_vertices().len();
            if count > best_count {
                best = cand;
                best_count = count;
            }
        }
        cur = best;
    }
    if cur.is_zero() {
        return Ok(None);
    }
    if strict && cur.carrier_vertices() != target {
        return Ok(None);
    }
    // an element of the boundary module is a cycle carried in W
    debug_assert!(cur.is_cycle(ring));
    Ok(Some(cur))
}
