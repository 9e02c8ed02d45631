//! Reduced simplicial homology, induced maps, triviality of inclusions in
//! homology, and cycle filling.
//!
//! In degree 0 the augmentation plays the role of `∂_0`, so `H_0` is reduced
//! and a 0-cycle must have augmentation zero.
//!
//! Over `Z` and `Z/m` a group is presented as `Z_k / (B_k + m Z_k)`: the cycle
//! lattice is taken as generators, boundaries (and multiples of `m`) as
//! relations, and the Smith form of the relation matrix yields cyclic summands
//! with their generating cycles. Over `Z/m` every order divides `m`; summands
//! of order `m` are counted as free.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::chains::{verify_chain_morphism, Chain, ChainMorphism};
use crate::coefficients::{
    from_big, hermite_rows, integer_kernel, kernel_basis, rank, relation_lattice_snf,
    LinearSolver, Ring, RingMatrix, Scalar,
};
use crate::complexes::{Simplex, SimplicialComplex};
use crate::{Error, Result};

/// `∂_k` as a matrix in the canonical bases; for `k = 0` the `1 x n_0`
/// augmentation row.
pub fn boundary_matrix(k: &SimplicialComplex, dim: usize, ring: &Ring) -> RingMatrix {
    let cols = k.basis(dim);
    if dim == 0 {
        let mut m = RingMatrix::zeros(1, cols.len());
        for j in 0..cols.len() {
            m.set(0, j, ring.one());
        }
        return m;
    }
    let rows = index(&k.basis(dim - 1));
    let mut m = RingMatrix::zeros(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for (i, f) in s.boundary_faces().into_iter().enumerate() {
            let sign = if i % 2 == 0 { ring.one() } else { ring.neg(&ring.one()) };
            m.set(rows[&f], j, sign);
        }
    }
    m
}

fn index(basis: &[Simplex]) -> BTreeMap<Simplex, usize> {
    basis.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()
}

/// A homology group with representative cycles for its cyclic summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub ring: Ring,
    pub dim: usize,
    /// Summands isomorphic to the ring itself.
    pub free_rank: usize,
    /// Orders `d` of the remaining summands `ring / d`, each dividing the next.
    pub torsion: Vec<BigInt>,
    /// One cycle per summand: torsion summands first, then free ones.
    pub generators: Vec<Chain>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the summand generated by `generators[i]`; zero means infinite
    /// (free over `Z` or `Q`).
    pub fn order(&self, i: usize) -> BigInt {
        if i < self.torsion.len() {
            return self.torsion[i].clone();
        }
        self.ring.modulus().cloned().unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let base = match &self.ring {
            Ring::Integers => "Z".to_string(),
            Ring::Rationals => "Q".to_string(),
            Ring::IntegersMod(m) => format!("Z/{m}"),
        };
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("{base}^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

fn column(m: &[Vec<BigInt>], j: usize) -> Vec<BigInt> {
    m.iter().map(|row| row[j].clone()).collect()
}

/// Reduced homology `H_dim(k; ring)`.
pub fn homology(k: &SimplicialComplex, dim: usize, ring: &Ring) -> HomologyGroup {
    let basis = k.basis(dim);
    let n = basis.len();
    let d = boundary_matrix(k, dim, ring);
    let up = boundary_matrix(k, dim + 1, ring);
    if let Ring::Rationals = ring {
        return rational_homology(k, dim, &basis, &d, &up);
    }
    let modulus = ring.modulus();
    let d_int = d.to_dense_int().expect("boundary matrices are integral");
    let cycles: Vec<Vec<BigInt>> = match modulus {
        None => integer_kernel(&d_int, d.rows(), n),
        Some(m) => {
            // {x : ∂x ≡ 0 mod m}: project the kernel of [∂ | -m I]
            let rows = d.rows();
            let wide: Vec<Vec<BigInt>> = d_int
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let mut r = row.clone();
                    r.extend((0..rows).map(|j| if i == j { -m.clone() } else { BigInt::zero() }));
                    r
                })
                .collect();
            let kernel = integer_kernel(&wide, rows, n + rows);
            hermite_rows(kernel.into_iter().map(|v| v[..n].to_vec()).collect(), n)
        }
    };
    let up_int = up.to_dense_int().expect("boundary matrices are integral");
    let boundaries: Vec<Vec<BigInt>> = (0..up.cols()).map(|j| column(&up_int, j)).collect();
    let snf = relation_lattice_snf(&cycles, &boundaries, n, modulus);
    let r = cycles.len();
    let mut torsion = Vec::new();
    let mut torsion_gens = Vec::new();
    let mut free_gens = Vec::new();
    for j in 0..r {
        let order = snf.diagonal.get(j).cloned().unwrap_or_else(BigInt::zero);
        if order.is_one() {
            continue;
        }
        let mut v = vec![BigInt::zero(); n];
        for (i, z) in cycles.iter().enumerate() {
            let c = &snf.u_inv[i][j];
            if c.is_zero() {
                continue;
            }
            for (t, x) in v.iter_mut().zip(z) {
                *t += c * x;
            }
        }
        let coords: Vec<Scalar> = v.into_iter().map(from_big).collect();
        let chain = Chain::from_vector(dim, &basis, &coords, ring);
        let is_free = order.is_zero() || modulus == Some(&order);
        if is_free {
            free_gens.push(chain);
        } else {
            torsion.push(order);
            torsion_gens.push(chain);
        }
    }
    let free_rank = free_gens.len();
    torsion_gens.extend(free_gens);
    HomologyGroup { ring: ring.clone(), dim, free_rank, torsion, generators: torsion_gens }
}

fn rational_homology(
    _k: &SimplicialComplex,
    dim: usize,
    basis: &[Simplex],
    d: &RingMatrix,
    up: &RingMatrix,
) -> HomologyGroup {
    let ring = Ring::Rationals;
    let cycles = kernel_basis(d, &ring);
    let n = basis.len();
    let mut span: Vec<Vec<Scalar>> = (0..up.cols())
        .map(|j| (0..n).map(|i| up.get(i, j)).collect())
        .collect();
    let mut current = rank_of_columns(&span, n);
    let mut gens = Vec::new();
    for z in cycles {
        span.push(z.clone());
        let r = rank_of_columns(&span, n);
        if r > current {
            current = r;
            gens.push(Chain::from_vector(dim, basis, &z, &ring));
        } else {
            span.pop();
        }
    }
    HomologyGroup { ring, dim, free_rank: gens.len(), torsion: Vec::new(), generators: gens }
}

fn rank_of_columns(cols: &[Vec<Scalar>], n: usize) -> usize {
    let mut m = RingMatrix::zeros(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    rank(&m, &Ring::Rationals)
}

/// A prepared solver for `∂_{dim+1} x = c` inside a fixed complex.
#[derive(Clone, Debug)]
pub struct CycleFiller {
    complex: SimplicialComplex,
    dim: usize,
    ring: Ring,
    rows: BTreeMap<Simplex, usize>,
    cols: Vec<Simplex>,
    solver: LinearSolver,
}

impl CycleFiller {
    pub fn new(complex: &SimplicialComplex, dim: usize, ring: &Ring) -> Self {
        let rows = index(&complex.basis(dim));
        let cols = complex.basis(dim + 1);
        let m = if dim == 0 {
            boundary_matrix(complex, 1, ring)
        } else {
            boundary_matrix(complex, dim + 1, ring)
        };
        let solver = LinearSolver::new(&m, ring).expect("boundary matrices are integral");
        CycleFiller { complex: complex.clone(), dim, ring: ring.clone(), rows, cols, solver }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// `x` with `∂x = c` carried in the complex, or `None` if `c` does not bound.
    pub fn fill(&self, c: &Chain) -> Result<Option<Chain>> {
        if c.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "{}-chain given to a filler for degree {}",
                c.dim(),
                self.dim
            )));
        }
        if let Some(s) = c.terms().keys().find(|s| !self.complex.contains(s)) {
            return Err(Error::CarrierOutside(format!("{s} is not in the filling complex")));
        }
        if !c.is_cycle(&self.ring) {
            return Err(Error::NotACycle(c.to_string()));
        }
        if c.is_zero() {
            return Ok(Some(Chain::zero(self.dim + 1)));
        }
        let b = c.to_vector(&self.rows, self.rows.len())?;
        Ok(self
            .solver
            .solve(&b)?
            .map(|x| Chain::from_vector(self.dim + 1, &self.cols, &x, &self.ring)))
    }
}

/// A chain `x` carried in `u` with `∂x = c`, or `None` if `c` does not bound
/// in `u`. `c` must be a cycle (augmentation zero in degree 0) carried in `u`.
pub fn fill_cycle(c: &Chain, u: &SimplicialComplex, ring: &Ring) -> Result<Option<Chain>> {
    CycleFiller::new(u, c.dim(), ring).fill(c)
}

/// Matrix of the map induced on homology, in the chosen generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub source: HomologyGroup,
    pub target: HomologyGroup,
    /// `target.generators.len() x source.generators.len()`.
    pub matrix: RingMatrix,
}

impl InducedMap {
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// The homomorphism `H_dim(source) -> H_dim(target)` induced by `phi`.
///
/// Each generator image is expressed in the target generators modulo
/// boundaries; the same is done for a representative shifted by a boundary,
/// and a disagreement is reported as [`Error::RepresentativeDependence`].
pub fn induced_map(phi: &ChainMorphism, dim: usize) -> Result<InducedMap> {
    let ring = &phi.ring;
    if phi.degree_cap < dim {
        return Err(Error::NotAChainMorphism(format!(
            "morphism is only defined up to degree {}",
            phi.degree_cap
        )));
    }
    let report = verify_chain_morphism(phi);
    if let Some(v) = report.violations.first() {
        return Err(Error::NotAChainMorphism(format!("{}: {}", v.simplex, v.reason)));
    }
    let hs = homology(&phi.source, dim, ring);
    let ht = homology(&phi.target, dim, ring);
    let tb = phi.target.basis(dim);
    let ti = index(&tb);
    let up = boundary_matrix(&phi.target, dim + 1, ring);
    let g = ht.generators.len();
    let mut m = RingMatrix::zeros(tb.len(), g + up.cols());
    for (j, gen) in ht.generators.iter().enumerate() {
        for (i, x) in gen.to_vector(&ti, tb.len())?.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    for (i, j, x) in up.entries() {
        m.set(i, g + j, x.clone());
    }
    let solver = LinearSolver::new(&m, ring)?;
    let coords = |c: &Chain| -> Result<Vec<Scalar>> {
        let b = c.to_vector(&ti, tb.len())?;
        let x = solver.solve(&b)?.ok_or_else(|| {
            Error::RepresentativeDependence(format!("image {c} is not a combination of generators"))
        })?;
        Ok((0..g).map(|j| reduce_mod_order(&x[j], &ht.order(j), ring)).collect())
    };
    let shift = if phi.degree_cap > dim {
        phi.source.simplices(dim + 1).next().cloned()
    } else {
        None
    };
    let mut out = RingMatrix::zeros(g, hs.generators.len());
    for (j, gen) in hs.generators.iter().enumerate() {
        let col = coords(&phi.apply(gen)?)?;
        if let Some(t) = &shift {
            let moved = if dim == 0 {
                gen.clone()
            } else {
                gen.add(&Chain::simplex(t.clone()).boundary(ring), ring)
            };
            if coords(&phi.apply(&moved)?)? != col {
                return Err(Error::RepresentativeDependence(format!(
                    "generator {gen} and its shift by the boundary of {t} disagree"
                )));
            }
        }
        for (i, x) in col.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    Ok(InducedMap { source: hs, target: ht, matrix: out })
}

fn reduce_mod_order(x: &Scalar, order: &BigInt, ring: &Ring) -> Scalar {
    let x = ring.reduce(x.clone());
    if order.is_zero() {
        x
    } else {
        from_big(x.to_integer().mod_floor(order))
    }
}

/// Outcome of [`is_trivial_induced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triviality {
    pub trivial: bool,
    /// `(generator, filling)` for every generator filled before any failure.
    pub fillings: Vec<(Chain, Chain)>,
    /// A generator cycle of `V` that does not bound in `U`.
    pub witness: Option<Chain>,
}

/// Whether `H_dim(v) -> H_dim(u)` is zero; every generator of `H_dim(v)` is
/// filled in `u`, or the first one that cannot be is returned as witness.
pub fn is_trivial_induced(
    v: &SimplicialComplex,
    u: &SimplicialComplex,
    dim: usize,
    ring: &Ring,
) -> Result<Triviality> {
    if !v.is_subcomplex_of(u) {
        return Err(Error::NotSubcomplex("V is not contained in U".into()));
    }
    let h = homology(v, dim, ring);
    let filler = CycleFiller::new(u, dim, ring);
    let mut fillings = Vec::new();
    for g in h.generators {
        match filler.fill(&g)? {
            Some(x) => fillings.push((g, x)),
            None => return Ok(Triviality { trivial: false, fillings, witness: Some(g) }),
        }
    }
    Ok(Triviality { trivial: true, fillings, witness: None })
}

/// Euler characteristic from simplex counts.
pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    (0..=k.dim().unwrap_or(0))
        .map(|d| if d % 2 == 0 { k.count(d) as i64 } else { -(k.count(d) as i64) })
        .sum()
}
