//! Solving `A x = b` and computing kernels over each ring kind.
//!
//! * `Z`: through the Smith normal form `U A V = S`.
//! * `Z/m`: through the Howell form of `[A^T | I]`.
//! * `Q`: Gauss-Jordan elimination.
//!
//! Underdetermined systems return the particular solution with every free
//! variable set to zero, so results are reproducible.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::howell::{howell_form, HowellRow};
use super::snf::dense_snf;
use super::{from_big, Ring, RingMatrix, Scalar};
use crate::{Error, Result};

/// Solve `A x = b` over `ring`. `Ok(None)` means no solution exists.
pub fn solve_linear(a: &RingMatrix, b: &[Scalar], ring: &Ring) -> Result<Option<Vec<Scalar>>> {
    LinearSolver::new(a, ring)?.solve(b)
}

/// A factorization of `A` reusable across right-hand sides.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    rows: usize,
    cols: usize,
    ring: Ring,
    kind: SolverKind,
}

#[derive(Clone, Debug)]
enum SolverKind {
    /// `U A V = diag(d)`.
    Smith { diagonal: Vec<BigInt>, u: Vec<Vec<BigInt>>, v: Vec<Vec<BigInt>> },
    /// Howell rows of `[A^T | I]`.
    Howell { modulus: BigInt, rows: Vec<HowellRow> },
    /// `E A` is in reduced row echelon form with the given pivot columns.
    Echelon { e: Vec<Vec<Scalar>>, pivots: Vec<usize> },
}

impl LinearSolver {
    pub fn new(a: &RingMatrix, ring: &Ring) -> Result<Self> {
        let (rows, cols) = (a.rows(), a.cols());
        if let Some((i, j, x)) = a.entries().find(|(_, _, x)| !ring.admits(x)) {
            return Err(Error::NotIntegral(format!("({i}, {j}) = {x}")));
        }
        let kind = match ring {
            Ring::Integers => {
                let snf = dense_snf(a.to_dense_int()?, rows, cols, true);
                SolverKind::Smith { diagonal: snf.diagonal, u: snf.u, v: snf.v }
            }
            Ring::IntegersMod(m) => {
                SolverKind::Howell { modulus: m.clone(), rows: augmented_howell(a, m) }
            }
            Ring::Rationals => {
                let mut aug = a.to_dense();
                for (i, row) in aug.iter_mut().enumerate() {
                    row.extend((0..rows).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }));
                }
                let (red, pivots) = rref_limited(aug, cols);
                let e = red.into_iter().map(|row| row[cols..].to_vec()).collect();
                SolverKind::Echelon { e, pivots }
            }
        };
        Ok(LinearSolver { rows, cols, ring: ring.clone(), kind })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// A solution of `A x = b` with free variables zero, or `None`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} rows, right-hand side has {} entries",
                self.rows,
                b.len()
            )));
        }
        if let Some(bad) = b.iter().find(|x| !self.ring.admits(x)) {
            return Err(Error::NotIntegral(format!("right-hand side entry {bad}")));
        }
        let x = match &self.kind {
            SolverKind::Smith { diagonal, u, v } => solve_smith(diagonal, u, v, b),
            SolverKind::Howell { modulus, rows } => {
                solve_howell(rows, modulus, b, self.rows, self.cols)
            }
            SolverKind::Echelon { e, pivots } => solve_echelon(e, pivots, b, self.cols),
        };
        Ok(x.map(|x| x.into_iter().map(|v| self.ring.reduce(v)).collect()))
    }
}

/// Generators of `{x : A x = 0}`. Over `Z` the result is the Hermite-reduced
/// lattice basis; over `Q` one vector per free column; over `Z/m` the
/// generators read off the Howell form.
pub fn kernel_basis(a: &RingMatrix, ring: &Ring) -> Vec<Vec<Scalar>> {
    match ring {
        Ring::Integers => {
            let dense = a.to_dense_int().expect("integer matrix over Z");
            integer_kernel(&dense, a.rows(), a.cols())
                .into_iter()
                .map(|v| v.into_iter().map(from_big).collect())
                .collect()
        }
        Ring::IntegersMod(m) => kernel_modular(a, m),
        Ring::Rationals => kernel_rationals(a),
    }
}

/// Rank over a field (`Q`), or of the Smith form over `Z`. Over `Z/m` this
/// is the number of Howell pivot rows of the column span.
pub fn rank(a: &RingMatrix, ring: &Ring) -> usize {
    match ring {
        Ring::Rationals => rref(a.to_dense()).1.len(),
        Ring::Integers => {
            dense_snf(a.to_dense_int().expect("integer matrix"), a.rows(), a.cols(), false).rank()
        }
        Ring::IntegersMod(m) => {
            let t = a.transpose().to_dense_int().expect("integer matrix");
            howell_form(t, a.rows(), m).len()
        }
    }
}

fn solve_smith(
    diagonal: &[BigInt],
    u: &[Vec<BigInt>],
    v: &[Vec<BigInt>],
    b: &[Scalar],
) -> Option<Vec<Scalar>> {
    let b: Vec<BigInt> = b.iter().map(|x| x.to_integer()).collect();
    let c: Vec<BigInt> = u
        .iter()
        .map(|row| row.iter().zip(&b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum())
        .collect();
    let r = diagonal.len();
    if c[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![BigInt::zero(); r];
    for i in 0..r {
        let (q, rem) = c[i].div_rem(&diagonal[i]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    let x = v
        .iter()
        .map(|row| from_big(row[..r].iter().zip(&y).filter(|(p, _)| !p.is_zero()).map(|(p, q)| p * q).sum()))
        .collect();
    Some(x)
}

/// Rows of the Howell form of `[A^T | I]`: left parts span the column space of
/// `A`, right parts record the combination producing them.
fn augmented_howell(a: &RingMatrix, m: &BigInt) -> Vec<HowellRow> {
    let (rows, cols) = (a.rows(), a.cols());
    let dense = a.to_dense_int().expect("integer matrix over Z/m");
    let mut aug = Vec::with_capacity(cols);
    for c in 0..cols {
        let mut row: Vec<BigInt> = (0..rows).map(|r| dense[r][c].clone()).collect();
        row.extend((0..cols).map(|k| if k == c { BigInt::one() } else { BigInt::zero() }));
        aug.push(row);
    }
    howell_form(aug, rows + cols, m)
}

fn solve_howell(
    h: &[HowellRow],
    m: &BigInt,
    b: &[Scalar],
    rows: usize,
    cols: usize,
) -> Option<Vec<Scalar>> {
    let mut residual: Vec<BigInt> = b.iter().map(|x| x.to_integer().mod_floor(m)).collect();
    let mut x = vec![BigInt::zero(); cols];
    for hr in h.iter().filter(|hr| hr.pivot < rows) {
        let j = hr.pivot;
        if residual[..j].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let p = &hr.row[j];
        let (q, rem) = residual[j].div_rem(p);
        if !rem.is_zero() {
            return None;
        }
        if q.is_zero() {
            continue;
        }
        for k in j..rows {
            residual[k] = (&residual[k] - &q * &hr.row[k]).mod_floor(m);
        }
        for k in 0..cols {
            x[k] = (&x[k] + &q * &hr.row[rows + k]).mod_floor(m);
        }
    }
    if residual.iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(x.into_iter().map(from_big).collect())
}

fn kernel_modular(a: &RingMatrix, m: &BigInt) -> Vec<Vec<Scalar>> {
    let rows = a.rows();
    augmented_howell(a, m)
        .into_iter()
        .filter(|hr| hr.pivot >= rows)
        .map(|hr| hr.row[rows..].iter().cloned().map(from_big).collect())
        .collect()
}

/// Reduced row echelon form over `Q`; returns the matrix and pivot columns.
fn rref(a: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let cols = a.first().map_or(0, Vec::len);
    rref_limited(a, cols)
}

/// Row reduction choosing pivots only among the first `limit` columns; the
/// remaining columns are carried along.
fn rref_limited(mut a: Vec<Vec<Scalar>>, limit: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for k in c..cols {
                if a[r][k].is_zero() {
                    continue;
                }
                let t = &a[r][k] * &factor;
                a[i][k] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

fn solve_echelon(e: &[Vec<Scalar>], pivots: &[usize], b: &[Scalar], cols: usize) -> Option<Vec<Scalar>> {
    let eb: Vec<Scalar> = e
        .iter()
        .map(|row| {
            row.iter()
                .zip(b)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect();
    if eb[pivots.len()..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = eb[i].clone();
    }
    Some(x)
}

fn kernel_rationals(a: &RingMatrix) -> Vec<Vec<Scalar>> {
    let cols = a.cols();
    let (red, pivots) = rref(a.to_dense());
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -red[i][free].clone();
        }
        out.push(v);
    }
    out
}

/// Integer kernel lattice basis in row Hermite normal form.
pub(crate) fn integer_kernel(a: &[Vec<BigInt>], rows: usize, cols: usize) -> Vec<Vec<BigInt>> {
    let snf = dense_snf(a.to_vec(), rows, cols, true);
    let basis: Vec<Vec<BigInt>> = (snf.rank()..cols)
        .map(|j| (0..cols).map(|i| snf.v[i][j].clone()).collect())
        .collect();
    hermite_rows(basis, cols)
}

/// Row-style Hermite normal form of a set of integer vectors; zero rows dropped.
pub(crate) fn hermite_rows(mut rows: Vec<Vec<BigInt>>, width: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for c in 0..width {
        if r == rows.len() {
            break;
        }
        loop {
            // smallest nonzero modulus at column c among rows r..
            let Some(p) = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()))
            else {
                break;
            };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = rows[i][c].div_floor(&rows[r][c]);
                if q.is_zero() {
                    continue;
                }
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

/// Presentation of the quotient of the module generated by the columns of
/// `gens` by the submodule generated by the columns of `rels`, inside `Z^n`
/// (or `(Z/m)^n` when `modulus` is given). Returns the Smith data of the
/// relation lattice expressed in generator coordinates.
pub(crate) fn relation_lattice_snf(
    gens: &[Vec<BigInt>],
    rels: &[Vec<BigInt>],
    n: usize,
    modulus: Option<&BigInt>,
) -> super::DenseSnf {
    let r = gens.len();
    // columns: gens | rels | m*I
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    columns.extend(gens.iter().cloned());
    columns.extend(rels.iter().map(|c| c.iter().map(|x| -x).collect::<Vec<_>>()));
    if let Some(m) = modulus {
        for i in 0..n {
            let mut col = vec![BigInt::zero(); n];
            col[i] = -m.clone();
            columns.push(col);
        }
    }
    let width = columns.len();
    let dense: Vec<Vec<BigInt>> =
        (0..n).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let kernel = integer_kernel(&dense, n, width);
    // relation matrix: r x (#kernel vectors), projected to generator coordinates
    let relation: Vec<Vec<BigInt>> =
        (0..r).map(|i| kernel.iter().map(|k| k[i].clone()).collect()).collect();
    dense_snf(relation, r, kernel.len(), true)
}
