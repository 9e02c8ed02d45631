//! Smith normal form over the integers.
//!
//! The reduction always moves the entry of least absolute value into pivot
//! position, which keeps intermediate coefficients small on the boundary
//! matrices met in practice. Arithmetic is arbitrary precision throughout.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::RingMatrix;
use crate::Result;

/// `U * A * V = S` with `U`, `V` unimodular and `S` diagonal, `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: RingMatrix,
    pub s: RingMatrix,
    pub v: RingMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n)
            .map(|i| self.s.get(i, i).to_integer())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form of an integer matrix. Fails only on non-integral entries.
pub fn smith_normal_form(a: &RingMatrix) -> Result<SmithForm> {
    let (m, n) = (a.rows(), a.cols());
    let snf = dense_snf(a.to_dense_int()?, m, n, true);
    let mut s = RingMatrix::zeros(m, n);
    for (i, d) in snf.diagonal.iter().enumerate() {
        s.set(i, i, super::from_big(d.clone()));
    }
    Ok(SmithForm {
        u: RingMatrix::from_dense_int(m, m, &snf.u),
        s,
        v: RingMatrix::from_dense_int(n, n, &snf.v),
    })
}

/// Dense result used internally: `u * a * v = diag(diagonal)`, `u_inv = u^{-1}`.
pub(crate) struct DenseSnf {
    pub diagonal: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub u_inv: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl DenseSnf {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    out
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    track: bool,
}

impl Work {
    // row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let src = self.a[j].clone();
        for (x, y) in self.a[i].iter_mut().zip(&src) {
            *x += c * y;
        }
        if self.track {
            let src = self.u[j].clone();
            for (x, y) in self.u[i].iter_mut().zip(&src) {
                *x += c * y;
            }
            // column j of U^{-1} -= c * column i
            for row in self.u_inv.iter_mut() {
                let t = c * &row[i];
                row[j] -= t;
            }
        }
    }

    // col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            let t = c * &row[j];
            row[i] += t;
        }
        if self.track {
            for row in self.v.iter_mut() {
                let t = c * &row[j];
                row[i] += t;
            }
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if self.track {
            self.u.swap(i, j);
            for row in self.u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if self.track {
            for row in self.v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if self.track {
            for x in self.u[i].iter_mut() {
                *x = -&*x;
            }
            for row in self.u_inv.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }
}

/// Smith normal form on dense integer data. Transforms are only maintained
/// when `track` is set; otherwise they are returned as empty matrices.
pub(crate) fn dense_snf(a: Vec<Vec<BigInt>>, m: usize, n: usize, track: bool) -> DenseSnf {
    let mut w = Work {
        a,
        u: if track { identity(m) } else { Vec::new() },
        u_inv: if track { identity(m) } else { Vec::new() },
        v: if track { identity(n) } else { Vec::new() },
        track,
    };
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // global minimum-modulus pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if w.a[i][j].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => w.a[i][j].abs() < w.a[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let pivot = w.a[t][t].clone();
            for i in t + 1..m {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&pivot);
                    w.add_row(i, t, &-q);
                }
            }
            for j in t + 1..n {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&pivot);
                    w.add_col(j, t, &-q);
                }
            }
            // smallest leftover in the pivot row or column becomes the new pivot
            let mut smaller: Option<(usize, usize)> = None;
            for i in t + 1..m {
                if !w.a[i][t].is_zero()
                    && smaller.is_none_or(|(si, sj)| w.a[i][t].abs() < w.a[si][sj].abs())
                {
                    smaller = Some((i, t));
                }
            }
            for j in t + 1..n {
                if !w.a[t][j].is_zero()
                    && smaller.is_none_or(|(si, sj)| w.a[t][j].abs() < w.a[si][sj].abs())
                {
                    smaller = Some((t, j));
                }
            }
            if let Some((si, sj)) = smaller {
                w.swap_rows(t, si);
                w.swap_cols(t, sj);
                continue;
            }
            // divisibility of the trailing block by the pivot
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !(&w.a[i][j] % &pivot).is_zero())
            });
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        diagonal.push(w.a[t][t].clone());
        t += 1;
    }
    DenseSnf { diagonal, u: w.u, u_inv: w.u_inv, v: w.v }
}
