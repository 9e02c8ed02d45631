//! Exact arithmetic and linear algebra over the coefficient ring.
//!
//! Three ring kinds are supported: the integers, the integers modulo `m >= 2`,
//! and the rationals. Every element is carried as a [`Scalar`] (an arbitrary
//! precision rational) and kept in canonical form by [`Ring::reduce`]: integers
//! for `Z`, residues in `[0, m)` for `Z/m`, reduced fractions for `Q`.

mod howell;
mod linear;
mod snf;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

use crate::{Error, Result};

pub use linear::{kernel_basis, rank, solve_linear, LinearSolver};
pub(crate) use linear::{hermite_rows, integer_kernel, relation_lattice_snf};
pub use snf::{smith_normal_form, SmithForm};
pub(crate) use snf::DenseSnf;

/// A ring element. For `Z` and `Z/m` the denominator is always one.
pub type Scalar = BigRational;

/// Lift a machine integer into a [`Scalar`].
pub fn int(value: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(value))
}

pub(crate) fn from_big(value: BigInt) -> Scalar {
    BigRational::from_integer(value)
}

/// The coefficient ring `G`: commutative with unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    IntegersMod(BigInt),
    Rationals,
}

impl Ring {
    pub fn integers_mod(modulus: impl Into<BigInt>) -> Result<Ring> {
        let m = modulus.into();
        if m < BigInt::from(2) {
            return Err(Error::InvalidRing(format!("modulus {m} must be at least 2")));
        }
        Ok(Ring::IntegersMod(m))
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match self {
            Ring::IntegersMod(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            Ring::Integers => false,
            Ring::Rationals => true,
            Ring::IntegersMod(m) => is_prime(m),
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    /// Whether `x` names an element of this ring (integers for `Z` and `Z/m`).
    pub fn admits(&self, x: &Scalar) -> bool {
        match self {
            Ring::Rationals => true,
            _ => x.is_integer(),
        }
    }

    /// Canonical representative. Panics if `x` is not admitted; callers only
    /// reduce values produced by ring operations or checked by [`Ring::admits`].
    pub fn reduce(&self, x: Scalar) -> Scalar {
        match self {
            Ring::Rationals => x,
            Ring::Integers => {
                assert!(x.is_integer(), "non-integral value in Z");
                x
            }
            Ring::IntegersMod(m) => {
                assert!(x.is_integer(), "non-integral value in Z/m");
                from_big(x.to_integer().mod_floor(m))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        self.reduce(a.clone()).is_zero()
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        self.reduce(a.clone()).is_one()
    }

    /// Parse a decimal coefficient (`"-3"`, or `"3/2"` over `Q`).
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::BadCoefficient(text.to_string());
        let value = match text.split_once('/') {
            Some((num, den)) => {
                let num = BigInt::from_str_radix(num.trim(), 10).map_err(|_| bad())?;
                let den = BigInt::from_str_radix(den.trim(), 10).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                BigRational::new(num, den)
            }
            None => from_big(BigInt::from_str_radix(text, 10).map_err(|_| bad())?),
        };
        if !self.admits(&value) {
            return Err(Error::BadCoefficient(format!("{text} is not an element of {self}")));
        }
        Ok(self.reduce(value))
    }

    /// Decimal rendering that [`Ring::parse`] reads back.
    pub fn format(&self, a: &Scalar) -> String {
        let a = self.reduce(a.clone());
        if a.is_integer() {
            a.to_integer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("Z"),
            Ring::Rationals => f.write_str("Q"),
            Ring::IntegersMod(m) => write!(f, "Zmod:{m}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        let s = s.trim();
        match s {
            "Z" => return Ok(Ring::Integers),
            "Q" => return Ok(Ring::Rationals),
            _ => {}
        }
        let modulus = s
            .strip_prefix("Zmod:")
            .or_else(|| s.strip_prefix("Z/"))
            .ok_or_else(|| Error::InvalidRing(s.to_string()))?;
        let m = BigInt::from_str_radix(modulus.trim(), 10)
            .map_err(|_| Error::InvalidRing(s.to_string()))?;
        Ring::integers_mod(m)
    }
}

fn is_prime(m: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *m < two {
        return false;
    }
    let mut d = two;
    while &d * &d <= *m {
        if (m % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// Sparse matrix over a coefficient ring. Zero entries are never stored, and
/// entries iterate row-major in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl RingMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RingMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix literal");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, int(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(i, j), x)| (i, j, x))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (&(i, j), x) in &self.entries {
            t.entries.insert((j, i), x.clone());
        }
        t
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (&(i, j), x) in &self.entries {
            out[i][j] = x.clone();
        }
        out
    }

    pub(crate) fn to_dense_int(&self) -> Result<Vec<Vec<BigInt>>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(i, j), x) in &self.entries {
            if !x.is_integer() {
                return Err(Error::NotIntegral(format!("({i}, {j}) = {x}")));
            }
            out[i][j] = x.to_integer();
        }
        Ok(out)
    }

    pub(crate) fn from_dense_int(rows: usize, cols: usize, data: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    m.entries.insert((i, j), from_big(x.clone()));
                }
            }
        }
        m
    }

    /// Matrix product with entries reduced in `ring`.
    pub fn mul(&self, other: &RingMatrix, ring: &Ring) -> Result<RingMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (&(k, j), x) in &other.entries {
            by_row.entry(k).or_default().push((j, x));
        }
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    let e = acc.entry((i, j)).or_insert_with(Scalar::zero);
                    *e = &*e + a * b;
                }
            }
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for ((i, j), x) in acc {
            out.set(i, j, ring.reduce(x));
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Scalar], ring: &Ring) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        let mut out = vec![Scalar::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            out[i] = &out[i] + a * &x[j];
        }
        Ok(out.into_iter().map(|v| ring.reduce(v)).collect())
    }

    /// Determinant of a square integer matrix, by fraction-free elimination.
    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let mut a = self.to_dense();
        let n = self.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let factor = &a[r][c] / &pivot;
                for k in c..n {
                    let v = &a[c][k] * &factor;
                    a[r][k] -= v;
                }
            }
        }
        Ok(det)
    }
}
