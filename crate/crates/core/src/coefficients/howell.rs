//! Howell normal form over `Z/m`.
//!
//! Plain echelon forms do not decide row-span membership over `Z/m` when `m`
//! is composite. The Howell form adds, for every pivot row with pivot `p`, the
//! row multiplied by `m / p` back into the reduction, so that the span elements
//! vanishing on the first `j` columns are generated by the rows whose pivot
//! lies to the right of `j`. Greedy reduction against the rows then decides
//! membership exactly.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A pivot row of a Howell form: the pivot column and the full row.
#[derive(Clone, Debug)]
pub(crate) struct HowellRow {
    pub pivot: usize,
    pub row: Vec<BigInt>,
}

fn reduce_row(row: &mut [BigInt], m: &BigInt) {
    for x in row.iter_mut() {
        *x = x.mod_floor(m);
    }
}

/// Unit `u` of `Z/m` with `u * a = gcd(a, m)` (mod `m`).
fn normalizing_unit(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.gcd(m);
    let a1 = a / &g;
    let m1 = m / &g;
    let base = if m1.is_one() {
        BigInt::zero()
    } else {
        let e = a1.extended_gcd(&m1);
        e.x.mod_floor(&m1)
    };
    let mut u = base;
    loop {
        if u.gcd(m).is_one() {
            return u;
        }
        u += &m1;
    }
}

/// Howell form of the row span of `rows` (all of length `width`) over `Z/m`.
/// Returns only the nonzero rows, ordered by pivot column.
pub(crate) fn howell_form(rows: Vec<Vec<BigInt>>, width: usize, m: &BigInt) -> Vec<HowellRow> {
    let mut rows: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|mut r| {
            debug_assert_eq!(r.len(), width);
            reduce_row(&mut r, m);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for j in 0..width {
        if r >= rows.len() {
            break;
        }
        for i in r + 1..rows.len() {
            if rows[i][j].is_zero() {
                continue;
            }
            let a = rows[r][j].clone();
            let b = rows[i][j].clone();
            let e = a.extended_gcd(&b);
            let g = e.gcd;
            let (s, t) = (e.x, e.y);
            let u = -(&b / &g);
            let v = &a / &g;
            let top: Vec<BigInt> =
                rows[r].iter().zip(&rows[i]).map(|(x, y)| (&s * x + &t * y).mod_floor(m)).collect();
            let bottom: Vec<BigInt> =
                rows[r].iter().zip(&rows[i]).map(|(x, y)| (&u * x + &v * y).mod_floor(m)).collect();
            rows[r] = top;
            rows[i] = bottom;
        }
        if rows[r][j].is_zero() {
            continue;
        }
        let unit = normalizing_unit(&rows[r][j], m);
        for x in rows[r].iter_mut() {
            *x = (&*x * &unit).mod_floor(m);
        }
        let p = rows[r][j].clone();
        for i in 0..r {
            let q = rows[i][j].div_floor(&p);
            if q.is_zero() {
                continue;
            }
            let pivot_row = rows[r].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                *x = (&*x - &q * y).mod_floor(m);
            }
        }
        let ann = m / &p;
        if !ann.is_one() && &ann != m {
            let extra: Vec<BigInt> = rows[r].iter().map(|x| (x * &ann).mod_floor(m)).collect();
            if extra.iter().any(|x| !x.is_zero()) {
                rows.push(extra);
            }
        }
        pivots.push(j);
        r += 1;
    }
    rows.truncate(r);
    rows.into_iter()
        .zip(pivots)
        .map(|(row, pivot)| HowellRow { pivot, row })
        .collect()
}
