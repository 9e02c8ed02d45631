//! Test-side reference implementations on plain integers: face enumeration,
//! boundary matrices, Smith form over `Z`, rank over `Z/p` and over `Q`.

use std::collections::{BTreeMap, BTreeSet};

pub type Simplex = Vec<String>;

/// All nonempty faces of the given facets, grouped by dimension.
pub fn closure(facets: &[Simplex]) -> Vec<Vec<Simplex>> {
    let mut all: BTreeSet<Simplex> = BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort();
        f.dedup();
        let n = f.len();
        for mask in 1u32..(1 << n) {
            all.insert((0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i].clone()).collect());
        }
    }
    let top = all.iter().map(Vec::len).max().unwrap_or(0);
    let mut by_dim = vec![Vec::new(); top];
    for s in all {
        by_dim[s.len() - 1].push(s);
    }
    by_dim
}

/// Dense matrix of `∂_k: C_k -> C_{k-1}`; `∂_0` is the augmentation, a
/// single row of ones. Empty when `C_k` is empty.
pub fn boundary(cells: &[Vec<Simplex>], k: usize) -> Vec<Vec<i128>> {
    let cols = cells.get(k).cloned().unwrap_or_default();
    if k == 0 {
        return vec![vec![1; cols.len()]];
    }
    let rows = &cells[k - 1];
    let index: BTreeMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = vec![vec![0i128; cols.len()]; rows.len()];
    for (j, s) in cols.iter().enumerate() {
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            m[index[&face]][j] += if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

fn dims(m: &[Vec<i128>]) -> (usize, usize) {
    (m.len(), m.first().map_or(0, Vec::len))
}

/// Smith form of an integer matrix: `u * m * v = diag(d)`, returning the
/// nonzero invariant factors and `u`.
pub fn smith(m: &[Vec<i128>]) -> (Vec<i128>, Vec<Vec<i128>>) {
    let (r, c) = dims(m);
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut u: Vec<Vec<i128>> = (0..r).map(|i| (0..r).map(|j| i128::from(i == j)).collect()).collect();
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = (t..r)
            .flat_map(|i| (t..c).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..r {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in 0..c {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..r {
                        u[i][j] -= q * u[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..c {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // the pivot must divide the rest of the block
                let bad = (t + 1..r).flat_map(|i| (t + 1..c).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in 0..c {
                            a[t][j] += a[i][j];
                        }
                        for j in 0..r {
                            u[t][j] += u[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row and column t into the pivot
            let (mi, mj) = (t..r)
                .map(|i| (i, t))
                .chain((t..c).map(|j| (t, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
                .expect("pivot is nonzero");
            a.swap(t, mi);
            u.swap(t, mi);
            for row in a.iter_mut() {
                row.swap(t, mj);
            }
        }
        if a[t][t] < 0 {
            for j in 0..c {
                a[t][j] = -a[t][j];
            }
            for j in 0..r {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    let d = (0..r.min(c)).map(|i| a[i][i]).take_while(|&x| x != 0).collect();
    (d, u)
}

/// Whether `b` is in the integer column span of `m`.
pub fn in_integer_image(m: &[Vec<i128>], b: &[i128]) -> bool {
    let (d, u) = smith(m);
    let ub: Vec<i128> = u.iter().map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum()).collect();
    ub.iter().enumerate().all(|(i, &x)| if i < d.len() { x % d[i] == 0 } else { x == 0 })
}

fn inv_mod(a: i128, p: i128) -> i128 {
    let mut r = 1;
    let mut b = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Row reduction over the prime field `Z/p`; returns the rank.
pub fn rank_mod(m: &[Vec<i128>], p: i128) -> usize {
    let (r, c) = dims(m);
    let mut a: Vec<Vec<i128>> = m.iter().map(|row| row.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let mut rank = 0;
    for j in 0..c {
        let Some(i) = (rank..r).find(|&i| a[i][j] != 0) else { continue };
        a.swap(rank, i);
        let inv = inv_mod(a[rank][j], p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..r {
            if i != rank && a[i][j] != 0 {
                let f = a[i][j];
                for k in 0..c {
                    a[i][k] = (a[i][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free (Bareiss) elimination; the rank over `Q`.
pub fn rank_q(m: &[Vec<i128>]) -> usize {
    let (r, c) = dims(m);
    let mut a = m.to_vec();
    let mut rank = 0;
    let mut prev = 1i128;
    for j in 0..c {
        let Some(i) = (rank..r).find(|&i| a[i][j] != 0) else { continue };
        a.swap(rank, i);
        for i in rank + 1..r {
            for k in j + 1..c {
                let v = a[rank][j].checked_mul(a[i][k]).and_then(|x| x.checked_sub(a[i][j] * a[rank][k]));
                a[i][k] = v.expect("entries fit") / prev;
            }
            a[i][j] = 0;
        }
        prev = a[rank][j];
        rank += 1;
    }
    rank
}

/// Rank of the integer matrix over `Z`, equal to the rank over `Q`.
pub fn rank_z(m: &[Vec<i128>]) -> usize {
    smith(m).0.len()
}

/// Reduced homology over `Z`: free rank and invariant factors above one.
pub fn homology_z(cells: &[Vec<Simplex>], k: usize) -> (usize, Vec<i128>) {
    let n = cells.get(k).map_or(0, Vec::len);
    let dk = boundary(cells, k);
    let up = boundary(cells, k + 1);
    let (factors, _) = smith(&up);
    let free = n - rank_z(&dk) - factors.len();
    (free, factors.into_iter().filter(|&d| d != 1).collect())
}

/// Dimension of reduced homology over `Z/p`.
pub fn homology_mod(cells: &[Vec<Simplex>], k: usize, p: i128) -> usize {
    let n = cells.get(k).map_or(0, Vec::len);
    n - rank_mod(&boundary(cells, k), p) - rank_mod(&boundary(cells, k + 1), p)
}

/// Dimension of reduced homology over `Q`.
pub fn homology_q(cells: &[Vec<Simplex>], k: usize) -> usize {
    let n = cells.get(k).map_or(0, Vec::len);
    n - rank_q(&boundary(cells, k)) - rank_q(&boundary(cells, k + 1))
}
