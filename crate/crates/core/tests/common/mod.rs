#![allow(dead_code)]

use chaincert_core::coefficients::int;
use chaincert_core::{Chain, Ring, Scalar, Simplex, SimplicialComplex};
use proptest::prelude::*;

pub const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

/// Complexes on at most `max_vertices` vertices, generated by facets of
/// dimension at most `max_dim`.
pub fn complex(max_vertices: usize, max_dim: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_vertices).prop_flat_map(move |nv| {
        let facet = proptest::sample::subsequence((0..nv).collect::<Vec<_>>(), 1..=(max_dim + 1).min(nv));
        proptest::collection::vec(facet, 1..=6).prop_map(move |facets| {
            let facets: Vec<Vec<&str>> = facets.iter().map(|f| f.iter().map(|&i| NAMES[i]).collect()).collect();
            let verts: Vec<&str> = NAMES[..nv].to_vec();
            SimplicialComplex::new(verts, &facets).unwrap()
        })
    })
}

pub fn ring() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::Integers),
        Just(Ring::Rationals),
        (2i64..=9).prop_map(|m| Ring::integers_mod(m).unwrap()),
    ]
}

/// Nonzero field-appropriate coefficient; rationals get small denominators.
pub fn coefficient(ring: &Ring, num: i64, den: i64) -> Scalar {
    match ring {
        Ring::Rationals => Scalar::new(num.into(), den.into()),
        _ => ring.reduce(int(num)),
    }
}

/// A chain in dimension `k` of `x` from a list of (index, numerator, denominator) picks.
pub fn chain_from(x: &SimplicialComplex, k: usize, picks: &[(usize, i64, i64)], ring: &Ring) -> Chain {
    let basis = x.basis(k);
    let mut c = Chain::zero(k);
    if basis.is_empty() {
        return c;
    }
    for &(i, n, d) in picks {
        let s: Simplex = basis[i % basis.len()].clone();
        c.add_term(s, &coefficient(ring, n, d), ring);
    }
    c
}

pub fn picks() -> impl Strategy<Value = Vec<(usize, i64, i64)>> {
    proptest::collection::vec((0usize..64, -5i64..=5, 1i64..=4), 0..8)
}
