#![allow(dead_code)]

pub mod algebra;
pub mod decider;
pub mod signature;

use proptest::prelude::*;
use relatives::algebra::scalar::{gauss_int, rat};
use relatives::algebra::{Gaussian, MultiIndex, Rational, SignedGermSystem, TruncatedGerm};

pub fn gaussian(bound: i64) -> impl Strategy<Value = Gaussian> {
    (-bound..=bound, -bound..=bound).prop_map(|(re, im)| gauss_int(re, im))
}

pub fn nonzero_weight() -> impl Strategy<Value = Rational> {
    (prop_oneof![-4i64..=-1, 1i64..=4], 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

/// Germ in `n` variables vanishing at the origin, with up to `terms` monomials of degree `1..=d`.
pub fn germ(
    n: usize,
    d: u32,
    terms: usize,
    bound: i64,
) -> impl Strategy<Value = TruncatedGerm<Gaussian>> {
    let support = MultiIndex::up_to_degree(n, 1, d);
    prop::collection::vec((prop::sample::select(support), gaussian(bound)), 0..=terms)
        .prop_map(move |ts| TruncatedGerm::from_terms(n, d, ts).unwrap())
}

pub fn system(
    n: usize,
    d: u32,
    max_len: usize,
) -> impl Strategy<Value = SignedGermSystem<Gaussian>> {
    prop::collection::vec((nonzero_weight(), germ(n, d, 4, 3)), 1..=max_len).prop_map(|pairs| {
        let (w, g): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        SignedGermSystem::new(w, g).unwrap()
    })
}

/// `(n, d)` with a few variables and small degree.
pub fn shape(max_n: usize, max_d: u32) -> impl Strategy<Value = (usize, u32)> {
    (1..=max_n, 1..=max_d)
}
