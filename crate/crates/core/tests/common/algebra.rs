use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use relatives::algebra::rank::exact_rank;
use relatives::algebra::scalar::{gauss_int, int};
use relatives::algebra::{
    norm_square_system, taylor_matrix_rank, Gaussian, HermitianSeries, MultiIndex, TruncatedGerm,
};

use super::{gaussian, system};

pub fn series(n: usize, d: u32, len: usize) -> impl Strategy<Value = HermitianSeries<Gaussian>> {
    system(n, d, len).prop_map(|s| norm_square_system(&s).unwrap())
}

pub fn log_exp_case() -> impl Strategy<Value = HermitianSeries<Gaussian>> {
    (1usize..=2, 1u32..=3).prop_flat_map(|(n, d)| series(n, d, 3))
}

/// `exp(log(1 + h)) = 1 + h`, `log(exp(h)) = h`, and Hermitian symmetry after every operation.
pub fn check_log_exp(h: &HermitianSeries<Gaussian>) -> Result<(), TestCaseError> {
    let d = h.max_degree();
    let one_plus = h.add_constant(&int(1));
    let log = one_plus.log_truncate(d).unwrap();
    prop_assert!(log.is_hermitian());
    let back = log.exp_truncate(d).unwrap();
    prop_assert!(back.is_hermitian());
    prop_assert_eq!(&back, &one_plus);
    let again = h.exp_truncate(d).unwrap().log_truncate(d).unwrap();
    prop_assert_eq!(&again, h);
    prop_assert!(h.mul(h).unwrap().is_hermitian());
    prop_assert!(one_plus.pow(3).unwrap().is_hermitian());
    Ok(())
}

/// Rows of the Taylor matrix over `up_to_degree(n, 1, d)`.
pub fn taylor_rows(germs: &[TruncatedGerm<Gaussian>], n: usize, d: u32) -> Vec<Vec<Gaussian>> {
    let basis = MultiIndex::up_to_degree(n, 1, d);
    germs
        .iter()
        .map(|g| basis.iter().map(|a| g.coeff(a)).collect())
        .collect()
}

/// `rank` triangular independent germs plus dependent integer combinations,
/// shuffled. Yields `(germs, rank, n, d)`.
pub fn rank_case() -> impl Strategy<Value = (Vec<TruncatedGerm<Gaussian>>, usize, usize, u32)> {
    (1usize..=2, 1u32..=3).prop_flat_map(|(n, d)| {
        let basis = MultiIndex::up_to_degree(n, 1, d);
        let max_rank = basis.len().min(4);
        (1..=max_rank, 0usize..=3).prop_flat_map(move |(rank, extra)| {
            let basis = basis.clone();
            let tails =
                prop::collection::vec(prop::collection::vec(gaussian(3), basis.len()), rank);
            let combos = prop::collection::vec(prop::collection::vec(gaussian(2), rank), extra);
            let perm = Just((0..rank + extra).collect::<Vec<_>>()).prop_shuffle();
            (tails, combos, perm).prop_map(move |(tails, combos, perm)| {
                // germ i leads with basis[i], then arbitrary later monomials
                let base: Vec<TruncatedGerm<Gaussian>> = tails
                    .iter()
                    .enumerate()
                    .map(|(i, tail)| {
                        let terms = std::iter::once((basis[i].clone(), gauss_int(1, 0))).chain(
                            basis
                                .iter()
                                .zip(tail)
                                .skip(i + 1)
                                .map(|(a, c)| (a.clone(), c.clone())),
                        );
                        TruncatedGerm::from_terms(n, d, terms).unwrap()
                    })
                    .collect();
                let mut all = base.clone();
                for c in &combos {
                    let mut g = TruncatedGerm::zero(n, d).unwrap();
                    for (b, k) in base.iter().zip(c) {
                        g = g.add(&b.scale(k)).unwrap();
                    }
                    all.push(g);
                }
                (perm.iter().map(|&i| all[i].clone()).collect(), rank, n, d)
            })
        })
    })
}

/// Exact rank against the construction and a binary64 SVD of the same matrix.
pub fn check_rank(
    germs: &[TruncatedGerm<Gaussian>],
    rank: usize,
    n: usize,
    d: u32,
) -> Result<(), TestCaseError> {
    let r = taylor_matrix_rank(germs, d).unwrap();
    prop_assert_eq!(r.rank, rank);
    prop_assert_eq!(r.independent, rank == germs.len());
    let rows = taylor_rows(germs, n, d);
    let m = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| {
        Complex64::new(
            rows[i][j].re.to_f64().unwrap(),
            rows[i][j].im.to_f64().unwrap(),
        )
    });
    let sv = m.svd(false, false).singular_values;
    let numeric_rank = sv.iter().filter(|s| **s > 1e-8 * sv[0].max(1.0)).count();
    prop_assert_eq!(numeric_rank, rank);
    prop_assert_eq!(exact_rank(rows), rank);
    Ok(())
}
