use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use relatives::algebra::{norm_square_system, Gaussian, HermitianSeries, MultiIndex};
use relatives::signature::{inertia, signature_reduce, Inertia};

use super::{gaussian, system};

pub fn support(h: &HermitianSeries<Gaussian>) -> Vec<MultiIndex> {
    let mut b: Vec<MultiIndex> = h.entries().map(|(a, _, _)| a.clone()).collect();
    b.sort();
    b.dedup();
    b
}

fn matrix(h: &HermitianSeries<Gaussian>, basis: &[MultiIndex]) -> Vec<Vec<Gaussian>> {
    basis
        .iter()
        .map(|a| basis.iter().map(|b| h.entry(a, b)).collect())
        .collect()
}

fn from_matrix(
    h: &HermitianSeries<Gaussian>,
    basis: &[MultiIndex],
    m: &[Vec<Gaussian>],
) -> HermitianSeries<Gaussian> {
    let entries = basis.iter().enumerate().flat_map(|(i, a)| {
        basis
            .iter()
            .enumerate()
            .filter(move |(j, _)| !m[i][*j].is_zero())
            .map(move |(j, b)| (a.clone(), b.clone(), m[i][j].clone()))
    });
    HermitianSeries::from_entries(h.num_vars(), h.max_degree(), entries).unwrap()
}

/// `P^* H P`.
fn congruence(h: &[Vec<Gaussian>], p: &[Vec<Gaussian>]) -> Vec<Vec<Gaussian>> {
    let n = h.len();
    let hp: Vec<Vec<Gaussian>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &h[i][k] * &p[k][j]).sum())
                .collect()
        })
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| p[k][i].conj() * &hp[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Independent numeric inertia from Hermitian eigenvalues.
fn eigen_inertia(m: &[Vec<Gaussian>]) -> Inertia {
    let n = m.len();
    if n == 0 {
        return Inertia {
            positive: 0,
            negative: 0,
            rank: 0,
        };
    }
    let f = |q: &num_rational::BigRational| q.to_f64().unwrap();
    let a = DMatrix::from_fn(n, n, |i, j| Complex64::new(f(&m[i][j].re), f(&m[i][j].im)));
    let ev = a.symmetric_eigen().eigenvalues;
    let scale = ev.iter().fold(1.0f64, |s, x| s.max(x.abs()));
    let positive = ev.iter().filter(|x| **x > 1e-9 * scale).count();
    let negative = ev.iter().filter(|x| **x < -1e-9 * scale).count();
    Inertia {
        positive,
        negative,
        rank: positive + negative,
    }
}

/// Invertible unit upper-triangular matrix with a row permutation.
fn invertible(n: usize) -> impl Strategy<Value = Vec<Vec<Gaussian>>> {
    (
        prop::collection::vec(gaussian(2), n * n),
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
    )
        .prop_map(move |(vals, perm)| {
            let one = relatives::algebra::scalar::gauss_int(1, 0);
            let upper: Vec<Vec<Gaussian>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match i.cmp(&j) {
                            std::cmp::Ordering::Equal => one.clone(),
                            std::cmp::Ordering::Less => vals[i * n + j].clone(),
                            _ => Gaussian::zero(),
                        })
                        .collect()
                })
                .collect();
            perm.iter().map(|&i| upper[i].clone()).collect()
        })
}

pub fn case() -> impl Strategy<Value = (HermitianSeries<Gaussian>, usize)> {
    (1usize..=2, 1u32..=5)
        .prop_flat_map(|(n, d)| system(n, d, 6))
        .prop_map(|s| (norm_square_system(&s).unwrap(), s.len()))
}

pub fn sylvester_case() -> impl Strategy<Value = (HermitianSeries<Gaussian>, Vec<Vec<Gaussian>>)> {
    case().prop_flat_map(|(h, _)| {
        let n = support(&h).len();
        (Just(h), invertible(n))
    })
}

/// Reconstruction, minimality, idempotence and agreement with an eigenvalue count.
pub fn check_reduction(
    h: &HermitianSeries<Gaussian>,
    generators: usize,
) -> Result<(), TestCaseError> {
    let red = signature_reduce(h).unwrap();
    prop_assert_eq!(&red.reconstruct().unwrap(), h);
    prop_assert_eq!(red.system.len(), red.inertia.rank);
    prop_assert!(red.system.len() <= generators);
    prop_assert_eq!(red.inertia, inertia(h).unwrap());
    let again = signature_reduce(&red.reconstruct().unwrap()).unwrap();
    prop_assert_eq!(again.system.len(), red.system.len());
    prop_assert_eq!(again.inertia, red.inertia);
    let basis = support(h);
    prop_assert_eq!(red.inertia, eigen_inertia(&matrix(h, &basis)));
    Ok(())
}

/// Inertia is unchanged by the congruence `P^* H P`.
pub fn check_sylvester(
    h: &HermitianSeries<Gaussian>,
    p: &[Vec<Gaussian>],
) -> Result<(), TestCaseError> {
    let basis = support(h);
    let moved = from_matrix(h, &basis, &congruence(&matrix(h, &basis), p));
    prop_assert_eq!(inertia(&moved).unwrap(), inertia(h).unwrap());
    let red = signature_reduce(&moved).unwrap();
    prop_assert_eq!(red.reconstruct().unwrap(), moved);
    Ok(())
}
