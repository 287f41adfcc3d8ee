use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::germ::TruncatedGerm;
use super::index::MultiIndex;
use super::scalar::{gauss_inv, Gaussian};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaylorRank {
    pub rank: usize,
    pub independent: bool,
}

/// Exact rank of a dense matrix over the Gaussian rationals.
pub fn exact_rank(mut rows: Vec<Vec<Gaussian>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = gauss_inv(&rows[rank][col]);
        let pivot_row: Vec<Gaussian> = rows[rank].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * p;
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank of the Taylor-coefficient matrix of `germs` over the monomials of
/// degree `1..=degree`, and whether it equals the number of germs.
pub fn taylor_matrix_rank(germs: &[TruncatedGerm<Gaussian>], degree: u32) -> Result<TaylorRank> {
    if degree < 1 {
        return Err(Error::Domain("degree must be at least 1".into()));
    }
    let Some(first) = germs.first() else {
        return Ok(TaylorRank {
            rank: 0,
            independent: true,
        });
    };
    let n = first.num_vars();
    for (i, g) in germs.iter().enumerate() {
        if g.num_vars() != n {
            return Err(Error::DimensionMismatch(format!(
                "germ {i} has {} variables, expected {n}",
                g.num_vars()
            )));
        }
        if !g.base_point_value().is_zero() {
            return Err(Error::Domain(format!(
                "germ {i} does not vanish at the base point"
            )));
        }
    }
    let rows: Vec<Vec<Gaussian>> = MultiIndex::up_to_degree(n, 1, degree)
        .iter()
        .map(|alpha| germs.iter().map(|g| g.coeff(alpha)).collect())
        .collect();
    let rank = exact_rank(rows);
    Ok(TaylorRank {
        rank,
        independent: rank == germs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::gauss_int;

    fn g(coeffs: &[i64]) -> TruncatedGerm<Gaussian> {
        let cs: Vec<Gaussian> = coeffs.iter().map(|&c| gauss_int(c, 0)).collect();
        TruncatedGerm::univariate(4, &cs).unwrap()
    }

    #[test]
    fn spec_examples() {
        let r = taylor_matrix_rank(&[g(&[1]), g(&[0, 1])], 2).unwrap();
        assert_eq!((r.rank, r.independent), (2, true));
        let r = taylor_matrix_rank(&[g(&[1]), g(&[2])], 2).unwrap();
        assert_eq!((r.rank, r.independent), (1, false));
        let r = taylor_matrix_rank(&[g(&[1, 1]), g(&[1, -1]), g(&[1])], 2).unwrap();
        assert_eq!((r.rank, r.independent), (2, false));
    }

    #[test]
    fn truncation_hides_high_terms() {
        // z^3 is invisible at degree 2
        let r = taylor_matrix_rank(&[g(&[1]), g(&[0, 0, 1])], 2).unwrap();
        assert_eq!(r.rank, 1);
        let r = taylor_matrix_rank(&[g(&[1]), g(&[0, 0, 1])], 3).unwrap();
        assert!(r.independent);
    }

    #[test]
    fn complex_dependence() {
        // i*z and z are dependent over C
        let iz = TruncatedGerm::univariate(2, &[gauss_int(0, 1)]).unwrap();
        let z = TruncatedGerm::univariate(2, &[gauss_int(1, 0)]).unwrap();
        assert_eq!(taylor_matrix_rank(&[iz, z], 2).unwrap().rank, 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            taylor_matrix_rank(&[g(&[1])], 0),
            Err(Error::Domain(_))
        ));
        let c = TruncatedGerm::from_terms(1, 2, [(MultiIndex::zero(1), gauss_int(1, 0))]).unwrap();
        assert!(matches!(taylor_matrix_rank(&[c], 2), Err(Error::Domain(_))));
    }
}
