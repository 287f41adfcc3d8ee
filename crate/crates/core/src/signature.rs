//! Inertia and signature reduction of finite-rank Hermitian series.
//!
//! A normalized series `h = sum_{a,b != 0} c_{ab} z^a zbar^b` is rewritten as
//! `sum_i w_i |g_i|^2` with linearly independent germs `g_i` by exact
//! symmetric elimination on the coefficient matrix over the monomial support.
//! A nonzero diagonal pivot `d` peels off `d |g|^2`; when every remaining
//! diagonal entry vanishes, a 2x2 block `[[0, x], [conj x, 0]]` is split into
//! `1/2 |a + b|^2 - 1/2 |a - b|^2`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::scalar::{gauss_inv, Coeff};
use crate::algebra::{
    norm_square_system_in, Gaussian, HermitianSeries, MultiIndex, Rational, SignedGermSystem,
    TruncatedGerm,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub rank: usize,
}

/// Output of [`signature_reduce`]: the weighted germ system plus the shape of
/// the series it came from, so the empty system still reconstructs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reduction {
    #[serde(flatten)]
    pub system: SignedGermSystem<Gaussian>,
    pub inertia: Inertia,
    pub num_vars: usize,
    pub max_degree: u32,
}

impl Reduction {
    pub fn reconstruct(&self) -> Result<HermitianSeries<Gaussian>> {
        norm_square_system_in(&self.system, self.num_vars, self.max_degree)
    }
}

struct Piece {
    weight: Rational,
    vector: Vec<Gaussian>,
}

fn check_normalized(h: &HermitianSeries<Gaussian>) -> Result<()> {
    if let Some((a, b)) = h.first_asymmetry() {
        return Err(Error::Domain(format!(
            "series is not Hermitian at ({a:?}, {b:?})"
        )));
    }
    for (a, b, c) in h.entries() {
        if a.is_zero() || b.is_zero() {
            return Err(Error::Normalization(format!(
                "entry ({a:?}, {b:?}) = {} + {} i is constant or pluriharmonic",
                c.re, c.im
            )));
        }
    }
    Ok(())
}

/// Monomial support of the normalized series, graded-lex ordered.
fn support(h: &HermitianSeries<Gaussian>) -> Vec<MultiIndex> {
    let mut basis: Vec<MultiIndex> = h.entries().map(|(a, _, _)| a.clone()).collect();
    basis.sort();
    basis.dedup();
    basis
}

fn decompose(h: &HermitianSeries<Gaussian>) -> Result<(Vec<MultiIndex>, Vec<Piece>)> {
    check_normalized(h)?;
    let basis = support(h);
    let k = basis.len();
    let mut a: Vec<Vec<Gaussian>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| h.entry(x, y)).collect())
        .collect();
    let mut pieces = Vec::new();

    loop {
        if let Some(i) = (0..k).find(|&i| !a[i][i].is_zero()) {
            debug_assert!(a[i][i].im.is_zero());
            let d = a[i][i].re.clone();
            let col: Vec<Gaussian> = (0..k).map(|p| a[p][i].clone()).collect();
            let row: Vec<Gaussian> = a[i].clone();
            let inv_d = d.recip();
            for p in 0..k {
                if col[p].is_zero() {
                    continue;
                }
                let cp = Coeff::scale(&col[p], &inv_d);
                for q in 0..k {
                    if !row[q].is_zero() {
                        a[p][q] -= &cp * &row[q];
                    }
                }
            }
            pieces.push(Piece {
                vector: col.iter().map(|c| Coeff::scale(c, &inv_d)).collect(),
                weight: d,
            });
            continue;
        }
        let Some((i, j)) = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        let x = a[i][j].clone();
        let u: Vec<Gaussian> = (0..k).map(|p| a[p][i].clone()).collect();
        let v: Vec<Gaussian> = (0..k).map(|p| a[p][j].clone()).collect();
        let inv_xbar = gauss_inv(&x.conj());
        let av: Vec<Gaussian> = u.iter().map(|c| c * &inv_xbar).collect();
        // a b* + b a*, with a = u / conj(x) and b = v
        for p in 0..k {
            for q in 0..k {
                let t = &av[p] * v[q].conj() + &v[p] * av[q].conj();
                if !t.is_zero() {
                    a[p][q] -= t;
                }
            }
        }
        let half = Rational::new(1.into(), 2.into());
        pieces.push(Piece {
            weight: half.clone(),
            vector: av.iter().zip(&v).map(|(x, y)| x + y).collect(),
        });
        pieces.push(Piece {
            weight: -half,
            vector: av.iter().zip(&v).map(|(x, y)| x - y).collect(),
        });
    }
    debug_assert!(a.iter().flatten().all(Zero::is_zero));
    Ok((basis, pieces))
}

/// Signature `(r', s')` of the coefficient matrix of a normalized series.
pub fn inertia(h: &HermitianSeries<Gaussian>) -> Result<Inertia> {
    let (_, pieces) = decompose(h)?;
    Ok(count(&pieces))
}

fn count(pieces: &[Piece]) -> Inertia {
    let positive = pieces.iter().filter(|p| p.weight.is_positive()).count();
    let negative = pieces.len() - positive;
    Inertia {
        positive,
        negative,
        rank: pieces.len(),
    }
}

/// Rewrites `h` as a weighted system of linearly independent germs whose
/// weight signs realize the inertia (positive weights first).
pub fn signature_reduce(h: &HermitianSeries<Gaussian>) -> Result<Reduction> {
    let (basis, mut pieces) = decompose(h)?;
    let inertia = count(&pieces);
    pieces.sort_by_key(|p| !p.weight.is_positive());
    let mut weights = Vec::with_capacity(pieces.len());
    let mut germs = Vec::with_capacity(pieces.len());
    for p in pieces {
        let germ = TruncatedGerm::from_terms(
            h.num_vars(),
            h.max_degree(),
            basis.iter().cloned().zip(p.vector),
        )?;
        weights.push(p.weight);
        germs.push(germ);
    }
    Ok(Reduction {
        system: SignedGermSystem::new(weights, germs)?,
        inertia,
        num_vars: h.num_vars(),
        max_degree: h.max_degree(),
    })
}
