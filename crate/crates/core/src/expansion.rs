//! Multinomial expansion of `(1 + b |Z|^2)^r`, the embedding dimension it
//! implies, and the explicit curve witnessing that `F(q*a)` contains a
//! rescaled line of `F(a)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::scalar::Coeff;
use crate::algebra::{Gaussian, HermitianSeries, MultiIndex, Rational};
use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// `r! / ((r - |alpha|)! alpha!)`, the coefficient of `t_0^{r-|alpha|} t^alpha`
/// in `(t_0 + t_1 + ... + t_n)^r`.
pub fn multinomial(r: u64, alpha: &MultiIndex) -> BigUint {
    let d = u64::from(alpha.degree());
    if d > r {
        return BigUint::zero();
    }
    let denom = alpha
        .exponents()
        .iter()
        .fold(factorial(r - d), |acc, &e| acc * factorial(u64::from(e)));
    factorial(r) / denom
}

/// Number of non-constant monomials in the degree-`r` expansion in `n`
/// variables: `binom(r + n, r) - 1`.
pub fn embedding_dimension(n: u64, r: u64) -> BigUint {
    binomial(r + n, r) - BigUint::one()
}

/// `(1 + b sum |z_i|^2)^r = 1 + sum_alpha c_alpha |z^alpha|^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalExpansion {
    pub n: usize,
    #[serde(with = "crate::serde_util::rational")]
    pub b: Rational,
    pub r: u32,
    pub terms: Vec<ExpansionTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTerm {
    pub alpha: MultiIndex,
    #[serde(with = "crate::serde_util::rational")]
    pub c: Rational,
}

pub fn expand_fubini_power(n: usize, b: &Rational, r: u32) -> Result<DiagonalExpansion> {
    if n == 0 || r == 0 {
        return Err(Error::Domain("n and r must be positive".into()));
    }
    if !b.is_positive() {
        return Err(Error::Domain(format!("curvature {b} must be positive")));
    }
    let terms = MultiIndex::up_to_degree(n, 1, r)
        .into_iter()
        .map(|alpha| {
            let m = BigInt::from(multinomial(u64::from(r), &alpha));
            let c = Rational::from_integer(m) * num_traits::pow(b.clone(), alpha.degree() as usize);
            ExpansionTerm { alpha, c }
        })
        .collect();
    Ok(DiagonalExpansion {
        n,
        b: b.clone(),
        r,
        terms,
    })
}

impl DiagonalExpansion {
    pub fn coefficients(&self) -> Vec<Rational> {
        self.terms.iter().map(|t| t.c.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The expansion as a Hermitian series (constant term included), with
    /// per-index cap `r`.
    pub fn to_series(&self) -> Result<HermitianSeries<Gaussian>> {
        let o = MultiIndex::zero(self.n);
        let entries =
            std::iter::once((o.clone(), o, Gaussian::one())).chain(self.terms.iter().map(|t| {
                (
                    t.alpha.clone(),
                    t.alpha.clone(),
                    Gaussian::from_rational(&t.c),
                )
            }));
        HermitianSeries::from_entries(self.n, self.r, entries)
    }

    /// Coefficients of the one-variable polynomial obtained by setting every
    /// `|z_i|^2` to `t`; index `d` holds the `t^d` coefficient.
    pub fn collapse_to_radial(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.r as usize + 1];
        out[0] = Rational::one();
        for t in &self.terms {
            out[t.alpha.degree() as usize] += &t.c;
        }
        out
    }
}

/// Weights `w_j` (squared magnitudes of `f_j = sqrt(w_j) z^j`) such that
/// `1 + q a sum_j w_j t^j = (1 + a m t)^q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RemarkWitness {
    pub q: u32,
    #[serde(with = "crate::serde_util::rational")]
    pub a: Rational,
    pub m: u32,
    #[serde(with = "crate::serde_util::rational_vec")]
    pub host_weights: Vec<Rational>,
}

pub fn remark_witness(q: u32, a: &Rational, m: u32) -> Result<RemarkWitness> {
    if q == 0 || m == 0 || !a.is_positive() {
        return Err(Error::Domain("q, a and m must be positive".into()));
    }
    let am = a * Rational::from_integer(m.into());
    let qa = a * Rational::from_integer(q.into());
    let host_weights = (1..=q)
        .map(|j| {
            let binom = Rational::from_integer(BigInt::from(binomial(q.into(), j.into())));
            num_traits::pow(am.clone(), j as usize) * binom / &qa
        })
        .collect();
    Ok(RemarkWitness {
        q,
        a: a.clone(),
        m,
        host_weights,
    })
}

impl RemarkWitness {
    /// Checks `1 + q a sum_j w_j t^j == (1 + a m t)^q` coefficient by coefficient.
    pub fn identity_holds(&self) -> bool {
        let qa = &self.a * Rational::from_integer(self.q.into());
        let am = &self.a * Rational::from_integer(self.m.into());
        self.host_weights.len() == self.q as usize
            && self.host_weights.iter().enumerate().all(|(i, w)| {
                let j = i as u32 + 1;
                let rhs = Rational::from_integer(BigInt::from(binomial(self.q.into(), j.into())))
                    * num_traits::pow(am.clone(), j as usize);
                &qa * w == rhs
            })
    }
}
