use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::index::MultiIndex;
use super::scalar::{Coeff, Gaussian, Rational};
use crate::error::{Error, Result};

/// A germ of a holomorphic function at the origin, truncated at a total
/// degree. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedGerm<C> {
    num_vars: usize,
    max_degree: u32,
    coeffs: BTreeMap<MultiIndex, C>,
}

impl<C: Coeff> TruncatedGerm<C> {
    pub fn zero(num_vars: usize, max_degree: u32) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::Domain("a germ needs at least one variable".into()));
        }
        if max_degree == 0 {
            return Err(Error::Domain("max_degree must be positive".into()));
        }
        Ok(TruncatedGerm {
            num_vars,
            max_degree,
            coeffs: BTreeMap::new(),
        })
    }

    /// Builds a germ from `(index, coefficient)` pairs; repeated indices add up.
    pub fn from_terms<I>(num_vars: usize, max_degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, C)>,
    {
        let mut g = Self::zero(num_vars, max_degree)?;
        for (alpha, c) in terms {
            if alpha.num_vars() != num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "index {alpha:?} has {} variables, germ has {num_vars}",
                    alpha.num_vars()
                )));
            }
            if alpha.degree() > max_degree {
                return Err(Error::Domain(format!(
                    "index {alpha:?} exceeds max_degree {max_degree}"
                )));
            }
            g.add_term(alpha, c);
        }
        Ok(g)
    }

    /// `c * z^alpha`, or a truncation error if the degree is too large.
    pub fn monomial(num_vars: usize, max_degree: u32, alpha: MultiIndex, c: C) -> Result<Self> {
        Self::from_terms(num_vars, max_degree, [(alpha, c)])
    }

    /// Single-variable germ `sum_j coeffs[j-1] z^j`.
    pub fn univariate(max_degree: u32, coeffs: &[C]) -> Result<Self> {
        Self::from_terms(
            1,
            max_degree,
            coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (MultiIndex::new(vec![j as u32 + 1]), c.clone())),
        )
    }

    fn add_term(&mut self, alpha: MultiIndex, c: C) {
        let sum = match self.coeffs.remove(&alpha) {
            Some(prev) => prev + c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(alpha, sum);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> C {
        self.coeffs.get(alpha).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.coeffs.iter()
    }

    pub fn base_point_value(&self) -> C {
        self.coeff(&MultiIndex::zero(self.num_vars))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest degree carrying a nonzero coefficient (0 for constants).
    pub fn degree(&self) -> u32 {
        self.coeffs
            .keys()
            .map(MultiIndex::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn with_max_degree(&self, max_degree: u32) -> Self {
        TruncatedGerm {
            num_vars: self.num_vars,
            max_degree,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(a, _)| a.degree() <= max_degree)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self {
            num_vars: self.num_vars,
            max_degree: self.max_degree,
            coeffs: BTreeMap::new(),
        };
        for (a, v) in &self.coeffs {
            out.add_term(a.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, v) in &other.coeffs {
            out.add_term(a.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-C::one()))
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = Self::zero(self.num_vars, self.max_degree)?;
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let ab = a.add(b);
                if ab.degree() <= self.max_degree {
                    out.add_term(ab, x.clone() * y.clone());
                }
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars || self.max_degree != other.max_degree {
            return Err(Error::DimensionMismatch(format!(
                "germ shapes ({}, {}) and ({}, {}) differ",
                self.num_vars, self.max_degree, other.num_vars, other.max_degree
            )));
        }
        Ok(())
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncatedGerm<D> {
        TruncatedGerm {
            num_vars: self.num_vars,
            max_degree: self.max_degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(a, c)| (a.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

impl TruncatedGerm<Gaussian> {
    pub fn to_approx(&self) -> TruncatedGerm<Complex64> {
        self.map(|c| c.to_complex64())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    alpha: MultiIndex,
    #[serde(default)]
    re: Value,
    #[serde(default)]
    im: Value,
}

#[derive(Serialize, Deserialize)]
struct GermJson {
    num_vars: usize,
    max_degree: u32,
    coefficients: Vec<TermJson>,
}

impl<C: Coeff> Serialize for TruncatedGerm<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GermJson {
            num_vars: self.num_vars,
            max_degree: self.max_degree,
            coefficients: self
                .coeffs
                .iter()
                .map(|(alpha, c)| {
                    let (re, im) = c.to_json_parts();
                    TermJson {
                        alpha: alpha.clone(),
                        re,
                        im,
                    }
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for TruncatedGerm<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GermJson::deserialize(d)?;
        let terms = raw
            .coefficients
            .iter()
            .map(|t| Ok((t.alpha.clone(), C::from_json_parts(&t.re, &t.im)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        TruncatedGerm::from_terms(raw.num_vars, raw.max_degree, terms).map_err(D::Error::custom)
    }
}

/// A finite family of germs with nonzero real weights, standing for
/// `sum_i w_i |g_i|^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Coeff", deserialize = "C: Coeff"))]
pub struct SignedGermSystem<C> {
    #[serde(with = "crate::serde_util::rational_vec")]
    pub weights: Vec<Rational>,
    pub germs: Vec<TruncatedGerm<C>>,
}

impl<C: Coeff> SignedGermSystem<C> {
    pub fn new(weights: Vec<Rational>, germs: Vec<TruncatedGerm<C>>) -> Result<Self> {
        let sys = SignedGermSystem { weights, germs };
        sys.validate()?;
        Ok(sys)
    }

    /// All weights equal to one.
    pub fn unweighted(germs: Vec<TruncatedGerm<C>>) -> Result<Self> {
        let weights = vec![Rational::from_integer(1.into()); germs.len()];
        Self::new(weights, germs)
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.len() != self.germs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} germs",
                self.weights.len(),
                self.germs.len()
            )));
        }
        if let Some(i) = self.weights.iter().position(Zero::is_zero) {
            return Err(Error::Domain(format!("weight {i} is zero")));
        }
        if let Some(first) = self.germs.first() {
            for g in &self.germs[1..] {
                if g.num_vars() != first.num_vars() || g.max_degree() != first.max_degree() {
                    return Err(Error::DimensionMismatch(
                        "germs in a system must share num_vars and max_degree".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.germs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.germs.is_empty()
    }
}
