//! Real-analytic germs `sum c_{ab} z^a zbar^b` stored by their Hermitian
//! coefficient array, together with the polarized view over independent
//! variables `(z, w)`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::germ::SignedGermSystem;
use super::index::MultiIndex;
use super::scalar::{Coeff, Gaussian, Rational};
use crate::error::{Error, Result};

type Key = (MultiIndex, MultiIndex);

/// A Hermitian series with a per-index degree cap: every stored `(a, b)`
/// has `|a| <= max_degree` and `|b| <= max_degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianSeries<C> {
    num_vars: usize,
    max_degree: u32,
    entries: BTreeMap<Key, C>,
}

/// The same coefficient data read as a function of independent `(z, w)`
/// through `z^a conj(w)^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<C> {
    num_vars: usize,
    max_degree: u32,
    entries: BTreeMap<Key, C>,
}

impl<C: Coeff> HermitianSeries<C> {
    pub fn zero(num_vars: usize, max_degree: u32) -> Result<Self> {
        if num_vars == 0 || max_degree == 0 {
            return Err(Error::Domain(
                "num_vars and max_degree must be positive".into(),
            ));
        }
        Ok(HermitianSeries {
            num_vars,
            max_degree,
            entries: BTreeMap::new(),
        })
    }

    pub fn constant(num_vars: usize, max_degree: u32, c: &Rational) -> Result<Self> {
        let mut s = Self::zero(num_vars, max_degree)?;
        let o = MultiIndex::zero(num_vars);
        s.accumulate(o.clone(), o, C::from_rational(c));
        Ok(s)
    }

    /// `sum_i |z_i|^2`.
    pub fn norm_squared_coordinates(num_vars: usize, max_degree: u32) -> Result<Self> {
        let mut s = Self::zero(num_vars, max_degree)?;
        for i in 0..num_vars {
            let e = MultiIndex::unit(num_vars, i);
            s.accumulate(e.clone(), e, C::one());
        }
        Ok(s)
    }

    /// Builds a series from explicit entries and checks Hermitian symmetry.
    pub fn from_entries<I>(num_vars: usize, max_degree: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, MultiIndex, C)>,
    {
        let mut s = Self::zero(num_vars, max_degree)?;
        for (a, b, c) in entries {
            if a.num_vars() != num_vars || b.num_vars() != num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({a:?}, {b:?}) does not have {num_vars} variables"
                )));
            }
            if a.degree() > max_degree || b.degree() > max_degree {
                return Err(Error::Domain(format!(
                    "entry ({a:?}, {b:?}) exceeds the per-index cap {max_degree}"
                )));
            }
            s.accumulate(a, b, c);
        }
        if let Some((a, b)) = s.first_asymmetry() {
            return Err(Error::Domain(format!(
                "entries ({a:?}, {b:?}) and ({b:?}, {a:?}) are not conjugate"
            )));
        }
        Ok(s)
    }

    fn accumulate(&mut self, a: MultiIndex, b: MultiIndex, c: C) {
        if a.degree() > self.max_degree || b.degree() > self.max_degree {
            return;
        }
        let key = (a, b);
        let sum = match self.entries.remove(&key) {
            Some(prev) => prev + c,
            None => c,
        };
        if !sum.is_zero() {
            self.entries.insert(key, sum);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn entry(&self, a: &MultiIndex, b: &MultiIndex) -> C {
        self.entries
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Nonzero entries in graded-lex order of `(a, b)`.
    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, &C)> {
        self.entries.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn constant_term(&self) -> C {
        let o = MultiIndex::zero(self.num_vars);
        self.entry(&o, &o)
    }

    /// First `(a, b)` whose mirror entry is not the conjugate, if any.
    pub fn first_asymmetry(&self) -> Option<(MultiIndex, MultiIndex)> {
        for ((a, b), c) in &self.entries {
            let mirror = self.entry(b, a);
            if !mirror.close_to(&c.conj()) {
                return Some((a.clone(), b.clone()));
            }
        }
        None
    }

    pub fn is_hermitian(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// Same data under a different per-index cap (entries above it are dropped).
    pub fn with_max_degree(&self, max_degree: u32) -> Self {
        HermitianSeries {
            num_vars: self.num_vars,
            max_degree,
            entries: self
                .entries
                .iter()
                .filter(|((a, b), _)| a.degree() <= max_degree && b.degree() <= max_degree)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch(format!(
                "series in {} and {} variables",
                self.num_vars, other.num_vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.with_max_degree(self.max_degree.min(other.max_degree));
        for ((a, b), c) in &other.entries {
            out.accumulate(a.clone(), b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = HermitianSeries {
            num_vars: self.num_vars,
            max_degree: self.max_degree,
            entries: BTreeMap::new(),
        };
        if q.is_zero() {
            return out;
        }
        for ((a, b), c) in &self.entries {
            out.entries.insert((a.clone(), b.clone()), c.scale(q));
        }
        out
    }

    /// `q + self`.
    pub fn add_constant(&self, q: &Rational) -> Self {
        let mut out = self.clone();
        let o = MultiIndex::zero(self.num_vars);
        out.accumulate(o.clone(), o, C::from_rational(q));
        out
    }

    /// Convolution product, truncated at the smaller of the two caps.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let cap = self.max_degree.min(other.max_degree);
        let mut out = HermitianSeries {
            num_vars: self.num_vars,
            max_degree: cap,
            entries: BTreeMap::new(),
        };
        for ((a1, b1), x) in &self.entries {
            if a1.degree() > cap || b1.degree() > cap {
                continue;
            }
            for ((a2, b2), y) in &other.entries {
                if a1.degree() + a2.degree() > cap || b1.degree() + b2.degree() > cap {
                    continue;
                }
                out.accumulate(a1.add(a2), b1.add(b2), x.clone() * y.clone());
            }
        }
        Ok(out)
    }

    /// `self^k` for `k >= 1`, by repeated squaring.
    pub fn pow(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("exponent must be positive".into()));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = k;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(result.expect("k >= 1"))
    }

    /// Truncated `log(h)` for `h` with constant term exactly one.
    pub fn log_truncate(&self, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Domain("degree must be positive".into()));
        }
        let one = Rational::from_integer(1.into());
        if self.constant_term() != C::from_rational(&one) {
            return Err(Error::Domain(format!(
                "log needs constant term 1, found {:?}",
                self.constant_term()
            )));
        }
        let u = self.add_constant(&-one).with_max_degree(degree);
        let mut acc = HermitianSeries::zero(self.num_vars, degree)?;
        let mut power = u.clone();
        // every term of u has |a| + |b| >= 1, so u^k vanishes past k = 2 * degree
        for k in 1..=2 * degree {
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&Rational::new(sign.into(), k.into())))?;
            power = power.mul(&u)?;
        }
        Ok(acc)
    }

    /// Truncated `exp(h)` for `h` with zero constant term.
    pub fn exp_truncate(&self, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Domain("degree must be positive".into()));
        }
        if !self.constant_term().is_zero() {
            return Err(Error::Domain(format!(
                "exp needs zero constant term, found {:?}",
                self.constant_term()
            )));
        }
        let u = self.with_max_degree(degree);
        let one = Rational::from_integer(1.into());
        let mut acc = HermitianSeries::constant(self.num_vars, degree, &one)?;
        let mut power = u.clone();
        let mut factorial = one;
        for k in 1..=2 * degree {
            if power.is_zero() {
                break;
            }
            factorial *= Rational::from_integer(k.into());
            acc = acc.add(&power.scale(&factorial.recip()))?;
            power = power.mul(&u)?;
        }
        Ok(acc)
    }

    /// Sum of squared magnitudes of all coefficient differences.
    pub fn distance_sqr(&self, other: &Self) -> Result<C::Real> {
        let diff = self.sub(other)?;
        Ok(diff
            .entries
            .values()
            .fold(C::Real::zero(), |acc, c| acc + c.norm_sqr()))
    }

    /// Evaluates at a point (requires the approximate field).
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.polarize().eval(z, z)
    }

    pub fn polarize(&self) -> BiSeries<C> {
        BiSeries {
            num_vars: self.num_vars,
            max_degree: self.max_degree,
            entries: self.entries.clone(),
        }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> HermitianSeries<D> {
        HermitianSeries {
            num_vars: self.num_vars,
            max_degree: self.max_degree,
            entries: self
                .entries
                .iter()
                .map(|(k, c)| (k.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

impl HermitianSeries<Gaussian> {
    pub fn to_approx(&self) -> HermitianSeries<Complex64> {
        self.map(|c| c.to_complex64())
    }
}

impl<C: Coeff> BiSeries<C> {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn entry(&self, a: &MultiIndex, b: &MultiIndex) -> C {
        self.entries
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Restriction to the antidiagonal `w = conj(z)`.
    pub fn restrict(&self) -> HermitianSeries<C> {
        HermitianSeries {
            num_vars: self.num_vars,
            max_degree: self.max_degree,
            entries: self.entries.clone(),
        }
    }

    /// `sum c_{ab} z^a conj(w)^b` at a point.
    pub fn eval(&self, z: &[Complex64], w: &[Complex64]) -> Complex64 {
        let wbar: Vec<Complex64> = w.iter().map(|x| x.conj()).collect();
        self.entries
            .iter()
            .map(|((a, b), c)| c.to_complex64() * monomial(z, a) * monomial(&wbar, b))
            .sum()
    }
}

fn monomial(z: &[Complex64], a: &MultiIndex) -> Complex64 {
    z.iter()
        .zip(a.exponents())
        .map(|(x, &e)| x.powu(e))
        .product()
}

/// `sum_i w_i |g_i|^2` as a Hermitian series.
///
/// An empty system has no shape and is rejected; callers holding a shape can
/// use [`norm_square_system_in`].
pub fn norm_square_system<C: Coeff>(system: &SignedGermSystem<C>) -> Result<HermitianSeries<C>> {
    let first = system
        .germs
        .first()
        .ok_or_else(|| Error::Domain("empty germ system has no shape".into()))?;
    norm_square_system_in(system, first.num_vars(), first.max_degree())
}

/// [`norm_square_system`] with an explicit shape; an empty system gives zero.
pub fn norm_square_system_in<C: Coeff>(
    system: &SignedGermSystem<C>,
    num_vars: usize,
    max_degree: u32,
) -> Result<HermitianSeries<C>> {
    system.validate()?;
    let mut out = HermitianSeries::zero(num_vars, max_degree)?;
    for (w, g) in system.weights.iter().zip(&system.germs) {
        if g.num_vars() != num_vars || g.max_degree() != max_degree {
            return Err(Error::DimensionMismatch(format!(
                "germ of shape ({}, {}) in a system of shape ({num_vars}, {max_degree})",
                g.num_vars(),
                g.max_degree()
            )));
        }
        for (a, x) in g.terms() {
            let wx = x.scale(w);
            for (b, y) in g.terms() {
                out.accumulate(a.clone(), b.clone(), wx.clone() * y.conj());
            }
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    alpha: MultiIndex,
    beta: MultiIndex,
    #[serde(default)]
    re: Value,
    #[serde(default)]
    im: Value,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    num_vars: usize,
    max_degree: u32,
    entries: Vec<EntryJson>,
}

impl<C: Coeff> Serialize for HermitianSeries<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            num_vars: self.num_vars,
            max_degree: self.max_degree,
            entries: self
                .entries
                .iter()
                .map(|((a, b), c)| {
                    let (re, im) = c.to_json_parts();
                    EntryJson {
                        alpha: a.clone(),
                        beta: b.clone(),
                        re,
                        im,
                    }
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for HermitianSeries<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(d)?;
        let entries = raw
            .entries
            .iter()
            .map(|e| {
                Ok((
                    e.alpha.clone(),
                    e.beta.clone(),
                    C::from_json_parts(&e.re, &e.im)?,
                ))
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        HermitianSeries::from_entries(raw.num_vars, raw.max_degree, entries)
            .map_err(D::Error::custom)
    }
}
