//! Coefficient fields for germs and series.
//!
//! Two modes are supported: exact Gaussian rationals (`Complex<BigRational>`)
//! and approximate binary64 complex numbers. Series and germs are generic
//! over [`Coeff`], so the mode is fixed by the type.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Gaussian = Complex<BigRational>;

/// Arithmetic required of a series coefficient.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// The real field underlying the coefficients (used for norms).
    type Real: Clone + Debug + PartialOrd + Zero + Add<Output = Self::Real> + Send + Sync;

    const EXACT: bool;

    fn conj(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    fn norm_sqr(&self) -> Self::Real;
    /// Whether the imaginary part vanishes (within rounding in approximate mode).
    fn is_real(&self) -> bool;
    /// Equality (exact) or agreement to a relative tolerance (approximate).
    fn close_to(&self, other: &Self) -> bool;
    fn to_complex64(&self) -> Complex64;
    fn real_to_f64(r: &Self::Real) -> f64;
    fn to_json_parts(&self) -> (Value, Value);
    fn from_json_parts(re: &Value, im: &Value) -> Result<Self>;
}

const APPROX_TOL: f64 = 1e-12;

impl Coeff for Gaussian {
    type Real = Rational;
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn from_rational(q: &Rational) -> Self {
        Complex::new(q.clone(), Rational::zero())
    }

    fn scale(&self, q: &Rational) -> Self {
        Complex::new(&self.re * q, &self.im * q)
    }

    fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn close_to(&self, other: &Self) -> bool {
        self == other
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn real_to_f64(r: &Rational) -> f64 {
        rational_to_f64(r)
    }

    fn to_json_parts(&self) -> (Value, Value) {
        (
            Value::String(format_rational(&self.re)),
            Value::String(format_rational(&self.im)),
        )
    }

    fn from_json_parts(re: &Value, im: &Value) -> Result<Self> {
        Ok(Complex::new(exact_part(re)?, exact_part(im)?))
    }
}

impl Coeff for Complex64 {
    type Real = f64;
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn from_rational(q: &Rational) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }

    fn scale(&self, q: &Rational) -> Self {
        self * rational_to_f64(q)
    }

    fn norm_sqr(&self) -> f64 {
        Complex64::norm_sqr(self)
    }

    fn is_real(&self) -> bool {
        self.im.abs() <= APPROX_TOL * self.re.abs().max(1.0)
    }

    fn close_to(&self, other: &Self) -> bool {
        let scale = self.norm().max(other.norm()).max(1.0);
        (self - other).norm() <= APPROX_TOL * scale
    }

    fn to_complex64(&self) -> Complex64 {
        *self
    }

    fn real_to_f64(r: &f64) -> f64 {
        *r
    }

    fn to_json_parts(&self) -> (Value, Value) {
        (json_number(self.re), json_number(self.im))
    }

    fn from_json_parts(re: &Value, im: &Value) -> Result<Self> {
        Ok(Complex64::new(approx_part(re)?, approx_part(im)?))
    }
}

fn json_number(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn exact_part(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Null => Ok(Rational::zero()),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(BigInt::from(
            n.as_i64().expect("checked is_i64"),
        ))),
        Value::Number(_) => Err(Error::Mode(format!(
            "approximate scalar {v} where an exact \"p/q\" value is required"
        ))),
        other => Err(Error::Json(format!("expected a scalar, found {other}"))),
    }
}

fn approx_part(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| Error::Json(format!("non-finite number {n}"))),
        Value::String(s) => Ok(rational_to_f64(&parse_rational(s)?)),
        Value::Null => Ok(0.0),
        other => Err(Error::Json(format!("expected a scalar, found {other}"))),
    }
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::parse(text, "expected an integer or p/q rational"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::parse(text, "expected an integer or p/q rational"))?;
    if den.is_zero() {
        return Err(Error::parse(text, "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Renders a rational as `"p/q"` in lowest terms (denominator always shown).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Renders a rational compactly: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational_short(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format_rational(q)
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Ratio of huge integers: fall back on the quotient of the parts.
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn gauss(re: Rational, im: Rational) -> Gaussian {
    Complex::new(re, im)
}

pub fn gauss_int(re: i64, im: i64) -> Gaussian {
    Complex::new(int(re), int(im))
}

/// Multiplicative inverse of a nonzero Gaussian rational.
pub fn gauss_inv(z: &Gaussian) -> Gaussian {
    let n = z.norm_sqr();
    debug_assert!(!n.is_zero(), "inverse of zero");
    Complex::new(&z.re / &n, -(&z.im / &n))
}

/// Converts an exact value into the approximate field.
pub fn to_approx(z: &Gaussian) -> Complex64 {
    z.to_complex64()
}
