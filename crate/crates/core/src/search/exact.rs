use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::problem::{Candidate, SearchProblem};
use crate::algebra::scalar::Coeff;
use crate::algebra::{norm_square_system_in, Gaussian, HermitianSeries, MultiIndex, Rational};
use crate::error::Result;

/// Both sides `(1 + a |H|^2)^s` and `(1 + b |K|^2)^r` as Hermitian series in
/// one variable, truncated at the problem's cap.
pub fn identity_sides<C: Coeff>(
    c: &Candidate<C>,
    p: &SearchProblem,
) -> Result<(HermitianSeries<C>, HermitianSeries<C>)> {
    c.validate(p)?;
    let one = Rational::from_integer(1.into());
    let side = |sys, curvature: &Rational, exponent: u64| -> Result<HermitianSeries<C>> {
        norm_square_system_in(sys, 1, p.degree)?
            .with_max_degree(p.cap)
            .scale(curvature)
            .add_constant(&one)
            .pow(exponent as u32)
    };
    Ok((side(&c.h, &p.a(), p.s)?, side(&c.k, &p.b(), p.r)?))
}

/// Sum of squared magnitudes of all bicoefficient differences of the two sides.
pub fn residual<C: Coeff>(c: &Candidate<C>, p: &SearchProblem) -> Result<C::Real> {
    let (lhs, rhs) = identity_sides(c, p)?;
    lhs.distance_sqr(&rhs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    pub lhs: Gaussian,
    pub rhs: Gaussian,
}

impl Serialize for Mismatch {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let part = |z: &Gaussian| {
            let (re, im) = z.to_json_parts();
            serde_json::json!({"re": re, "im": im})
        };
        let mut st = s.serialize_struct("Mismatch", 4)?;
        st.serialize_field("alpha", &self.alpha)?;
        st.serialize_field("beta", &self.beta)?;
        st.serialize_field("lhs", &part(&self.lhs))?;
        st.serialize_field("rhs", &part(&self.rhs))?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessCheck {
    pub ok: bool,
    pub first_mismatch: Option<Mismatch>,
    #[serde(with = "crate::serde_util::rational")]
    pub residual: Rational,
}

/// Exact check of the curve identity; on failure reports the first
/// mismatching bicoefficient in graded-lex order.
pub fn verify_witness_exact(c: &Candidate<Gaussian>, p: &SearchProblem) -> Result<WitnessCheck> {
    let (lhs, rhs) = identity_sides(c, p)?;
    let residual = lhs.distance_sqr(&rhs)?;
    let diff = lhs.sub(&rhs)?;
    let first_mismatch = diff.entries().next().map(|(a, b, _)| Mismatch {
        alpha: a.clone(),
        beta: b.clone(),
        lhs: lhs.entry(a, b),
        rhs: rhs.entry(a, b),
    });
    Ok(WitnessCheck {
        ok: first_mismatch.is_none(),
        first_mismatch,
        residual,
    })
}
