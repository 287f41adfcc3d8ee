use num_complex::Complex64;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::scalar::Coeff;
use crate::algebra::{Gaussian, Rational, SignedGermSystem};
use crate::decider::form::SpaceForm;
use crate::decider::ratio_reduce;
use crate::error::{Error, Result};

/// Largest exponent accepted for either side of the identity.
pub const MAX_EXPONENT: u64 = 64;

/// The curve identity `(1 + a sum |h_i|^2)^s = (1 + b sum |k_j|^2)^r` for
/// `host1 = F(n, b)` (curves `k`) and `host2 = F(m, a)` (curves `h`), with
/// coprime `s a = r b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchProblem {
    pub form1: SpaceForm,
    pub form2: SpaceForm,
    pub s: u64,
    pub r: u64,
    pub degree: u32,
    pub cap: u32,
}

impl SearchProblem {
    /// Builds the problem with the default cap `2 * degree * max(s, r)`.
    pub fn new(form1: SpaceForm, form2: SpaceForm, degree: u32) -> Result<Self> {
        for f in [&form1, &form2] {
            f.validate()?;
            if f.is_flat() || !f.is_definite() {
                return Err(Error::Domain(format!(
                    "{f} is not a definite curved space form F(n, b)"
                )));
            }
        }
        let b = form1.signed_curvature().expect("curved");
        let a = form2.signed_curvature().expect("curved");
        if a.is_positive() != b.is_positive() {
            return Err(Error::Domain(
                "curvatures of opposite sign admit no common curve".into(),
            ));
        }
        if degree == 0 {
            return Err(Error::Domain("curve degree must be positive".into()));
        }
        let (s, r) = ratio_reduce(
            form2.curvature.as_ref().expect("curved"),
            form1.curvature.as_ref().expect("curved"),
        )?;
        if s > MAX_EXPONENT || r > MAX_EXPONENT {
            return Err(Error::Domain(format!(
                "exponents (s, r) = ({s}, {r}) exceed {MAX_EXPONENT}"
            )));
        }
        let cap = 2 * degree * s.max(r) as u32;
        Ok(SearchProblem {
            form1,
            form2,
            s,
            r,
            degree,
            cap,
        })
    }

    pub fn with_cap(mut self, cap: u32) -> Result<Self> {
        if cap == 0 {
            return Err(Error::Domain("cap must be positive".into()));
        }
        self.cap = cap;
        Ok(self)
    }

    /// Dimension of `form1`, i.e. the number of `k` curves.
    pub fn n(&self) -> usize {
        self.form1.dim as usize
    }

    /// Dimension of `form2`, i.e. the number of `h` curves.
    pub fn m(&self) -> usize {
        self.form2.dim as usize
    }

    /// Signed curvature of `form1`.
    pub fn b(&self) -> Rational {
        self.form1.signed_curvature().expect("validated")
    }

    /// Signed curvature of `form2`.
    pub fn a(&self) -> Rational {
        self.form2.signed_curvature().expect("validated")
    }

    /// Per-index degree beyond which both sides vanish identically.
    pub fn effective_cap(&self) -> u32 {
        self.cap.min(self.degree * self.s.max(self.r) as u32)
    }
}

/// A pair of curve families: `h` (in `form2`) and `k` (in `form1`). Weights
/// are squared magnitudes, so `w |g|^2` stands for the curve `sqrt(w) g`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Coeff", deserialize = "C: Coeff"))]
pub struct Candidate<C> {
    pub h: SignedGermSystem<C>,
    pub k: SignedGermSystem<C>,
}

impl<C: Coeff> Candidate<C> {
    pub fn validate(&self, p: &SearchProblem) -> Result<()> {
        if self.h.len() != p.m() || self.k.len() != p.n() {
            return Err(Error::DimensionMismatch(format!(
                "candidate has {} h-curves and {} k-curves, problem needs {} and {}",
                self.h.len(),
                self.k.len(),
                p.m(),
                p.n()
            )));
        }
        for sys in [&self.h, &self.k] {
            sys.validate()?;
            if let Some(w) = sys.weights.iter().find(|w| !w.is_positive()) {
                return Err(Error::Domain(format!("curve weight {w} is not positive")));
            }
            for g in &sys.germs {
                if g.num_vars() != 1 || g.max_degree() != p.degree {
                    return Err(Error::DimensionMismatch(format!(
                        "curves must be univariate of degree {}, found ({}, {})",
                        p.degree,
                        g.num_vars(),
                        g.max_degree()
                    )));
                }
                if !g.base_point_value().is_zero() {
                    return Err(Error::Domain("curves must vanish at the origin".into()));
                }
            }
        }
        Ok(())
    }

    /// Whether some `h` curve has a nonzero linear coefficient, which rules
    /// out the constant solution.
    pub fn is_immersive(&self) -> bool {
        let z = crate::algebra::MultiIndex::new(vec![1]);
        self.h.germs.iter().any(|g| !g.coeff(&z).is_zero())
    }
}

impl Candidate<Gaussian> {
    pub fn to_approx(&self) -> Candidate<Complex64> {
        let conv = |s: &SignedGermSystem<Gaussian>| SignedGermSystem {
            weights: s.weights.clone(),
            germs: s.germs.iter().map(|g| g.to_approx()).collect(),
        };
        Candidate {
            h: conv(&self.h),
            k: conv(&self.k),
        }
    }

    /// Parses an exact candidate, rejecting floating-point coefficients with a
    /// mode error.
    pub fn from_json_exact(v: &Value) -> Result<Self> {
        if let Some(bad) = find_float(v) {
            return Err(Error::Mode(format!(
                "approximate coefficient {bad}; exact verification needs \"p/q\" strings"
            )));
        }
        Ok(serde_json::from_value(v.clone())?)
    }
}

fn find_float(v: &Value) -> Option<Value> {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => Some(v.clone()),
        Value::Array(xs) => xs.iter().find_map(find_float),
        Value::Object(map) => map.values().find_map(find_float),
        _ => None,
    }
}

pub(crate) fn unit_weights(len: usize) -> Vec<Rational> {
    vec![Rational::one(); len]
}
