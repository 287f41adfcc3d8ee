//! The arithmetic conditions on a pair `F(n, b)`, `F(m, a)` of positively
//! curved definite space forms. Each check returns a record holding both
//! evaluated sides so it can be re-verified independently.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::form::Curvature;
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::expansion::binomial;

/// The coprime `(s, r)` with `s * a = r * b`.
pub fn ratio_reduce(a: &Curvature, b: &Curvature) -> Result<(u64, u64)> {
    if !a.commensurable(b) {
        return Err(Error::Incommensurable(a.unit.clone(), b.unit.clone()));
    }
    if !a.magnitude.is_positive() || !b.magnitude.is_positive() {
        return Err(Error::Domain("curvatures must be positive".into()));
    }
    // s / r = b / a, already in lowest terms
    let ratio = &b.magnitude / &a.magnitude;
    let s = ratio.numer().to_u64();
    let r = ratio.denom().to_u64();
    match (s, r) {
        (Some(s), Some(r)) => Ok((s, r)),
        _ => Err(Error::Domain(format!(
            "curvature ratio {ratio} is too large to reduce"
        ))),
    }
}

/// Both necessary inequalities `r + 1 <= C(s+m, s)` and `s + 1 <= C(r+n, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessaryCheck {
    pub n: u32,
    #[serde(with = "crate::serde_util::rational")]
    pub b: Rational,
    pub m: u32,
    #[serde(with = "crate::serde_util::rational")]
    pub a: Rational,
    pub s: u64,
    pub r: u64,
    #[serde(with = "crate::serde_util::big_uint")]
    pub lhs1: BigUint,
    #[serde(with = "crate::serde_util::big_uint")]
    pub rhs1: BigUint,
    pub pass1: bool,
    #[serde(with = "crate::serde_util::big_uint")]
    pub lhs2: BigUint,
    #[serde(with = "crate::serde_util::big_uint")]
    pub rhs2: BigUint,
    pub pass2: bool,
}

impl NecessaryCheck {
    pub fn passes(&self) -> bool {
        self.pass1 && self.pass2
    }
}

pub fn check_necessary(n: u32, b: &Curvature, m: u32, a: &Curvature) -> Result<NecessaryCheck> {
    let (s, r) = ratio_reduce(a, b)?;
    let lhs1 = BigUint::from(r) + 1u32;
    let rhs1 = binomial(s + u64::from(m), s);
    let lhs2 = BigUint::from(s) + 1u32;
    let rhs2 = binomial(r + u64::from(n), r);
    Ok(NecessaryCheck {
        n,
        b: b.magnitude.clone(),
        m,
        a: a.magnitude.clone(),
        s,
        r,
        pass1: lhs1 <= rhs1,
        pass2: lhs2 <= rhs2,
        lhs1,
        rhs1,
        lhs2,
        rhs2,
    })
}

/// `m + n + 1 > max{C(s+m, s), C(r+n, r)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SufficientCheck {
    pub n: u32,
    #[serde(with = "crate::serde_util::rational")]
    pub b: Rational,
    pub m: u32,
    #[serde(with = "crate::serde_util::rational")]
    pub a: Rational,
    pub s: u64,
    pub r: u64,
    #[serde(with = "crate::serde_util::big_uint")]
    pub binom_source: BigUint,
    #[serde(with = "crate::serde_util::big_uint")]
    pub binom_target: BigUint,
    pub lhs: u64,
    #[serde(with = "crate::serde_util::big_uint")]
    pub rhs: BigUint,
    pub pass: bool,
}

pub fn check_sufficient(n: u32, b: &Curvature, m: u32, a: &Curvature) -> Result<SufficientCheck> {
    let (s, r) = ratio_reduce(a, b)?;
    let binom_source = binomial(s + u64::from(m), s);
    let binom_target = binomial(r + u64::from(n), r);
    let rhs = binom_source.clone().max(binom_target.clone());
    let lhs = u64::from(m) + u64::from(n) + 1;
    Ok(SufficientCheck {
        n,
        b: b.magnitude.clone(),
        m,
        a: a.magnitude.clone(),
        s,
        r,
        binom_source,
        binom_target,
        pass: BigUint::from(lhs) > rhs,
        lhs,
        rhs,
    })
}

/// The plane criterion on integers `1 < p < q`, `gcd(p, q) = 1`,
/// `p (p + 3) < 4 q + 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneCheck {
    pub p: u64,
    pub q: u64,
    pub gcd_ok: bool,
    pub range_ok: bool,
    #[serde(with = "crate::serde_util::big_uint")]
    pub lhs: BigUint,
    #[serde(with = "crate::serde_util::big_uint")]
    pub rhs: BigUint,
    pub ineq_ok: bool,
    pub applies: bool,
}

pub fn check_plane(p: u64, q: u64) -> PlaneCheck {
    let gcd_ok = p.gcd(&q) == 1;
    let range_ok = 1 < p && p < q;
    let lhs = BigUint::from(p) * (BigUint::from(p) + 3u32);
    let rhs = BigUint::from(q) * 4u32 + 2u32;
    let ineq_ok = lhs < rhs;
    PlaneCheck {
        p,
        q,
        gcd_ok,
        range_ok,
        lhs,
        rhs,
        ineq_ok,
        applies: gcd_ok && range_ok && ineq_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    fn c(q: Rational) -> Curvature {
        Curvature::new(q)
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(ratio_reduce(&c(int(1)), &c(rat(3, 2))).unwrap(), (3, 2));
        assert_eq!(ratio_reduce(&c(int(2)), &c(int(1))).unwrap(), (1, 2));
        assert_eq!(ratio_reduce(&c(rat(7, 5)), &c(rat(7, 5))).unwrap(), (1, 1));
        let err = ratio_reduce(&c(int(1)), &Curvature::with_unit(int(1), "pi")).unwrap_err();
        assert!(matches!(err, Error::Incommensurable(..)));
    }

    #[test]
    fn necessary_examples() {
        let k = check_necessary(2, &c(rat(3, 2)), 2, &c(int(1))).unwrap();
        assert_eq!((k.s, k.r), (3, 2));
        assert_eq!(
            (k.lhs1.clone(), k.rhs1.clone(), k.pass1),
            (big(3), big(10), true)
        );
        assert_eq!(
            (k.lhs2.clone(), k.rhs2.clone(), k.pass2),
            (big(4), big(6), true)
        );

        let k = check_necessary(1, &c(int(1)), 1, &c(int(1))).unwrap();
        assert_eq!((k.s, k.r), (1, 1));
        assert_eq!(
            (k.lhs1, k.rhs1, k.lhs2, k.rhs2),
            (big(2), big(2), big(2), big(2))
        );
        assert!(k.pass1 && k.pass2);

        let k = check_necessary(1, &c(int(3)), 1, &c(int(1))).unwrap();
        assert_eq!((k.s, k.r), (3, 1));
        assert_eq!((k.lhs1, k.rhs1, k.pass1), (big(2), big(4), true));
        assert_eq!((k.lhs2, k.rhs2, k.pass2), (big(4), big(2), false));
    }

    #[test]
    fn sufficient_examples() {
        let k = check_sufficient(3, &c(int(1)), 8, &c(int(2))).unwrap();
        assert_eq!(
            (k.s, k.r, k.lhs, k.rhs.clone(), k.pass),
            (1, 2, 12, big(10), true)
        );
        assert_eq!((k.binom_source, k.binom_target), (big(9), big(10)));

        let k = check_sufficient(2, &c(int(2)), 2, &c(int(1))).unwrap();
        assert_eq!((k.s, k.r, k.lhs, k.rhs, k.pass), (2, 1, 5, big(6), false));

        let k = check_sufficient(1, &c(int(1)), 1, &c(int(1))).unwrap();
        assert_eq!((k.s, k.r, k.lhs, k.rhs, k.pass), (1, 1, 3, big(2), true));
    }

    #[test]
    fn plane_examples() {
        let k = check_plane(2, 3);
        assert_eq!((k.lhs.clone(), k.rhs.clone()), (big(10), big(14)));
        assert!(k.applies);
        let k = check_plane(1, 3);
        assert!(!k.range_ok && !k.applies);
        let k = check_plane(3, 4);
        assert_eq!((k.lhs.clone(), k.rhs.clone()), (big(18), big(18)));
        assert!(!k.ineq_ok && !k.applies);
        assert!(!check_plane(2, 4).gcd_ok);
    }
}
