//! Rule-based decision of whether two space forms are relatives, i.e. share
//! a common Kähler submanifold, each verdict carrying a certificate.

pub mod checks;
pub mod form;
pub mod verdict;

use num_integer::Integer;
use num_traits::{One, Signed};

pub use checks::{
    check_necessary, check_plane, check_sufficient, ratio_reduce, NecessaryCheck, PlaneCheck,
    SufficientCheck,
};
pub use form::{parse_form, Curvature, FormKind, SpaceForm, DEFAULT_UNIT};
pub use verdict::{Certificate, Rule, Status, Verdict, WitnessSide};

use crate::algebra::{Gaussian, MultiIndex, Rational, SignedGermSystem, TruncatedGerm};
use crate::error::{Error, Result};
use crate::expansion::remark_witness;
use crate::search::problem::MAX_EXPONENT;
use crate::search::{verify_witness_exact, Candidate, SearchProblem};

type RuleFn = fn(&SpaceForm, &SpaceForm) -> Result<Option<Verdict>>;

const RULES: [(Rule, RuleFn); 8] = [
    (Rule::R0, rule_flat_versus_curved),
    (Rule::R0Prime, rule_common_line),
    (Rule::R1, rule_opposite_signs),
    (Rule::R2, rule_incommensurable),
    (Rule::R3, rule_necessary),
    (Rule::R5, rule_sufficient),
    (Rule::R4, rule_integer_ratio),
    (Rule::R6, rule_plane),
];

fn verdict(status: Status, rule: Rule, certificate: Certificate) -> Option<Verdict> {
    Some(Verdict {
        status,
        rule,
        certificate,
    })
}

fn rule_flat_versus_curved(f1: &SpaceForm, f2: &SpaceForm) -> Result<Option<Verdict>> {
    let (flat, curved) = match (f1.is_flat(), f2.is_flat()) {
        (true, false) => (f1, f2),
        (false, true) => (f2, f1),
        _ => return Ok(None),
    };
    Ok(verdict(
        Status::NotRelatives,
        Rule::R0,
        Certificate::FlatVersusCurved {
            flat: flat.clone(),
            curved: curved.clone(),
        },
    ))
}

fn rule_common_line(f1: &SpaceForm, f2: &SpaceForm) -> Result<Option<Verdict>> {
    let ok = |f: &SpaceForm| f.is_flat() && f.positive_directions() >= 1;
    if !(ok(f1) && ok(f2)) {
        return Ok(None);
    }
    Ok(verdict(
        Status::Relatives,
        Rule::R0Prime,
        Certificate::CommonLine {
            form1: f1.clone(),
            form2: f2.clone(),
            witness: "z -> (z, 0, ..., 0)".into(),
            note: "first coordinate taken along a positive direction".into(),
        },
    ))
}

/// Both forms definite and curved.
fn definite_curved(f1: &SpaceForm, f2: &SpaceForm) -> bool {
    [f1, f2].iter().all(|f| !f.is_flat() && f.is_definite())
}

fn rule_opposite_signs(f1: &SpaceForm, f2: &SpaceForm) -> Result<Option<Verdict>> {
    if !definite_curved(f1, f2) {
        return Ok(None);
    }
    let (c1, c2) = (
        f1.signed_curvature().unwrap(),
        f2.signed_curvature().unwrap(),
    );
    if c1.is_positive() == c2.is_positive() {
        return Ok(None);
    }
    Ok(verdict(
        Status::NotRelatives,
        Rule::R1,
        Certificate::OppositeSigns {
            curvature1: c1,
            curvature2: c2,
        },
    ))
}

fn rule_incommensurable(f1: &SpaceForm, f2: &SpaceForm) -> Result<Option<Verdict>> {
    if !definite_curved(f1, f2) {
        return Ok(None);
    }
    let (c1, c2) = (
        f1.curvature.as_ref().unwrap(),
        f2.curvature.as_ref().unwrap(),
    );
    if c1.commensurable(c2) || f1.kind != f2.kind {
        return Ok(None);
    }
    Ok(verdict(
        Status::NotRelatives,
        Rule::R2,
        Certificate::Incommensurable {
            unit1: c1.unit.clone(),
            unit2: c2.unit.clone(),
        },
    ))
}

/// `(n, b, m, a)` for two commensurable positively curved definite forms.
fn positive_pair(f1: &SpaceForm, f2: &SpaceForm) -> Option<(u32, Curvature, u32, Curvature)> {
    if !definite_curved(f1, f2)
        || f1.kind != FormKind::Projective
        || f2.kind != FormKind::Projective
    {
        return None;
    }
    let (b, a) = (f1.curvature.clone()?, f2.curvature.clone()?);
    if !b.commensurable(&a) {
        return None;
    }
    Some((f1.dim, b, f2.dim, a))
}

fn rule_necessary(f1: &SpaceForm, f2: &SpaceForm) -> Result<Option<Verdict>> {
    let Some((n, b, m, a)) = positive_pair(f1, f2) else {
        return Ok(None);
    };
    let check = check_necessary(n, &b, m, &a)?;
    if check.passes() {
        return Ok(None);
    }
    Ok(verdict(
        Status::NotRelatives,
        Rule::R3,
        Certificate::NecessaryViolated { check },
    ))
}

/// Integer `t = num / den` if it is one.
fn integer_ratio(num: &Rational, den: &Rational) -> Option<u64> {
    let t = num / den;
    if t.is_integer() {
        num_traits::ToPrimitive::to_u64(t.numer())
    } else {
        None
    }
}

fn line_germs(count: usize, degree: u32) -> Result<Vec<TruncatedGerm<Gaussian>>> {
    let z = Gaussian::new(Rational::one(), Rational::from_integer(0.into()));
    (0..count)
        .map(|_| TruncatedGerm::monomial(1, degree, MultiIndex::new(vec![1]), z.clone()))
        .collect()
}

/// `z^j` with weight `w_j` for `j = 1..=q`, then zero curves up to `dim`.
fn monomial_family(
    weights: &[Rational],
    dim: usize,
    degree: u32,
) -> Result<SignedGermSystem<Gaussian>> {
    let one = Gaussian::new(Rational::one(), Rational::from_integer(0.into()));
    let mut germs = Vec::with_capacity(dim);
    let mut ws = Vec::with_capacity(dim);
    for (j, w) in weights.iter().enumerate() {
        germs.push(TruncatedGerm::monomial(
            1,
            degree,
            MultiIndex::new(vec![j as u32 + 1]),
            one.clone(),
        )?);
        ws.push(w.clone());
    }
    for _ in weights.len()..dim {
        germs.push(TruncatedGerm::zero(1, degree)?);
        ws.push(Rational::one());
    }
    SignedGermSystem::new(ws, germs)
}

fn rule_integer_ratio(f1: &SpaceForm, f2: &SpaceForm) -> Result<Option<Verdict>> {
    let Some((n, b, m, a)) = positive_pair(f1, f2) else {
        return Ok(None);
    };
    let side = match (
        integer_ratio(&b.magnitude, &a.magnitude),
        integer_ratio(&a.magnitude, &b.magnitude),
    ) {
        (Some(q), _) if q <= u64::from(n) && q <= MAX_EXPONENT => (WitnessSide::Form1, q as u32),
        (_, Some(p)) if p <= u64::from(m) && p <= MAX_EXPONENT => (WitnessSide::Form2, p as u32),
        _ => return Ok(None),
    };
    let (side, q) = side;
    let problem = SearchProblem::new(f1.clone(), f2.clone(), q)?;
    let problem = problem.clone().with_cap(problem.effective_cap())?;
    let (remark, candidate) = match side {
        // b = q a: the monomial curve lives in F(n, b), the diagonal line in F(m, a)
        WitnessSide::Form1 => {
            let remark = remark_witness(q, &a.magnitude, m)?;
            let h = SignedGermSystem::new(
                vec![Rational::one(); m as usize],
                line_germs(m as usize, q)?,
            )?;
            let k = monomial_family(&remark.host_weights, n as usize, q)?;
            (remark, Candidate { h, k })
        }
        WitnessSide::Form2 => {
            let remark = remark_witness(q, &b.magnitude, n)?;
            let h = monomial_family(&remark.host_weights, m as usize, q)?;
            let k = SignedGermSystem::new(
                vec![Rational::one(); n as usize],
                line_germs(n as usize, q)?,
            )?;
            (remark, Candidate { h, k })
        }
    };
    let check = verify_witness_exact(&candidate, &problem)?;
    if !check.ok || !remark.identity_holds() {
        return Err(Error::Consistency(format!(
            "integer-ratio witness for {f1} and {f2} failed exact verification"
        )));
    }
    Ok(verdict(
        Status::Relatives,
        Rule::R4,
        Certificate::IntegerRatioWitness {
            ratio: q,
            side,
            remark,
            problem,
            candidate,
            verified: true,
        },
    ))
}

fn rule_sufficient(f1: &SpaceForm, f2: &SpaceForm) -> Result<Option<Verdict>> {
    let Some((n, b, m, a)) = positive_pair(f1, f2) else {
        return Ok(None);
    };
    let check = check_sufficient(n, &b, m, &a)?;
    if !check.pass {
        return Ok(None);
    }
    let kappa = Rational::from_integer(check.s.into()) * &a.magnitude;
    Ok(verdict(
        Status::Relatives,
        Rule::R5,
        Certificate::Sufficient { check, kappa },
    ))
}

fn rule_plane(f1: &SpaceForm, f2: &SpaceForm) -> Result<Option<Verdict>> {
    let Some((n, b, m, a)) = positive_pair(f1, f2) else {
        return Ok(None);
    };
    if n != 2 || m != 2 {
        return Ok(None);
    }
    let necessary = check_necessary(n, &b, m, &a)?;
    let (p, q) = if necessary.s <= necessary.r {
        (necessary.s, necessary.r)
    } else {
        (necessary.r, necessary.s)
    };
    debug_assert_eq!(p.gcd(&q), 1);
    let check = check_plane(p, q);
    if !check.applies {
        return Ok(None);
    }
    Ok(verdict(
        Status::NotRelatives,
        Rule::R6,
        Certificate::Plane {
            check,
            necessary,
            scale_normalization: format!(
                "curvatures rescaled by a common factor to {p} and {q}; the relation is scale invariant"
            ),
        },
    ))
}

fn undecided(f1: &SpaceForm, f2: &SpaceForm) -> Result<Verdict> {
    let mut passed = Vec::new();
    let (mut necessary, mut sufficient, mut plane) = (None, None, None);
    let note;
    if let Some((n, b, m, a)) = positive_pair(f1, f2) {
        passed.push("necessary inequalities hold".to_string());
        let nec = check_necessary(n, &b, m, &a)?;
        if n == 2 && m == 2 {
            plane = Some(check_plane(nec.s.min(nec.r), nec.s.max(nec.r)));
            passed.push("plane criterion does not apply".to_string());
        }
        necessary = Some(nec);
        sufficient = Some(check_sufficient(n, &b, m, &a)?);
        passed.push("no integer curvature ratio within dimension".to_string());
        note = "sufficient inequality fails; no rule decides this pair".to_string();
    } else if definite_curved(f1, f2) {
        passed.push("curvatures have the same sign".to_string());
        passed.push("curvatures are commensurable".to_string());
        note = "negatively curved pairs are outside the arithmetic rules".to_string();
    } else if f1.is_flat() && f2.is_flat() {
        note = "a flat form without positive directions carries no Kähler curve".to_string();
    } else {
        note = "indefinite curved forms are outside the rules".to_string();
    }
    Ok(Verdict {
        status: Status::Unknown,
        rule: Rule::Undecided,
        certificate: Certificate::Open {
            passed,
            necessary,
            sufficient,
            plane,
            note,
        },
    })
}

/// Every rule that fires on the pair, in rule order.
pub fn applicable_rules(f1: &SpaceForm, f2: &SpaceForm) -> Result<Vec<Verdict>> {
    f1.validate()?;
    f2.validate()?;
    let mut out = Vec::new();
    for (_, rule) in RULES {
        if let Some(v) = rule(f1, f2)? {
            out.push(v);
        }
    }
    Ok(out)
}

/// Decides the pair by the first applicable rule. The arithmetic
/// sufficiency rule is tried before the witness construction. All rules are evaluated;
/// two rules reaching opposite conclusions is reported as
/// [`Error::Consistency`].
pub fn decide_relatives(f1: &SpaceForm, f2: &SpaceForm) -> Result<Verdict> {
    let fired = applicable_rules(f1, f2)?;
    let yes = fired.iter().find(|v| v.status == Status::Relatives);
    let no = fired.iter().find(|v| v.status == Status::NotRelatives);
    if let (Some(y), Some(n)) = (yes, no) {
        return Err(Error::Consistency(format!(
            "rule {} says relatives but rule {} says not, for {f1} and {f2}",
            y.rule.as_str(),
            n.rule.as_str()
        )));
    }
    match fired.into_iter().next() {
        Some(v) => Ok(v),
        None => undecided(f1, f2),
    }
}
