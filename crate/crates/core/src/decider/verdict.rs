use serde::Serialize;

use super::checks::{
    check_necessary, check_plane, check_sufficient, NecessaryCheck, PlaneCheck, SufficientCheck,
};
use super::form::{Curvature, SpaceForm};
use crate::algebra::{Gaussian, Rational};
use crate::error::Result;
use crate::expansion::RemarkWitness;
use crate::search::{verify_witness_exact, Candidate, SearchProblem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Relatives,
    NotRelatives,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    R0,
    #[serde(rename = "R0'")]
    R0Prime,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    #[serde(rename = "none")]
    Undecided,
}

impl Rule {
    pub fn as_str(&self) -> &'static str {
        match self {
            Rule::R0 => "R0",
            Rule::R0Prime => "R0'",
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
            Rule::R6 => "R6",
            Rule::Undecided => "none",
        }
    }
}

/// Which of the two forms carries the weighted monomial curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessSide {
    Form1,
    Form2,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A flat form and a curved form never share a Kähler submanifold.
    FlatVersusCurved {
        flat: SpaceForm,
        curved: SpaceForm,
    },
    /// Both flat with a positive direction: the line `z -> (z, 0, ..., 0)`
    /// sits isometrically in both.
    CommonLine {
        form1: SpaceForm,
        form2: SpaceForm,
        witness: String,
        note: String,
    },
    OppositeSigns {
        #[serde(with = "crate::serde_util::rational")]
        curvature1: Rational,
        #[serde(with = "crate::serde_util::rational")]
        curvature2: Rational,
    },
    Incommensurable {
        unit1: String,
        unit2: String,
    },
    NecessaryViolated {
        check: NecessaryCheck,
    },
    IntegerRatioWitness {
        ratio: u32,
        side: WitnessSide,
        remark: RemarkWitness,
        problem: SearchProblem,
        candidate: Candidate<Gaussian>,
        verified: bool,
    },
    Sufficient {
        check: SufficientCheck,
        #[serde(with = "crate::serde_util::rational")]
        kappa: Rational,
    },
    Plane {
        check: PlaneCheck,
        necessary: NecessaryCheck,
        scale_normalization: String,
    },
    Open {
        passed: Vec<String>,
        necessary: Option<NecessaryCheck>,
        sufficient: Option<SufficientCheck>,
        plane: Option<PlaneCheck>,
        note: String,
    },
}

fn plain(q: &Rational) -> Curvature {
    Curvature::new(q.clone())
}

impl Certificate {
    /// Re-evaluates every claim recorded in the certificate from its own
    /// data. Returns `Ok(false)` when some recorded value or truth value
    /// does not reproduce.
    pub fn recheck(&self) -> Result<bool> {
        Ok(match self {
            Certificate::FlatVersusCurved { flat, curved } => flat.is_flat() && !curved.is_flat(),
            Certificate::CommonLine { form1, form2, .. } => [form1, form2]
                .iter()
                .all(|f| f.is_flat() && f.positive_directions() >= 1),
            Certificate::OppositeSigns {
                curvature1,
                curvature2,
            } => (curvature1 * curvature2) < Rational::from_integer(0.into()),
            Certificate::Incommensurable { unit1, unit2 } => unit1 != unit2,
            Certificate::NecessaryViolated { check } => {
                let again = check_necessary(check.n, &plain(&check.b), check.m, &plain(&check.a))?;
                &again == check && !again.passes()
            }
            Certificate::IntegerRatioWitness {
                remark,
                problem,
                candidate,
                verified,
                ..
            } => {
                let again = verify_witness_exact(candidate, problem)?;
                *verified && again.ok && remark.identity_holds()
            }
            Certificate::Sufficient { check, kappa } => {
                let again = check_sufficient(check.n, &plain(&check.b), check.m, &plain(&check.a))?;
                let s = Rational::from_integer(check.s.into());
                &again == check && again.pass && *kappa == s * &check.a
            }
            Certificate::Plane {
                check, necessary, ..
            } => {
                let again = check_necessary(
                    necessary.n,
                    &plain(&necessary.b),
                    necessary.m,
                    &plain(&necessary.a),
                )?;
                check_plane(check.p, check.q) == *check && check.applies && again == *necessary
            }
            Certificate::Open {
                necessary,
                sufficient,
                plane,
                ..
            } => {
                let nec_ok = match necessary {
                    Some(c) => {
                        let again = check_necessary(c.n, &plain(&c.b), c.m, &plain(&c.a))?;
                        again == *c && again.passes()
                    }
                    None => true,
                };
                let suf_ok = match sufficient {
                    Some(c) => {
                        let again = check_sufficient(c.n, &plain(&c.b), c.m, &plain(&c.a))?;
                        again == *c && !again.pass
                    }
                    None => true,
                };
                let plane_ok = plane
                    .as_ref()
                    .is_none_or(|c| check_plane(c.p, c.q) == *c && !c.applies);
                nec_ok && suf_ok && plane_ok
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub rule: Rule,
    pub certificate: Certificate,
}
