use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::scalar::{format_rational_short, parse_rational};
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Unit tag carried by curvatures that are given as plain rationals.
pub const DEFAULT_UNIT: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Flat,
    Projective,
    Hyperbolic,
}

/// A positive curvature magnitude `magnitude * unit`. Two curvatures have a
/// rational ratio exactly when their unit tags agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curvature {
    pub magnitude: Rational,
    pub unit: String,
}

impl Curvature {
    pub fn new(magnitude: Rational) -> Self {
        Curvature {
            magnitude,
            unit: DEFAULT_UNIT.to_string(),
        }
    }

    pub fn with_unit(magnitude: Rational, unit: impl Into<String>) -> Self {
        Curvature {
            magnitude,
            unit: unit.into(),
        }
    }

    pub fn commensurable(&self, other: &Curvature) -> bool {
        self.unit == other.unit
    }

    pub fn scaled(&self, t: &Rational) -> Curvature {
        Curvature {
            magnitude: &self.magnitude * t,
            unit: self.unit.clone(),
        }
    }
}

/// `C^{N,s}`, `CP^N_s(b)` or `CH^N_s(b)`; the definite Fubini-Study space
/// `F(n, b)` is the case `s = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceForm {
    pub kind: FormKind,
    pub dim: u32,
    pub sig_index: u32,
    pub curvature: Option<Curvature>,
}

impl SpaceForm {
    pub fn flat(dim: u32, sig_index: u32) -> Result<Self> {
        SpaceForm {
            kind: FormKind::Flat,
            dim,
            sig_index,
            curvature: None,
        }
        .validated()
    }

    pub fn projective(dim: u32, sig_index: u32, curvature: Curvature) -> Result<Self> {
        SpaceForm {
            kind: FormKind::Projective,
            dim,
            sig_index,
            curvature: Some(curvature),
        }
        .validated()
    }

    pub fn hyperbolic(dim: u32, sig_index: u32, curvature: Curvature) -> Result<Self> {
        SpaceForm {
            kind: FormKind::Hyperbolic,
            dim,
            sig_index,
            curvature: Some(curvature),
        }
        .validated()
    }

    /// `F(n, b)`: projective for `b > 0`, hyperbolic for `b < 0`.
    pub fn fubini_study(n: u32, b: Rational) -> Result<Self> {
        Self::fubini_study_with_unit(n, b, DEFAULT_UNIT)
    }

    pub fn fubini_study_with_unit(n: u32, b: Rational, unit: &str) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::Validation(
                "F(n, b) needs nonzero curvature; use CE(N, 0) for flat space".into(),
            ));
        }
        let c = Curvature::with_unit(b.abs(), unit);
        if b.is_positive() {
            Self::projective(n, 0, c)
        } else {
            Self::hyperbolic(n, 0, c)
        }
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Validation("dimension must be positive".into()));
        }
        if self.sig_index > self.dim {
            return Err(Error::Validation(format!(
                "sig_index {} exceeds dimension {}",
                self.sig_index, self.dim
            )));
        }
        match (&self.kind, &self.curvature) {
            (FormKind::Flat, None) => Ok(()),
            (FormKind::Flat, Some(_)) => {
                Err(Error::Validation("flat space carries no curvature".into()))
            }
            (_, None) => Err(Error::Validation("curved space needs a curvature".into())),
            (_, Some(c)) if !c.magnitude.is_positive() => Err(Error::Validation(format!(
                "curvature magnitude {} must be positive",
                c.magnitude
            ))),
            (_, Some(c)) if !valid_unit(&c.unit) => Err(Error::Validation(format!(
                "invalid curvature unit `{}`",
                c.unit
            ))),
            _ => Ok(()),
        }
    }

    pub fn is_flat(&self) -> bool {
        self.kind == FormKind::Flat
    }

    pub fn is_definite(&self) -> bool {
        self.sig_index == 0
    }

    /// Number of positive metric directions.
    pub fn positive_directions(&self) -> u32 {
        self.dim - self.sig_index
    }

    /// Curvature with its sign (positive for projective, negative for hyperbolic).
    pub fn signed_curvature(&self) -> Option<Rational> {
        let c = self.curvature.as_ref()?;
        Some(match self.kind {
            FormKind::Hyperbolic => -c.magnitude.clone(),
            _ => c.magnitude.clone(),
        })
    }

    /// Same form with the curvature magnitude multiplied by `t > 0`.
    pub fn scaled(&self, t: &Rational) -> SpaceForm {
        SpaceForm {
            curvature: self.curvature.as_ref().map(|c| c.scaled(t)),
            ..self.clone()
        }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn valid_unit(u: &str) -> bool {
    !u.is_empty()
        && u.chars()
            .all(|ch| !ch.is_whitespace() && ch != ',' && ch != '(' && ch != ')')
}

impl fmt::Display for SpaceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = |c: &Curvature| {
            if c.unit == DEFAULT_UNIT {
                String::new()
            } else {
                format!(", {}", c.unit)
            }
        };
        match (&self.kind, &self.curvature) {
            (FormKind::Flat, _) => write!(f, "CE({}, {})", self.dim, self.sig_index),
            (kind, Some(c)) if self.sig_index == 0 => {
                let sign = if *kind == FormKind::Hyperbolic {
                    "-"
                } else {
                    ""
                };
                write!(
                    f,
                    "FS({}, {sign}{}{})",
                    self.dim,
                    format_rational_short(&c.magnitude),
                    unit(c)
                )
            }
            (kind, Some(c)) => {
                let tag = if *kind == FormKind::Hyperbolic {
                    "CH"
                } else {
                    "CP"
                };
                write!(
                    f,
                    "{tag}({}, {}, {}{})",
                    self.dim,
                    self.sig_index,
                    format_rational_short(&c.magnitude),
                    unit(c)
                )
            }
            (_, None) => write!(f, "<invalid>"),
        }
    }
}

fn parse_count(token: &str, what: &str) -> Result<u32> {
    token.trim().parse().map_err(|_| {
        Error::parse(
            token.trim(),
            format!("expected a non-negative integer {what}"),
        )
    })
}

/// Parses `FS(n, p/q[, unit])`, `CE(N, s)`, `CP(N, s, p/q[, unit])` or
/// `CH(N, s, p/q[, unit])`.
pub fn parse_form(text: &str) -> Result<SpaceForm> {
    let t = text.trim();
    let open = t
        .find('(')
        .ok_or_else(|| Error::parse(t, "expected NAME(arguments)"))?;
    let name = t[..open].trim();
    let rest = &t[open + 1..];
    let body = rest
        .strip_suffix(')')
        .ok_or_else(|| Error::parse(t, "missing closing parenthesis"))?;
    if body.contains('(') || body.contains(')') {
        return Err(Error::parse(body, "nested parentheses"));
    }
    let args: Vec<&str> = body.split(',').map(str::trim).collect();
    let arity = |lo: usize, hi: usize| -> Result<()> {
        if args.len() < lo || args.len() > hi {
            Err(Error::parse(
                t,
                format!("{name} takes {lo} to {hi} arguments, got {}", args.len()),
            ))
        } else {
            Ok(())
        }
    };
    let unit_arg = |i: usize| -> Result<&str> {
        match args.get(i) {
            None => Ok(DEFAULT_UNIT),
            Some(u) if valid_unit(u) => Ok(u),
            Some(u) => Err(Error::parse(*u, "invalid curvature unit")),
        }
    };
    let with_token = |e: Error, token: &str| match e {
        Error::Validation(reason) => Error::parse(token, reason),
        other => other,
    };
    match name {
        "FS" => {
            arity(2, 3)?;
            let n = parse_count(args[0], "dimension")?;
            let b = parse_rational(args[1])?;
            SpaceForm::fubini_study_with_unit(n, b, unit_arg(2)?)
                .map_err(|e| with_token(e, args[0]))
        }
        "CE" => {
            arity(2, 2)?;
            let n = parse_count(args[0], "dimension")?;
            let s = parse_count(args[1], "signature index")?;
            SpaceForm::flat(n, s).map_err(|e| with_token(e, args[1]))
        }
        "CP" | "CH" => {
            arity(3, 4)?;
            let n = parse_count(args[0], "dimension")?;
            let s = parse_count(args[1], "signature index")?;
            let mag = parse_rational(args[2])?;
            if !mag.is_positive() {
                return Err(Error::parse(
                    args[2],
                    "curvature magnitude must be positive",
                ));
            }
            let c = Curvature::with_unit(mag, unit_arg(3)?);
            let form = if name == "CP" {
                SpaceForm::projective(n, s, c)
            } else {
                SpaceForm::hyperbolic(n, s, c)
            };
            form.map_err(|e| with_token(e, args[1]))
        }
        other => Err(Error::parse(
            other,
            "unknown form; expected FS, CE, CP or CH",
        )),
    }
}

impl FromStr for SpaceForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_form(s)
    }
}

impl Serialize for SpaceForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for SpaceForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_form(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    #[test]
    fn parses_examples() {
        let f = parse_form("FS(2, 3/2)").unwrap();
        assert_eq!(f.kind, FormKind::Projective);
        assert_eq!((f.dim, f.sig_index), (2, 0));
        assert_eq!(f.curvature, Some(Curvature::new(rat(3, 2))));

        let f = parse_form("CE(4, 1)").unwrap();
        assert_eq!(f, SpaceForm::flat(4, 1).unwrap());

        let err = parse_form("CP(3, 4, 1)").unwrap_err();
        assert!(
            matches!(err, Error::Parse { ref token, .. } if token == "4"),
            "{err}"
        );
    }

    #[test]
    fn negative_fs_is_hyperbolic() {
        let f = parse_form("FS(3, -2, pi)").unwrap();
        assert_eq!(f.kind, FormKind::Hyperbolic);
        assert_eq!(f.signed_curvature(), Some(int(-2)));
        assert_eq!(f.curvature.as_ref().unwrap().unit, "pi");
        assert_eq!(f.render(), "FS(3, -2, pi)");
    }

    #[test]
    fn grammar_errors_name_the_token() {
        for bad in [
            "FS(0, 1)",
            "FS(2, 0)",
            "XX(1, 1)",
            "FS(2 1)",
            "CE(2)",
            "CH(2, 1, -1)",
            "FS(a, 1)",
            "FS(2, 1",
        ] {
            assert!(parse_form(bad).is_err(), "{bad} should fail");
        }
        let err = parse_form("FS(x, 1)").unwrap_err();
        assert!(err.to_string().contains("`x`"), "{err}");
    }

    #[test]
    fn render_round_trips() {
        for text in [
            "FS(2, 3/2)",
            "CE(4, 1)",
            "CP(5, 1, 2)",
            "CH(3, 2, 7/3, u)",
            "FS(1, -1/2)",
        ] {
            let f = parse_form(text).unwrap();
            assert_eq!(f.render(), text);
            assert_eq!(parse_form(&f.render()).unwrap(), f);
        }
        // definite CP renders as FS but parses back to the same form
        let f = parse_form("CP(2, 0, 5)").unwrap();
        assert_eq!(parse_form(&f.render()).unwrap(), f);
    }
}
