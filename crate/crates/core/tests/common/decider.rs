use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relatives::algebra::scalar::{int, rat};
use relatives::algebra::Rational;
use relatives::decider::{applicable_rules, decide_relatives, Curvature, Rule, SpaceForm, Status};

fn mag(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(1..=6), rng.gen_range(1..=6))
}

fn random_form(rng: &mut ChaCha8Rng) -> SpaceForm {
    let n = rng.gen_range(1..=6);
    let sig = rng.gen_range(0..=n);
    let b = mag(rng);
    match rng.gen_range(0..10) {
        0..=5 => SpaceForm::fubini_study(n, b),
        6 => SpaceForm::flat(n, sig),
        7 => SpaceForm::projective(n, sig, Curvature::new(b)),
        8 => SpaceForm::hyperbolic(n, 0, Curvature::new(b)),
        _ => SpaceForm::fubini_study_with_unit(n, b, "pi"),
    }
    .unwrap()
}

pub fn corpus() -> Vec<(SpaceForm, SpaceForm)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out: Vec<(SpaceForm, SpaceForm)> = (0..170)
        .map(|_| (random_form(&mut rng), random_form(&mut rng)))
        .collect();
    // plane pairs and integer ratios, so R4 and R6 are exercised
    for (p, q) in [
        (2, 3),
        (3, 4),
        (3, 5),
        (4, 5),
        (2, 5),
        (1, 2),
        (1, 3),
        (5, 7),
        (4, 7),
        (3, 7),
    ] {
        out.push((
            SpaceForm::fubini_study(2, int(p)).unwrap(),
            SpaceForm::fubini_study(2, int(q)).unwrap(),
        ));
    }
    for (n, m, k) in [
        (2, 2, 2),
        (3, 3, 3),
        (4, 2, 4),
        (2, 5, 2),
        (6, 6, 5),
        (3, 1, 3),
        (5, 2, 5),
        (4, 4, 3),
        (2, 3, 2),
        (1, 1, 1),
    ] {
        out.push((
            SpaceForm::fubini_study(n, int(k)).unwrap(),
            SpaceForm::fubini_study(m, int(1)).unwrap(),
        ));
    }
    for (n, m) in [
        (2, 4),
        (1, 3),
        (3, 1),
        (2, 2),
        (5, 5),
        (6, 1),
        (1, 6),
        (4, 3),
        (3, 8),
        (8, 3),
    ] {
        out.push((
            SpaceForm::fubini_study(n, rat(3, 2)).unwrap(),
            SpaceForm::fubini_study(m, rat(1, 1)).unwrap(),
        ));
    }
    out
}

/// Outcome of the pair checks: the rule that decided it and whether two
/// rules disagreed.
pub struct PairReport {
    pub rule: Rule,
    pub conflict: bool,
}

/// Symmetry, scale invariance under three factors, certificate soundness
/// for every firing rule, and the rule-conflict flag.
pub fn check_pair(f1: &SpaceForm, f2: &SpaceForm) -> Result<PairReport, String> {
    let fired = applicable_rules(f1, f2).map_err(|e| e.to_string())?;
    let yes = fired.iter().any(|v| v.status == Status::Relatives);
    let no = fired.iter().any(|v| v.status == Status::NotRelatives);
    for v in &fired {
        if !v.certificate.recheck().map_err(|e| e.to_string())? {
            return Err(format!(
                "{f1} vs {f2}: {:?} certificate does not recheck",
                v.rule
            ));
        }
    }
    if yes && no {
        return Ok(PairReport {
            rule: Rule::Undecided,
            conflict: true,
        });
    }
    let v = decide_relatives(f1, f2).map_err(|e| e.to_string())?;
    let w = decide_relatives(f2, f1).map_err(|e| e.to_string())?;
    if (v.status, v.rule) != (w.status, w.rule) {
        return Err(format!("{f1} vs {f2}: asymmetric verdict"));
    }
    if !v.certificate.recheck().map_err(|e| e.to_string())? {
        return Err(format!("{f1} vs {f2}: certificate does not recheck"));
    }
    for t in [int(2), rat(3, 7), int(5)] {
        let s = decide_relatives(&f1.scaled(&t), &f2.scaled(&t)).map_err(|e| e.to_string())?;
        if (s.status, s.rule) != (v.status, v.rule) {
            return Err(format!(
                "{f1} vs {f2}: verdict changes under scaling by {t}"
            ));
        }
    }
    Ok(PairReport {
        rule: v.rule,
        conflict: false,
    })
}
