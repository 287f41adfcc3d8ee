use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::numeric::NumericProblem;
use super::problem::{Candidate, SearchProblem};
use crate::error::Result;

/// Residual below which a restart stops iterating.
const STOP_RESIDUAL: f64 = 1e-28;
const LAMBDA_INIT: f64 = 1e-3;
const LAMBDA_MAX: f64 = 1e12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            restarts: 20,
            max_iters: 200,
            seed: 42,
            tol: 1e-10,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub problem: SearchProblem,
    pub best_residual: f64,
    pub converged: bool,
    pub per_restart: Vec<f64>,
    /// Best candidate when converged, otherwise null.
    pub witness: Option<Candidate<Complex64>>,
    pub evidence_only: bool,
    pub label: &'static str,
    #[serde(skip)]
    pub best: Candidate<Complex64>,
}

/// Damped Gauss-Newton with Marquardt diagonal scaling. Returns the final
/// parameters and residual.
pub fn levenberg_marquardt(
    np: &NumericProblem,
    mut x: Vec<f64>,
    max_iters: usize,
) -> (Vec<f64>, f64) {
    if x.is_empty() {
        let f = np.residual(&x);
        return (x, f);
    }
    let mut lambda = LAMBDA_INIT;
    let (mut r, mut j) = np.residual_and_jacobian(&x);
    let mut f = r.norm_squared();
    for _ in 0..max_iters {
        if f.is_nan() || f <= STOP_RESIDUAL {
            break;
        }
        let jt = j.transpose();
        let jtj = &jt * &j;
        let g = &jt * &r;
        let mut improved = false;
        while lambda <= LAMBDA_MAX {
            let mut a = jtj.clone();
            for i in 0..a.nrows() {
                a[(i, i)] += lambda * (jtj[(i, i)] + 1e-12);
            }
            let Some(step) = solve_spd(a, -&g) else {
                lambda *= 4.0;
                continue;
            };
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let f_trial = np.residual(&trial);
            if f_trial < f {
                x = trial;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
        (r, j) = np.residual_and_jacobian(&x);
        f = r.norm_squared();
    }
    (x, f)
}

fn solve_spd(a: DMatrix<f64>, b: DVector<f64>) -> Option<DVector<f64>> {
    a.cholesky().map(|c| c.solve(&b))
}

/// Random generator for restart `index`: ChaCha8 seeded with `seed`, on
/// stream `index`.
pub fn restart_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Multi-start local least-squares search for a curve pair satisfying the
/// identity. Restarts run in parallel; the reduction takes the smallest
/// residual, ties going to the lowest restart index.
pub fn search_isometry(p: &SearchProblem, opts: &SearchOptions) -> Result<SearchReport> {
    let np = NumericProblem::new(p);
    let runs: Vec<(Vec<f64>, f64)> = (0..opts.restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = restart_rng(opts.seed, i);
            let x0: Vec<f64> = (0..np.num_params())
                .map(|_| rng.gen_range(-1.0..=1.0))
                .collect();
            let (x, f) = levenberg_marquardt(&np, x0, opts.max_iters);
            (x, if f.is_nan() { f64::INFINITY } else { f })
        })
        .collect();

    let mut best_idx = 0;
    for (i, (_, f)) in runs.iter().enumerate() {
        if *f < runs[best_idx].1 {
            best_idx = i;
        }
    }
    let per_restart: Vec<f64> = runs.iter().map(|(_, f)| *f).collect();
    let (best_x, best_residual) = match runs.get(best_idx) {
        Some((x, f)) => (x.clone(), *f),
        None => (vec![0.0; np.num_params()], f64::INFINITY),
    };
    let best = np.candidate(&best_x)?;
    let converged = best_residual < opts.tol;
    Ok(SearchReport {
        problem: p.clone(),
        best_residual,
        converged,
        per_restart,
        witness: converged.then(|| best.clone()),
        evidence_only: true,
        label: "numeric evidence",
        best,
    })
}
