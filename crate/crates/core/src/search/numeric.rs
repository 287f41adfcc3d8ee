//! Dense binary64 evaluation of the curve identity and its Jacobian.
//!
//! Parameters are the real and imaginary parts of the coefficients of
//! `z^2, ..., z^D` of every curve, `h` curves first. Linear coefficients are
//! pinned to `(1, 0, ..., 0)` on both sides: up to unitary changes of frame
//! and a rescaling of `z`, every immersive solution has this form (the
//! order-one terms of the identity force equal first-order norms), and
//! pinning excludes the constant solution.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::Zero;

use super::problem::{unit_weights, Candidate, SearchProblem};
use crate::algebra::scalar::rational_to_f64;
use crate::algebra::{SignedGermSystem, TruncatedGerm};
use crate::error::Result;

/// Bivariate polynomial `sum g[i][j] z^i w^j` truncated at degree `e` per variable.
#[derive(Clone, Debug)]
struct Grid {
    e: usize,
    data: Vec<Complex64>,
}

impl Grid {
    fn zeros(e: usize) -> Self {
        Grid {
            e,
            data: vec![Complex64::zero(); (e + 1) * (e + 1)],
        }
    }

    fn one(e: usize) -> Self {
        let mut g = Self::zeros(e);
        g.data[0] = Complex64::new(1.0, 0.0);
        g
    }

    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * (self.e + 1) + j]
    }

    fn add_at(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * (self.e + 1) + j] += v;
    }

    fn mul(&self, other: &Grid) -> Grid {
        let e = self.e;
        let mut out = Grid::zeros(e);
        for i1 in 0..=e {
            for j1 in 0..=e {
                let x = self.at(i1, j1);
                if x.is_zero() {
                    continue;
                }
                for i2 in 0..=e - i1 {
                    for j2 in 0..=e - j1 {
                        out.add_at(i1 + i2, j1 + j2, x * other.at(i2, j2));
                    }
                }
            }
        }
        out
    }

    fn pow(&self, k: u64) -> Grid {
        (0..k).fold(Grid::one(self.e), |acc, _| acc.mul(self))
    }
}

/// Sparse grid: list of `(i, j, value)`.
type Sparse = Vec<(usize, usize, Complex64)>;

fn mul_sparse(dense: &Grid, sparse: &Sparse, factor: Complex64, out: &mut [Complex64]) {
    let e = dense.e;
    for &(u, v, val) in sparse {
        if u > e || v > e {
            continue;
        }
        let f = val * factor;
        for i in 0..=e - u {
            for j in 0..=e - v {
                out[(i + u) * (e + 1) + (j + v)] += dense.at(i, j) * f;
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct NumericProblem {
    m: usize,
    n: usize,
    degree: usize,
    s: u64,
    r: u64,
    a: f64,
    b: f64,
    e: usize,
}

struct Sides {
    lhs: Grid,
    rhs: Grid,
    lhs_base: Grid,
    rhs_base: Grid,
}

impl NumericProblem {
    pub fn new(p: &SearchProblem) -> Self {
        NumericProblem {
            m: p.m(),
            n: p.n(),
            degree: p.degree as usize,
            s: p.s,
            r: p.r,
            a: rational_to_f64(&p.a()),
            b: rational_to_f64(&p.b()),
            e: p.effective_cap() as usize,
        }
    }

    /// Number of free real parameters.
    pub fn num_params(&self) -> usize {
        2 * (self.degree - 1) * (self.m + self.n)
    }

    /// Length of the real residual vector.
    pub fn num_residuals(&self) -> usize {
        2 * (self.e + 1) * (self.e + 1)
    }

    /// Coefficient arrays `[curve][power - 1]` for `h` then `k`.
    fn unpack(&self, x: &[f64]) -> (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) {
        debug_assert_eq!(x.len(), self.num_params());
        let free = self.degree - 1;
        let mut params = x.chunks(2).map(|p| Complex64::new(p[0], p[1]));
        let mut family = |count: usize| -> Vec<Vec<Complex64>> {
            (0..count)
                .map(|ci| {
                    let lead = if ci == 0 { 1.0 } else { 0.0 };
                    let mut c = vec![Complex64::new(lead, 0.0)];
                    c.extend(params.by_ref().take(free));
                    c
                })
                .collect()
        };
        let h = family(self.m);
        let k = family(self.n);
        (h, k)
    }

    /// `sum_curves c_i conj(c_j)` as a grid.
    fn norm_grid(&self, curves: &[Vec<Complex64>]) -> Grid {
        let mut g = Grid::zeros(self.e);
        for c in curves {
            for (p, cp) in c.iter().enumerate() {
                for (q, cq) in c.iter().enumerate() {
                    if p < self.e && q < self.e {
                        g.add_at(p + 1, q + 1, cp * cq.conj());
                    }
                }
            }
        }
        g
    }

    fn sides(&self, h: &[Vec<Complex64>], k: &[Vec<Complex64>]) -> Sides {
        let base = |curves, curvature: f64| {
            let mut g = self.norm_grid(curves);
            for v in &mut g.data {
                *v *= curvature;
            }
            g.data[0] += 1.0;
            g
        };
        let lhs_base = base(h, self.a);
        let rhs_base = base(k, self.b);
        Sides {
            lhs: lhs_base.pow(self.s),
            rhs: rhs_base.pow(self.r),
            lhs_base,
            rhs_base,
        }
    }

    fn residual_from(&self, sides: &Sides) -> DVector<f64> {
        let mut out = DVector::zeros(self.num_residuals());
        for (idx, (l, r)) in sides.lhs.data.iter().zip(&sides.rhs.data).enumerate() {
            let d = l - r;
            out[2 * idx] = d.re;
            out[2 * idx + 1] = d.im;
        }
        out
    }

    pub fn residual_vector(&self, x: &[f64]) -> DVector<f64> {
        let (h, k) = self.unpack(x);
        self.residual_from(&self.sides(&h, &k))
    }

    pub fn residual(&self, x: &[f64]) -> f64 {
        self.residual_vector(x).norm_squared()
    }

    /// Residual vector and its Jacobian with respect to the free parameters.
    pub fn residual_and_jacobian(&self, x: &[f64]) -> (DVector<f64>, DMatrix<f64>) {
        let (h, k) = self.unpack(x);
        let sides = self.sides(&h, &k);
        let res = self.residual_from(&sides);
        let e = self.e;
        let mut jac = DMatrix::zeros(self.num_residuals(), self.num_params());

        // d(base^s) = s base^{s-1} d(base), d(base) = curvature * d(norm)
        let lhs_deriv = sides.lhs_base.pow(self.s - 1);
        let rhs_deriv = sides.rhs_base.pow(self.r - 1);
        let lhs_factor = Complex64::new(self.a * self.s as f64, 0.0);
        let rhs_factor = Complex64::new(-self.b * self.r as f64, 0.0);

        let mut col = 0usize;
        let mut buf = vec![Complex64::zero(); (e + 1) * (e + 1)];
        for (family, curves) in [(0, &h), (1, &k)] {
            let (dense, factor) = if family == 0 {
                (&lhs_deriv, lhs_factor)
            } else {
                (&rhs_deriv, rhs_factor)
            };
            for c in curves.iter() {
                for p in 1..self.degree {
                    for imag in [false, true] {
                        // d/dRe: row p gets conj(c_q), column p gets c_q
                        // d/dIm: row p gets i conj(c_q), column p gets -i c_q
                        let (row_f, col_f) = if imag {
                            (Complex64::i(), -Complex64::i())
                        } else {
                            (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
                        };
                        let mut sparse: Sparse = Vec::with_capacity(2 * self.degree);
                        for (q, cq) in c.iter().enumerate() {
                            sparse.push((p + 1, q + 1, row_f * cq.conj()));
                            sparse.push((q + 1, p + 1, col_f * cq));
                        }
                        buf.iter_mut().for_each(|v| *v = Complex64::zero());
                        mul_sparse(dense, &sparse, factor, &mut buf);
                        for (idx, v) in buf.iter().enumerate() {
                            jac[(2 * idx, col)] = v.re;
                            jac[(2 * idx + 1, col)] = v.im;
                        }
                        col += 1;
                    }
                }
            }
        }
        debug_assert_eq!(col, self.num_params());
        (res, jac)
    }

    /// Gradient of [`Self::residual`]: `2 J^T r`.
    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let (r, j) = self.residual_and_jacobian(x);
        (j.transpose() * r * 2.0).iter().copied().collect()
    }

    /// Residual of an arbitrary approximate candidate (weights fold in as
    /// `sqrt(w)` on the coefficients).
    pub fn residual_of(&self, c: &Candidate<Complex64>) -> f64 {
        let curves = |sys: &SignedGermSystem<Complex64>| -> Vec<Vec<Complex64>> {
            sys.weights
                .iter()
                .zip(&sys.germs)
                .map(|(w, g)| {
                    let sw = rational_to_f64(w).sqrt();
                    (1..=self.degree)
                        .map(|p| g.coeff(&crate::algebra::MultiIndex::new(vec![p as u32])) * sw)
                        .collect()
                })
                .collect()
        };
        let sides = self.sides(&curves(&c.h), &curves(&c.k));
        self.residual_from(&sides).norm_squared()
    }

    /// The candidate encoded by a parameter vector (unit weights).
    pub fn candidate(&self, x: &[f64]) -> Result<Candidate<Complex64>> {
        let (h, k) = self.unpack(x);
        let to_sys = |curves: &[Vec<Complex64>]| -> Result<SignedGermSystem<Complex64>> {
            let germs = curves
                .iter()
                .map(|c| TruncatedGerm::univariate(self.degree as u32, c))
                .collect::<Result<Vec<_>>>()?;
            SignedGermSystem::new(unit_weights(germs.len()), germs)
        };
        Ok(Candidate {
            h: to_sys(&h)?,
            k: to_sys(&k)?,
        })
    }
}
