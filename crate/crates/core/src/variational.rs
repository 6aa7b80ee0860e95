//! Direct minimization of the trace distance to the classical-quantum set.
//!
//! Used as an independent check on the X-state closed form.  Every candidate
//! evaluated is a genuine classical-quantum state, so the returned value is an
//! upper bound on the true discord.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::xstate::{pauli, DensityMatrix4};

const DIM: usize = 9;

/// Effort for [`discord_1norm_variational`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchBudget {
    /// Points per axis of the (polar angle, azimuth, weight) seed grid.
    pub grid: usize,
    /// Nelder-Mead iterations per refinement round.
    pub refine_steps: usize,
    /// Refinement rounds restarted from the incumbent.
    pub restarts: usize,
    /// A round improving the objective by less than this ends the search.
    pub tolerance: f64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            grid: 12,
            refine_steps: 200,
            restarts: 12,
            tolerance: 1e-10,
        }
    }
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn bloch_operator(r: [f64; 3]) -> Matrix2<C64> {
    let mut m = pauli(0);
    for (k, rk) in r.iter().enumerate() {
        m += pauli(k + 1) * c(*rk);
    }
    m * c(0.5)
}

fn into_ball(v: &[f64]) -> [f64; 3] {
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let scale = if norm > 1.0 { 1.0 / norm } else { 1.0 };
    [v[0] * scale, v[1] * scale, v[2] * scale]
}

fn direction(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

/// `p Pi_n (x) rho(r0) + (1 - p) Pi_-n (x) rho(r1)` from the raw parameter
/// vector `(theta, phi, p, r0, r1)`.
fn classical_quantum(params: &[f64; DIM]) -> Matrix4<C64> {
    let n = direction(params[0], params[1]);
    let weight = params[2].clamp(0.0, 1.0);
    let up = bloch_operator(n);
    let down = bloch_operator([-n[0], -n[1], -n[2]]);
    let r0 = bloch_operator(into_ball(&params[3..6]));
    let r1 = bloch_operator(into_ball(&params[6..9]));
    up.kronecker(&r0) * c(weight) + down.kronecker(&r1) * c(1.0 - weight)
}

pub fn trace_norm(m: &Matrix4<C64>) -> f64 {
    let h = (m + m.adjoint()) * c(0.5);
    SymmetricEigen::new(h)
        .eigenvalues
        .iter()
        .map(|e| e.abs())
        .sum()
}

struct Objective<'a> {
    rho: &'a Matrix4<C64>,
}

impl Objective<'_> {
    fn eval(&self, params: &[f64; DIM]) -> f64 {
        trace_norm(&(self.rho - classical_quantum(params)))
    }

    /// Seed for a measurement direction: the post-measurement conditional
    /// states of subsystem B and the given outcome weight.
    fn seed(&self, theta: f64, phi: f64, weight: Option<f64>) -> [f64; DIM] {
        let n = direction(theta, phi);
        let mut params = [0.0; DIM];
        params[0] = theta;
        params[1] = phi;
        let id = pauli(0);
        let mut p_up = 0.0;
        for (sign, offset) in [(1.0, 3), (-1.0, 6)] {
            let proj = bloch_operator([sign * n[0], sign * n[1], sign * n[2]]);
            let p = (self.rho * proj.kronecker(&id)).trace().re;
            if sign > 0.0 {
                p_up = p;
            }
            if p > 1e-14 {
                for k in 0..3 {
                    let obs = proj.kronecker(&pauli(k + 1));
                    params[offset + k] = (self.rho * obs).trace().re / p;
                }
            }
        }
        params[2] = weight.unwrap_or(p_up);
        params
    }
}

/// Plain Nelder-Mead; returns the best vertex and its value.
fn nelder_mead(
    f: &Objective<'_>,
    start: [f64; DIM],
    scale: [f64; DIM],
    steps: usize,
) -> ([f64; DIM], f64) {
    let mut simplex: Vec<([f64; DIM], f64)> = Vec::with_capacity(DIM + 1);
    simplex.push((start, f.eval(&start)));
    for i in 0..DIM {
        let mut v = start;
        v[i] += scale[i];
        simplex.push((v, f.eval(&v)));
    }
    for _ in 0..steps {
        simplex.sort_by(|x, y| x.1.total_cmp(&y.1));
        if simplex[DIM].1 - simplex[0].1 <= 1e-15 {
            break;
        }
        let mut centroid = [0.0; DIM];
        for (v, _) in &simplex[..DIM] {
            for k in 0..DIM {
                centroid[k] += v[k] / DIM as f64;
            }
        }
        let worst = simplex[DIM];
        let along = |t: f64| {
            let mut v = [0.0; DIM];
            for k in 0..DIM {
                v[k] = centroid[k] + t * (worst.0[k] - centroid[k]);
            }
            v
        };
        let refl = along(-1.0);
        let f_refl = f.eval(&refl);
        if f_refl < simplex[0].1 {
            let exp = along(-2.0);
            let f_exp = f.eval(&exp);
            simplex[DIM] = if f_exp < f_refl {
                (exp, f_exp)
            } else {
                (refl, f_refl)
            };
        } else if f_refl < simplex[DIM - 1].1 {
            simplex[DIM] = (refl, f_refl);
        } else {
            let contr = if f_refl < worst.1 {
                along(-0.5)
            } else {
                along(0.5)
            };
            let f_contr = f.eval(&contr);
            if f_contr < worst.1.min(f_refl) {
                simplex[DIM] = (contr, f_contr);
            } else {
                let best = simplex[0].0;
                for (v, fv) in simplex.iter_mut().skip(1) {
                    for k in 0..DIM {
                        v[k] = best[k] + 0.5 * (v[k] - best[k]);
                    }
                    *fv = f.eval(v);
                }
            }
        }
    }
    simplex.sort_by(|x, y| x.1.total_cmp(&y.1));
    simplex[0]
}

/// Trace-norm geometric discord (doubled convention) by direct search over
/// classical-quantum states `sum_k p_k Pi_k (x) rho_k`.
///
/// The search seeds a grid over measurement direction and outcome weight,
/// then refines the best seeds with Nelder-Mead.
pub fn discord_1norm_variational(rho: &DensityMatrix4, budget: &SearchBudget) -> Result<f64> {
    let f = Objective { rho: rho.matrix() };
    let n = budget.grid.max(2);
    let mut seeds: Vec<([f64; DIM], f64)> = Vec::new();
    for i in 0..n {
        let theta = std::f64::consts::PI * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let phi = std::f64::consts::TAU * j as f64 / n as f64;
            let natural = f.seed(theta, phi, None);
            seeds.push((natural, f.eval(&natural)));
            for k in 0..n {
                let s = f.seed(theta, phi, Some(k as f64 / (n - 1) as f64));
                seeds.push((s, f.eval(&s)));
            }
        }
    }
    seeds.sort_by(|x, y| x.1.total_cmp(&y.1));

    let wide = [0.3, 0.3, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1];
    let mut best = seeds[0];
    for seed in seeds.iter().take(3) {
        let cand = nelder_mead(&f, seed.0, wide, budget.refine_steps);
        if cand.1 < best.1 {
            best = cand;
        }
    }

    let mut improvement = f64::INFINITY;
    for round in 0..budget.restarts {
        if best.1 <= budget.tolerance {
            improvement = 0.0;
            break;
        }
        let shrink = 0.5f64.powi(round as i32 % 6);
        let scale = wide.map(|s| s * shrink);
        let cand = nelder_mead(&f, best.0, scale, budget.refine_steps);
        improvement = best.1 - cand.1;
        if cand.1 < best.1 {
            best = cand;
        }
        if improvement.abs() < budget.tolerance {
            break;
        }
    }
    if improvement.abs() >= budget.tolerance && best.1 > budget.tolerance {
        return Err(Error::NotConverged {
            best: best.1,
            improvement,
        });
    }
    // the doubled convention cancels the 1/2 of the trace distance
    Ok(best.1)
}
