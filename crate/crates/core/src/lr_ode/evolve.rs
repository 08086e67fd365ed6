use serde::{Deserialize, Serialize};

use super::{m_from_values, CoefficientVector};
use crate::error::{Result, Sp4Error};
use crate::hamiltonian::{CoupledOscillatorParams, OscillatorValues};
use crate::numerics::{expm_apply, expm_with_tol, Matrix10, TimeGrid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvolveMode {
    /// Midpoint exponential products with Richardson step halving.
    TimeOrdered,
    /// A single exponential of the integrated coefficient matrix; valid only
    /// when `M(t)` commutes with itself at different times.
    Commuting,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvolveOptions {
    /// Tolerance on the change between successive halvings on one interval.
    pub step_tol: f64,
    pub max_halvings: u32,
    /// Largest acceptable `|[M(t), M(t')]|_F` in commuting mode.
    pub commute_tol: f64,
    /// Number of sample times in the commutativity probe.
    pub probe_samples: usize,
    pub expm_tol: f64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions {
            step_tol: 1e-10,
            max_halvings: 16,
            commute_tol: 1e-12,
            probe_samples: 9,
            expm_tol: crate::numerics::expm::DEFAULT_EXPM_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<CoefficientVector>,
    /// Deepest halving level any interval needed.
    pub max_halvings_used: u32,
    /// Largest accepted change between the last two refinements.
    pub max_refinement_change: f64,
    /// Commutativity probe value, for commuting mode.
    pub commutator_norm: Option<f64>,
}

fn midpoint_product(
    p: &CoupledOscillatorParams,
    c: &CoefficientVector,
    t0: f64,
    t1: f64,
    n: usize,
) -> Result<CoefficientVector> {
    let h = (t1 - t0) / n as f64;
    let mut x = c.0;
    for k in 0..n {
        let mid = t0 + (k as f64 + 0.5) * h;
        let m = m_from_values(&p.at(mid)?) * h;
        x = expm_apply(&m, &x);
    }
    Ok(CoefficientVector(x))
}

fn diff(a: &CoefficientVector, b: &CoefficientVector) -> f64 {
    a.max_abs_diff(b)
}

fn scale_of(c: &CoefficientVector) -> f64 {
    c.0.iter().map(|z| z.norm()).fold(1.0, f64::max)
}

/// Largest `|[M(t_i), M(t_j)]|_F` over `samples` evenly spread grid times.
pub fn commutator_probe(
    p: &CoupledOscillatorParams,
    grid: &TimeGrid,
    samples: usize,
) -> Result<f64> {
    let samples = samples.max(2);
    let (t0, t1) = (grid.start(), grid.end());
    let ms: Vec<Matrix10> = (0..samples)
        .map(|k| t0 + (t1 - t0) * k as f64 / (samples - 1) as f64)
        .map(|t| Ok(m_from_values(&p.at(t)?)))
        .collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            worst = worst.max(ms[i].commutator(&ms[j]).frobenius_norm());
        }
    }
    Ok(worst)
}

/// Propagates `c0` from the first grid time through every grid time.
pub fn evolve(
    p: &CoupledOscillatorParams,
    c0: &CoefficientVector,
    grid: &TimeGrid,
    mode: EvolveMode,
    opts: &EvolveOptions,
) -> Result<Trajectory> {
    match mode {
        EvolveMode::TimeOrdered => evolve_time_ordered(p, c0, grid, opts),
        EvolveMode::Commuting => evolve_commuting(p, c0, grid, opts),
    }
}

fn evolve_time_ordered(
    p: &CoupledOscillatorParams,
    c0: &CoefficientVector,
    grid: &TimeGrid,
    opts: &EvolveOptions,
) -> Result<Trajectory> {
    let mut states = Vec::with_capacity(grid.len());
    states.push(*c0);
    let mut max_halvings_used = 0;
    let mut max_change: f64 = 0.0;
    let mut c = *c0;
    for w in grid.points().windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let mut coarse = midpoint_product(p, &c, t0, t1, 1)?;
        let mut level = 0;
        loop {
            level += 1;
            let fine = midpoint_product(p, &c, t0, t1, 1 << level)?;
            let change = diff(&fine, &coarse);
            if change <= opts.step_tol * scale_of(&fine) {
                // The midpoint rule is symmetric, so its error expands in even
                // powers of the step and one Richardson step gains two orders.
                let mut next = fine;
                for k in 0..next.0.len() {
                    next.0[k] = (fine.0[k] * 4.0 - coarse.0[k]) / 3.0;
                }
                c = next;
                max_change = max_change.max(change);
                break;
            }
            if level >= opts.max_halvings {
                return Err(Sp4Error::StepNotConverged {
                    t0,
                    t1,
                    halvings: level,
                    change,
                });
            }
            coarse = fine;
        }
        max_halvings_used = max_halvings_used.max(level);
        states.push(c);
    }
    Ok(Trajectory {
        times: grid.points().to_vec(),
        states,
        max_halvings_used,
        max_refinement_change: max_change,
        commutator_norm: None,
    })
}

fn evolve_commuting(
    p: &CoupledOscillatorParams,
    c0: &CoefficientVector,
    grid: &TimeGrid,
    opts: &EvolveOptions,
) -> Result<Trajectory> {
    let norm = commutator_probe(p, grid, opts.probe_samples)?;
    if norm > opts.commute_tol {
        return Err(Sp4Error::NonCommuting {
            norm,
            tolerance: opts.commute_tol,
        });
    }
    // M is linear in the four profiles, so its integral is M of their integrals.
    let pts = grid.points();
    let rel = |f: &crate::hamiltonian::ScalarProfile| -> Result<Vec<f64>> {
        let v = f.antiderivative_on(pts)?;
        let base = v[0];
        Ok(v.into_iter().map(|x| x - base).collect())
    };
    let ia = rel(&p.a)?;
    let iwx = rel(&p.omega_x)?;
    let iwy = rel(&p.omega_y)?;
    let il = rel(&p.lambda)?;
    let states = (0..pts.len())
        .map(|k| {
            let integral = m_from_values(&OscillatorValues {
                a: ia[k],
                omega_x: iwx[k],
                omega_y: iwy[k],
                lambda: il[k],
            });
            CoefficientVector(expm_with_tol(&integral, opts.expm_tol).mul_vec(&c0.0))
        })
        .collect();
    Ok(Trajectory {
        times: pts.to_vec(),
        states,
        max_halvings_used: 0,
        max_refinement_change: 0.0,
        commutator_norm: Some(norm),
    })
}

/// Plain midpoint product integration with a fixed number of sub-steps per
/// grid interval and no extrapolation (second order).
pub fn evolve_fixed(
    p: &CoupledOscillatorParams,
    c0: &CoefficientVector,
    grid: &TimeGrid,
    substeps: usize,
) -> Result<Vec<CoefficientVector>> {
    let mut out = Vec::with_capacity(grid.len());
    let mut c = *c0;
    out.push(c);
    for w in grid.points().windows(2) {
        c = midpoint_product(p, &c, w[0], w[1], substeps.max(1))?;
        out.push(c);
    }
    Ok(out)
}
