use sp4_core::hamiltonian::build_h;
use sp4_core::lr_ode::{
    assemble_invariant, closed_form_at_theta, commutator_probe, evolve, involution_errors,
    involution_residuals, lr_residual_samples, CoefficientVector, EvolveMode, Trajectory,
};

use super::{coefficient_table, max_of, pointwise_lr, Context, Outcome};
use crate::config::{LrOdeConfig, SolverChoice};
use crate::error::Result;
use crate::output::Diagnostic;

const PROBE_TOL: f64 = 1e-12;
const TIME_ORDERED_TOL: f64 = 1e-6;
const COMMUTING_TOL: f64 = 1e-8;
const LR_TOL: f64 = 1e-6;
const INVOLUTION_TOL: f64 = 1e-8;

fn label(mode: EvolveMode) -> &'static str {
    match mode {
        EvolveMode::TimeOrdered => "time_ordered",
        EvolveMode::Commuting => "commuting",
    }
}

pub fn run(p: &LrOdeConfig, ctx: &Context) -> Result<Outcome> {
    let mut out = Outcome::default();
    let osc = p.system.oscillator();
    let cf = p.system.closed_form();
    let c0 = p.c0.unwrap_or_else(CoefficientVector::initial);
    let times = ctx.grid.points();

    let probe = commutator_probe(&osc, &ctx.grid, p.evolve.probe_samples)?;
    if cf.is_some() {
        out.check("commutator_probe", probe, PROBE_TOL);
    } else {
        out.diag(Diagnostic::above(
            "commutator_probe",
            probe,
            PROBE_TOL,
            "largest |[M(t), M(t')]|_F over the probe times",
        ));
    }

    // With proportional profiles M(t) = lambda(t) M1, so the state depends only
    // on theta(t) - theta(t0).
    let reference: Option<Vec<CoefficientVector>> = match &cf {
        Some(cf) if c0 == CoefficientVector::initial() => {
            let theta = cf.lambda.antiderivative_on(times)?;
            Some(
                theta
                    .iter()
                    .map(|th| closed_form_at_theta(cf.alpha, th - theta[0]))
                    .collect::<sp4_core::Result<_>>()?,
            )
        }
        _ => None,
    };

    let modes: &[EvolveMode] = match p.solver {
        SolverChoice::TimeOrdered => &[EvolveMode::TimeOrdered],
        SolverChoice::Commuting => &[EvolveMode::Commuting],
        SolverChoice::Both => &[EvolveMode::TimeOrdered, EvolveMode::Commuting],
    };
    let ham: Vec<_> = times
        .iter()
        .map(|&t| build_h(&osc, t))
        .collect::<sp4_core::Result<_>>()?;
    let involutive_start = involution_residuals(&c0)
        .map(|r| r.max_abs_squared_form() < INVOLUTION_TOL)
        .unwrap_or(false)
        && involution_errors(&c0).0 < INVOLUTION_TOL;

    let mut trajectories: Vec<Trajectory> = Vec::new();
    for &mode in modes {
        let name = label(mode);
        let traj = evolve(&osc, &c0, &ctx.grid, mode, &p.evolve)?;
        if let Some(reference) = &reference {
            let err = max_of(
                traj.states
                    .iter()
                    .zip(reference)
                    .map(|(a, b)| a.max_abs_diff(b)),
            );
            let tol = if mode == EvolveMode::TimeOrdered {
                TIME_ORDERED_TOL
            } else {
                COMMUTING_TOL
            };
            out.check(format!("{name}_vs_closed_form"), err, tol);
        }
        let inv: Vec<_> = traj.states.iter().map(assemble_invariant).collect();
        out.check(
            format!("{name}_lr_residual"),
            lr_residual_samples(&inv, &ham, ctx.step(), ctx.hbar)?,
            LR_TOL,
        );
        let errors: Vec<(f64, f64)> = traj.states.iter().map(involution_errors).collect();
        let worst = max_of(errors.iter().map(|e| e.0.max(e.1)));
        if involutive_start {
            out.check(
                format!("{name}_involution_preserved"),
                worst,
                INVOLUTION_TOL,
            );
        } else {
            out.diag(Diagnostic::new(
                format!("{name}_involution_error"),
                worst,
                false,
                "initial state is not an involution",
            ));
        }
        if mode == EvolveMode::TimeOrdered {
            out.diag(Diagnostic::new(
                "time_ordered_max_halvings",
                traj.max_halvings_used as f64,
                traj.max_halvings_used >= p.evolve.max_halvings,
                "deepest step halving used on any interval",
            ));
            out.diag(Diagnostic::new(
                "time_ordered_refinement_change",
                traj.max_refinement_change,
                false,
                "largest accepted change between the last two refinements",
            ));
        }
        let pointwise = pointwise_lr(&inv, &ham, ctx.step(), ctx.hbar, 4)?;
        out.emit(
            ctx,
            &format!("trajectory_{name}.csv"),
            &coefficient_table(times, &traj.states, &pointwise),
        )?;
        trajectories.push(traj);
    }

    if let [a, b] = trajectories.as_slice() {
        let gap = max_of(
            a.states
                .iter()
                .zip(&b.states)
                .map(|(x, y)| x.max_abs_diff(y)),
        );
        out.check("solvers_agree", gap, TIME_ORDERED_TOL);
    }
    Ok(out)
}
