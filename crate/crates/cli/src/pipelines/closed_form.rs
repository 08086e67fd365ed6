use sp4_core::hamiltonian::build_h;
use sp4_core::lr_ode::{
    assemble_invariant, closed_form_at_theta, closed_form_trajectory, involution_errors,
    lr_residual_samples, BranchTracker, ClosedFormParams, CoefficientVector,
};

use super::{coefficient_table, max_of, pointwise_lr, Context, Outcome};
use crate::config::ClosedFormConfig;
use crate::error::Result;
use crate::output::Diagnostic;

const INVOLUTION_TOL: f64 = 1e-10;
const LR_TOL: f64 = 1e-8;
const BRANCH_TOL: f64 = 1e-7;

pub fn run(p: &ClosedFormConfig, ctx: &Context) -> Result<Outcome> {
    let mut out = Outcome::default();
    let cf = ClosedFormParams::new(p.alpha, p.lambda.clone());
    let osc = cf.oscillator_params();
    let times = ctx.grid.points();

    let c0 = closed_form_at_theta(p.alpha, 0.0)?;
    out.check(
        "initial_value",
        c0.max_abs_diff(&CoefficientVector::initial()),
        0.0,
    );

    let traj = closed_form_trajectory(&cf, &ctx.grid)?;
    let mut tracker = BranchTracker::new();
    let (mut constraints, mut literal, mut off_branch): (f64, f64, usize) = (0.0, 0.0, 0);
    for c in &traj {
        let r = tracker.next(c)?;
        constraints = constraints.max(r.max_abs_squared_form());
        literal = literal.max(r.r1.norm());
        if !r.branch_agrees(c.c(1), BRANCH_TOL) {
            off_branch += 1;
        }
    }
    out.check("involution_constraints", constraints, INVOLUTION_TOL);
    out.check("involution_branch", off_branch as f64, 0.0);
    out.diag(Diagnostic::above(
        "involution_r1_square_root_form",
        literal,
        INVOLUTION_TOL,
        "c1 constraint with the square root taken; rounding is amplified near zeros of c1",
    ));

    let errors: Vec<(f64, f64)> = traj.iter().map(involution_errors).collect();
    out.check(
        "invariant_squared",
        max_of(errors.iter().map(|e| e.0)),
        INVOLUTION_TOL,
    );
    out.check(
        "invariant_det",
        max_of(errors.iter().map(|e| e.1)),
        INVOLUTION_TOL,
    );

    let inv: Vec<_> = traj.iter().map(assemble_invariant).collect();
    let ham: Vec<_> = times
        .iter()
        .map(|&t| build_h(&osc, t))
        .collect::<sp4_core::Result<_>>()?;
    let lr = lr_residual_samples(&inv, &ham, ctx.step(), ctx.hbar)?;
    out.check("lr_residual", lr, LR_TOL);

    let (ap, am) = cf.frequencies()?;
    out.diag(Diagnostic::new(
        "a_plus",
        ap.re,
        ap.im != 0.0,
        "upper closed-form frequency",
    ));
    out.diag(Diagnostic::new(
        "a_minus",
        am.norm(),
        false,
        if am.im != 0.0 { "imaginary" } else { "real" },
    ));

    let pointwise = pointwise_lr(&inv, &ham, ctx.step(), ctx.hbar, 4)?;
    out.emit(
        ctx,
        "trajectory.csv",
        &coefficient_table(times, &traj, &pointwise),
    )?;
    Ok(out)
}
