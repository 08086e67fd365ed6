use sp4_core::algebra::{matrix_adjoint, parity_action, pt_map, PtVariant};
use sp4_core::hamiltonian::{
    classify_discriminant, discriminant, eigenvalues_from_values, hamiltonian_from_values,
    DiscriminantForm, EigenMethod, Regime,
};
use sp4_core::C64;

use super::{max_of, Context, Outcome};
use crate::config::RegimeMapConfig;
use crate::error::Result;
use crate::output::{Diagnostic, Table};

const EXACT: f64 = 1e-12;
const AGREE_TOL: f64 = 1e-8;
// Imaginary parts below this count as a real spectrum.
const REAL_TOL: f64 = 1e-8;

fn code(r: Regime) -> f64 {
    match r {
        Regime::PTSymmetric => 1.0,
        Regime::ExceptionalPoint => 0.0,
        Regime::SpontaneouslyBroken => -1.0,
    }
}

// Hausdorff distance; sorted order is unstable across conjugate pairs.
fn max_gap(a: &[C64; 4], b: &[C64; 4]) -> f64 {
    let one_way = |u: &[C64; 4], v: &[C64; 4]| {
        max_of(u.iter().map(|x| {
            v.iter()
                .map(|y| (x - y).norm())
                .fold(f64::INFINITY, f64::min)
        }))
    };
    one_way(a, b).max(one_way(b, a))
}

// Every eigenvalue has its negative in the spectrum.
fn pairing_error(e: &[C64; 4]) -> f64 {
    max_of(e.iter().map(|x| {
        e.iter()
            .map(|y| (x + y).norm())
            .fold(f64::INFINITY, f64::min)
    }))
}

pub fn run(p: &RegimeMapConfig, ctx: &Context) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut table = Table::new([
        "t", "re1", "re2", "re3", "re4", "im1", "im2", "im3", "im4", "regime",
    ]);
    let (mut pt, mut parity, mut pairing, mut formula, mut normal, mut inconsistent) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0usize);
    let mut counts = [0usize; 3];

    for &t in ctx.grid.points() {
        let v = p.system.at(t)?;
        let h = hamiltonian_from_values(&v);
        pt = pt.max(pt_map(&h, PtVariant::Pt).max_abs_diff(&h));
        parity = parity.max(parity_action(&h)?.max_abs_diff(&matrix_adjoint(&h)));

        let numeric = eigenvalues_from_values(&v, EigenMethod::Numeric)?;
        let scale = numeric.iter().map(|z| z.norm()).fold(1.0, f64::max);
        pairing = pairing.max(pairing_error(&numeric) / scale);
        formula = formula.max(max_gap(
            &eigenvalues_from_values(&v, EigenMethod::Formula)?,
            &numeric,
        ));
        normal = normal.max(max_gap(
            &eigenvalues_from_values(&v, EigenMethod::NormalMode)?,
            &numeric,
        ));

        let real = numeric.iter().all(|z| z.im.abs() <= REAL_TOL * scale);
        match classify_discriminant(discriminant(&v, DiscriminantForm::NormalMode), p.ep_tol) {
            Regime::PTSymmetric if !real => inconsistent += 1,
            Regime::SpontaneouslyBroken if real => inconsistent += 1,
            _ => {}
        }

        let regime = classify_discriminant(discriminant(&v, p.discriminant), p.ep_tol);
        counts[(1.0 - code(regime)) as usize] += 1;
        let e = if p.eigen_method == EigenMethod::Numeric {
            numeric
        } else {
            eigenvalues_from_values(&v, p.eigen_method)?
        };
        let mut row = vec![t];
        row.extend(e.iter().map(|z| z.re));
        row.extend(e.iter().map(|z| z.im));
        row.push(code(regime));
        table.push(row);
    }

    out.check("hamiltonian_pt_symmetry", pt, EXACT);
    out.check("parity_equals_matrix_adjoint", parity, EXACT);
    out.check("eigenvalue_pairing", pairing, 1e-10);
    out.check(
        "normal_mode_regime_decides_reality",
        inconsistent as f64,
        0.0,
    );
    out.diag(Diagnostic::above(
        "formula_vs_numeric",
        formula,
        AGREE_TOL,
        "eigenvalues from the a W+^2 expression",
    ));
    out.diag(Diagnostic::above(
        "normal_mode_vs_numeric",
        normal,
        AGREE_TOL,
        "eigenvalues from the normal-mode expression",
    ));
    for (name, n) in [
        "pt_symmetric_samples",
        "exceptional_point_samples",
        "broken_samples",
    ]
    .iter()
    .zip(counts)
    {
        out.diag(Diagnostic::new(
            *name,
            n as f64,
            false,
            "classification with the configured discriminant",
        ));
    }
    out.emit(ctx, "eigenvalues.csv", &table)?;
    Ok(out)
}
