//! One pipeline per scenario mode. Each returns checks, diagnostics and the
//! artifacts it wrote.

mod algebra;
mod closed_form;
mod ode;
mod regime;
mod transform;

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sp4_core::algebra::{commutator, AlgebraElement, GeneratorId};
use sp4_core::lr_ode::{involution_errors, CoefficientVector};
use sp4_core::numerics::central_diff_order;
use sp4_core::{TimeGrid, Tolerances, C64};

use crate::config::{GridConfig, ModeParams};
use crate::error::Result;
use crate::output::{emit_plot_data, Check, Diagnostic, Table};

pub struct Context<'a> {
    pub out_dir: &'a Path,
    pub seed: u64,
    pub hbar: f64,
    pub grid: TimeGrid,
    pub grid_cfg: GridConfig,
    pub tolerances: Tolerances,
}

impl Context<'_> {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn step(&self) -> f64 {
        self.grid_cfg.step()
    }
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub diagnostics: Vec<Diagnostic>,
    pub artifacts: Vec<String>,
}

impl Outcome {
    pub fn check(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        self.checks.push(Check::new(name, residual, tolerance));
    }

    pub fn diag(&mut self, d: Diagnostic) {
        self.diagnostics.push(d);
    }

    pub fn emit(&mut self, ctx: &Context, file: &str, table: &Table) -> Result<()> {
        emit_plot_data(table, &ctx.out_dir.join(file))?;
        self.artifacts.push(file.to_string());
        Ok(())
    }
}

pub fn run_mode(params: &ModeParams, ctx: &Context) -> Result<Outcome> {
    match params {
        ModeParams::AlgebraCheck(p) => algebra::run(p, ctx),
        ModeParams::LrClosedForm(p) => closed_form::run(p, ctx),
        ModeParams::LrOde(p) => ode::run(p, ctx),
        ModeParams::PointTransform(p) => transform::run(p, ctx),
        ModeParams::RegimeMap(p) => regime::run(p, ctx),
    }
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn coefficient_header() -> Vec<String> {
    let mut h = vec!["t".to_string()];
    for k in 1..=10 {
        h.push(format!("re_c{k}"));
        h.push(format!("im_c{k}"));
    }
    h
}

fn element_header() -> Vec<String> {
    let mut h = vec!["t".to_string()];
    for g in GeneratorId::ALL {
        h.push(format!("re_{}", g.name()));
        h.push(format!("im_{}", g.name()));
    }
    h
}

fn push_pairs(row: &mut Vec<f64>, values: &[C64]) {
    for z in values {
        row.push(z.re);
        row.push(z.im);
    }
}

fn element_table(times: &[f64], elements: &[AlgebraElement]) -> Table {
    let mut table = Table::new(element_header());
    for (t, e) in times.iter().zip(elements) {
        let mut row = vec![*t];
        push_pairs(&mut row, &e.coeffs);
        table.push(row);
    }
    table
}

/// Per-sample `|i hbar dI/dt - [H, I]|`; NaN where the stencil does not reach.
fn pointwise_lr(
    inv: &[AlgebraElement],
    ham: &[AlgebraElement],
    step: f64,
    hbar: f64,
    order: usize,
) -> Result<Vec<f64>> {
    let d = central_diff_order(inv, step, order)?;
    let off = order / 2;
    let ih = C64::new(0.0, hbar);
    let mut out = vec![f64::NAN; inv.len()];
    for (k, dk) in d.iter().enumerate() {
        out[k + off] = (*dk * ih - commutator(&ham[k + off], &inv[k + off])).max_abs();
    }
    Ok(out)
}

/// Coefficients, `|I^2 - 1|`, `|det I - 1|` and the LR residual per sample.
fn coefficient_table(times: &[f64], states: &[CoefficientVector], lr: &[f64]) -> Table {
    let mut header = coefficient_header();
    header.extend(["inv_sq_err", "det_err", "lr_residual"].map(String::from));
    let mut table = Table::new(header);
    for ((t, c), r) in times.iter().zip(states).zip(lr) {
        let mut row = vec![*t];
        push_pairs(&mut row, &c.0);
        let (sq, det) = involution_errors(c);
        row.extend([sq, det, *r]);
        table.push(row);
    }
    table
}
