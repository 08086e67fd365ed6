use crate::error::{Result, Sp4Error};

/// Default per-interval error target of the adaptive rule.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

const MAX_DEPTH: u32 = 40;

/// Running integral on a grid together with the largest per-interval error
/// estimate encountered.
#[derive(Clone, Debug, PartialEq)]
pub struct Accumulated {
    pub values: Vec<f64>,
    pub max_error: f64,
}

fn simpson_panel(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> (f64, f64) {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_panel(fa, flm, fm, m - a);
    let right = simpson_panel(fm, frm, fb, b - m);
    let err = (left + right - whole) / 15.0;
    if err.abs() <= tol || depth >= MAX_DEPTH || m <= a || m >= b {
        return (left + right + err, err.abs());
    }
    let (l, el) = adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
    let (r, er) = adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    (l + r, el + er)
}

/// Adaptive Simpson integral of `f` over `[a, b]`, returning the value and the
/// Richardson error estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    if a == b {
        return (0.0, 0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson_panel(fa, fm, fb, b - a);
    adapt(&f, a, b, fa, fm, fb, whole, tol, 0)
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Sp4Error::GridTooCoarse {
            points: grid.len(),
            required: 2,
        });
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Sp4Error::InvalidGrid(
            "grid must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Running integral of `f` from `grid[0]`, one adaptive Simpson rule per grid
/// interval with error estimate below `tol` on each.
pub fn cumulative_integral<F: Fn(f64) -> f64>(f: F, grid: &[f64], tol: f64) -> Result<Accumulated> {
    check_grid(grid)?;
    let mut values = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    let mut max_error: f64 = 0.0;
    values.push(0.0);
    for w in grid.windows(2) {
        let (v, e) = integrate(&f, w[0], w[1], tol);
        acc += v;
        max_error = max_error.max(e);
        values.push(acc);
    }
    Ok(Accumulated { values, max_error })
}

/// Running integral with exactly one Simpson panel per grid interval. Fourth
/// order in the grid step; used for convergence studies.
pub fn cumulative_simpson_fixed<F: Fn(f64) -> f64>(f: F, grid: &[f64]) -> Result<Vec<f64>> {
    check_grid(grid)?;
    let mut values = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    values.push(0.0);
    let mut fa = f(grid[0]);
    for w in grid.windows(2) {
        let fb = f(w[1]);
        acc += simpson_panel(fa, f(0.5 * (w[0] + w[1])), fb, w[1] - w[0]);
        values.push(acc);
        fa = fb;
    }
    Ok(values)
}
