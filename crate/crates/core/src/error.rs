use thiserror::Error;

pub type Result<T> = std::result::Result<T, Sp4Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Sp4Error {
    #[error("t = {t} lies outside the profile domain [{lo}, {hi}]")]
    ProfileDomain { t: f64, lo: f64, hi: f64 },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("projection onto sp(4) left a residual of {residual:e} (tolerance {tolerance:e})")]
    ProjectionLeak { residual: f64, tolerance: f64 },

    #[error("coefficient matrices do not commute: probe norm {norm:e} exceeds {tolerance:e}")]
    NonCommuting { norm: f64, tolerance: f64 },

    #[error("step halving did not converge on [{t0}, {t1}] after {halvings} halvings (last change {change:e})")]
    StepNotConverged {
        t0: f64,
        t1: f64,
        halvings: u32,
        change: f64,
    },

    #[error("alpha = {alpha} gives a degenerate closed form (need alpha > -1)")]
    DegenerateAlpha { alpha: f64 },

    #[error("chi_plus = c3 c4 + c5 c6 vanishes (|chi_plus| = {magnitude:e})")]
    ChiPlusZero { magnitude: f64 },

    #[error("grid has {points} points, need at least {required}")]
    GridTooCoarse { points: usize, required: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("arctanh argument {argument} is outside the open unit interval")]
    ArctanhDomain { argument: f64 },

    #[error("alpha = {alpha} and beta = {beta} have equal magnitude with nonzero coupling")]
    EqualFrequencies { alpha: f64, beta: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
