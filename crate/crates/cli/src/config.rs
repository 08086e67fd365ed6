//! Scenario configuration: one JSON document per run.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sp4_core::hamiltonian::{
    CoupledOscillatorParams, DiscriminantForm, EigenMethod, ScalarProfile, DEFAULT_EP_TOL,
};
use sp4_core::lr_ode::{ClosedFormParams, CoefficientVector, EvolveOptions};
use sp4_core::point_transform::PointTransformParams;
use sp4_core::{TimeGrid, Tolerances};

use crate::error::{CliError, Result};

/// Smallest grid the finite-difference checks can use.
pub const MIN_GRID_POINTS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    AlgebraCheck,
    LrClosedForm,
    LrOde,
    PointTransform,
    RegimeMap,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::AlgebraCheck,
        Mode::LrClosedForm,
        Mode::LrOde,
        Mode::PointTransform,
        Mode::RegimeMap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::AlgebraCheck => "algebra-check",
            Mode::LrClosedForm => "lr-closed-form",
            Mode::LrOde => "lr-ode",
            Mode::PointTransform => "point-transform",
            Mode::RegimeMap => "regime-map",
        }
    }
}

/// `steps` uniform intervals on `[t0, t1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub t0: f64,
    pub t1: f64,
    pub steps: usize,
}

impl GridConfig {
    pub fn build(&self) -> Result<TimeGrid> {
        if self.steps + 1 < MIN_GRID_POINTS {
            return Err(CliError::ConfigInvalid(format!(
                "grid.steps: need at least {} points, got {}",
                MIN_GRID_POINTS,
                self.steps + 1
            )));
        }
        TimeGrid::uniform(self.t0, self.t1, self.steps + 1)
            .map_err(|e| CliError::ConfigInvalid(format!("grid: {e}")))
    }

    pub fn step(&self) -> f64 {
        (self.t1 - self.t0) / self.steps as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraCheckParams {
    /// Random Hamiltonians and elements drawn for the sampled checks.
    #[serde(default = "default_samples")]
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosedFormConfig {
    pub alpha: f64,
    #[serde(default = "unit_profile")]
    pub lambda: ScalarProfile,
}

/// Coefficient profiles for the ODE route.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OdeSystem {
    /// `a = lambda`, `omega_x = alpha lambda`, `omega_y = lambda`, with a closed form.
    Proportional { alpha: f64, lambda: ScalarProfile },
    General {
        a: ScalarProfile,
        omega_x: ScalarProfile,
        omega_y: ScalarProfile,
        lambda: ScalarProfile,
    },
}

impl OdeSystem {
    pub fn oscillator(&self) -> CoupledOscillatorParams {
        match self {
            OdeSystem::Proportional { alpha, lambda } => {
                CoupledOscillatorParams::proportional(*alpha, lambda.clone())
            }
            OdeSystem::General {
                a,
                omega_x,
                omega_y,
                lambda,
            } => CoupledOscillatorParams {
                a: a.clone(),
                omega_x: omega_x.clone(),
                omega_y: omega_y.clone(),
                lambda: lambda.clone(),
            },
        }
    }

    pub fn closed_form(&self) -> Option<ClosedFormParams> {
        match self {
            OdeSystem::Proportional { alpha, lambda } => {
                Some(ClosedFormParams::new(*alpha, lambda.clone()))
            }
            OdeSystem::General { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverChoice {
    TimeOrdered,
    Commuting,
    #[default]
    Both,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LrOdeConfig {
    pub system: OdeSystem,
    #[serde(default)]
    pub solver: SolverChoice,
    #[serde(default)]
    pub evolve: EvolveOptions,
    /// Initial coefficients; the involutive `(0,0,1,1,0,...)` when absent.
    #[serde(default)]
    pub c0: Option<CoefficientVector>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointTransformConfig {
    pub system: PointTransformParams,
    /// Random `(x, y, t)` points for the PDE constraint check.
    #[serde(default = "default_pde_samples")]
    pub pde_samples: usize,
    /// Grid steps of the TDDE convergence study, coarse to fine.
    #[serde(default = "default_convergence_steps")]
    pub convergence_steps: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegimeMapConfig {
    pub system: CoupledOscillatorParams,
    #[serde(default = "default_eigen_method")]
    pub eigen_method: EigenMethod,
    #[serde(default)]
    pub discriminant: DiscriminantForm,
    #[serde(default = "default_ep_tol")]
    pub ep_tol: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModeParams {
    AlgebraCheck(AlgebraCheckParams),
    LrClosedForm(ClosedFormConfig),
    LrOde(LrOdeConfig),
    PointTransform(PointTransformConfig),
    RegimeMap(RegimeMapConfig),
}

impl ModeParams {
    pub fn mode(&self) -> Mode {
        match self {
            ModeParams::AlgebraCheck(_) => Mode::AlgebraCheck,
            ModeParams::LrClosedForm(_) => Mode::LrClosedForm,
            ModeParams::LrOde(_) => Mode::LrOde,
            ModeParams::PointTransform(_) => Mode::PointTransform,
            ModeParams::RegimeMap(_) => Mode::RegimeMap,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub params: ModeParams,
    pub grid: GridConfig,
    pub hbar: f64,
    pub tolerances: Tolerances,
    pub output_dir: Option<PathBuf>,
}

// On-disk layout shared by every mode.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document<P> {
    mode: Mode,
    params: P,
    grid: GridConfig,
    #[serde(default = "default_hbar")]
    hbar: f64,
    #[serde(default)]
    tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    output_dir: Option<PathBuf>,
}

#[derive(Deserialize)]
struct ModeOnly {
    mode: Mode,
}

fn default_samples() -> usize {
    100
}

fn default_pde_samples() -> usize {
    20
}

fn default_convergence_steps() -> Vec<f64> {
    vec![0.04, 0.02, 0.01, 0.005]
}

fn default_eigen_method() -> EigenMethod {
    EigenMethod::Numeric
}

fn default_ep_tol() -> f64 {
    DEFAULT_EP_TOL
}

fn default_hbar() -> f64 {
    1.0
}

fn unit_profile() -> ScalarProfile {
    ScalarProfile::constant(1.0)
}

fn parse_doc<P: DeserializeOwned>(text: &str) -> Result<Document<P>> {
    serde_json::from_str(text).map_err(|e| CliError::ConfigInvalid(e.to_string()))
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let mode = serde_json::from_str::<ModeOnly>(text)
            .map_err(|e| CliError::ConfigInvalid(e.to_string()))?
            .mode;
        macro_rules! typed {
            ($variant:ident) => {{
                let d = parse_doc(text)?;
                (
                    ModeParams::$variant(d.params),
                    d.grid,
                    d.hbar,
                    d.tolerances,
                    d.output_dir,
                )
            }};
        }
        let (params, grid, hbar, tolerances, output_dir) = match mode {
            Mode::AlgebraCheck => typed!(AlgebraCheck),
            Mode::LrClosedForm => typed!(LrClosedForm),
            Mode::LrOde => typed!(LrOde),
            Mode::PointTransform => typed!(PointTransform),
            Mode::RegimeMap => typed!(RegimeMap),
        };
        let cfg = ScenarioConfig {
            params,
            grid,
            hbar,
            tolerances,
            output_dir,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn mode(&self) -> Mode {
        self.params.mode()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, e: &dyn std::fmt::Display| {
            CliError::ConfigInvalid(format!("{field}: {e}"))
        };
        self.grid.build()?;
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(bad("hbar", &"must be positive"));
        }
        self.tolerances
            .validate()
            .map_err(|e| bad("tolerances", &e))?;
        match &self.params {
            ModeParams::AlgebraCheck(p) => {
                if p.samples == 0 {
                    return Err(bad("params.samples", &"must be at least 1"));
                }
            }
            ModeParams::LrClosedForm(p) => {
                ClosedFormParams::new(p.alpha, p.lambda.clone())
                    .validate()
                    .map_err(|e| bad("params", &e))?;
            }
            ModeParams::LrOde(p) => {
                p.system
                    .oscillator()
                    .validate()
                    .map_err(|e| bad("params.system", &e))?;
                if let Some(cf) = p.system.closed_form() {
                    cf.validate().map_err(|e| bad("params.system", &e))?;
                }
                let o = &p.evolve;
                if !(o.step_tol > 0.0 && o.commute_tol > 0.0 && o.expm_tol > 0.0) {
                    return Err(bad("params.evolve", &"tolerances must be positive"));
                }
            }
            ModeParams::PointTransform(p) => {
                p.system.validate().map_err(|e| bad("params.system", &e))?;
                let steps = &p.convergence_steps;
                if steps.len() == 1
                    || steps.iter().any(|h| !(*h > 0.0))
                    || steps.windows(2).any(|w| w[1] >= w[0])
                {
                    return Err(bad(
                        "params.convergence_steps",
                        &"need positive, strictly decreasing steps",
                    ));
                }
            }
            ModeParams::RegimeMap(p) => {
                p.system.validate().map_err(|e| bad("params.system", &e))?;
                if !(p.ep_tol >= 0.0) {
                    return Err(bad("params.ep_tol", &"must be non-negative"));
                }
            }
        }
        Ok(())
    }

    /// The configuration as a JSON value, defaults filled in.
    pub fn to_value(&self) -> serde_json::Value {
        fn doc<P: Serialize>(c: &ScenarioConfig, params: &P) -> serde_json::Value {
            serde_json::to_value(Document {
                mode: c.mode(),
                params,
                grid: c.grid,
                hbar: c.hbar,
                tolerances: c.tolerances,
                output_dir: c.output_dir.clone(),
            })
            .expect("config serializes")
        }
        match &self.params {
            ModeParams::AlgebraCheck(p) => doc(self, p),
            ModeParams::LrClosedForm(p) => doc(self, p),
            ModeParams::LrOde(p) => doc(self, p),
            ModeParams::PointTransform(p) => doc(self, p),
            ModeParams::RegimeMap(p) => doc(self, p),
        }
    }

    /// A complete example configuration for `mode`, defaults filled in.
    pub fn example(mode: Mode) -> Self {
        let grid = |t1: f64, steps: usize| GridConfig { t0: 0.0, t1, steps };
        let (params, grid) = match mode {
            Mode::AlgebraCheck => (
                ModeParams::AlgebraCheck(AlgebraCheckParams {
                    samples: default_samples(),
                }),
                grid(1.0, 10),
            ),
            Mode::LrClosedForm => (
                ModeParams::LrClosedForm(ClosedFormConfig {
                    alpha: 3.0,
                    lambda: unit_profile(),
                }),
                grid(5.0, 5000),
            ),
            Mode::LrOde => (
                ModeParams::LrOde(LrOdeConfig {
                    system: OdeSystem::Proportional {
                        alpha: 3.0,
                        lambda: ScalarProfile::sinusoid(1.0, 0.3, 1.0, 0.0),
                    },
                    solver: SolverChoice::Both,
                    evolve: EvolveOptions::default(),
                    c0: None,
                }),
                grid(5.0, 500),
            ),
            Mode::PointTransform => (
                ModeParams::PointTransform(PointTransformConfig {
                    system: PointTransformParams::new(2.0, 1.0, 0.5, unit_profile(), 0.2, 0.2),
                    pde_samples: default_pde_samples(),
                    convergence_steps: default_convergence_steps(),
                }),
                grid(4.0, 4000),
            ),
            Mode::RegimeMap => (
                ModeParams::RegimeMap(RegimeMapConfig {
                    system: CoupledOscillatorParams {
                        a: unit_profile(),
                        omega_x: ScalarProfile::constant(1.5),
                        omega_y: ScalarProfile::constant(0.5),
                        lambda: ScalarProfile::sinusoid(0.0, 1.2, 0.5, 0.0),
                    },
                    eigen_method: default_eigen_method(),
                    discriminant: DiscriminantForm::default(),
                    ep_tol: default_ep_tol(),
                }),
                grid(10.0, 200),
            ),
        };
        ScenarioConfig {
            params,
            grid,
            hbar: 1.0,
            tolerances: Tolerances::default(),
            output_dir: None,
        }
    }
}

/// Every mode's example configuration, as printed by `--describe`.
pub fn describe() -> String {
    let modes: serde_json::Map<String, serde_json::Value> = Mode::ALL
        .iter()
        .map(|m| (m.name().to_string(), ScenarioConfig::example(*m).to_value()))
        .collect();
    let doc = serde_json::json!({
        "grid": "steps uniform intervals on [t0, t1]; at least 5 points",
        "hbar": "defaults to 1",
        "output_dir": "optional; --out takes precedence",
        "modes": modes,
    });
    serde_json::to_string_pretty(&doc).expect("schema serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_round_trip_through_json() {
        for mode in Mode::ALL {
            let cfg = ScenarioConfig::example(mode);
            assert_eq!(
                ScenarioConfig::from_json(&cfg.to_value().to_string()).unwrap(),
                cfg
            );
        }
    }

    #[test]
    fn grid_needs_five_points() {
        let g = GridConfig {
            t0: 0.0,
            t1: 1.0,
            steps: 3,
        };
        assert!(matches!(g.build(), Err(CliError::ConfigInvalid(_))));
        assert_eq!(GridConfig { steps: 4, ..g }.build().unwrap().len(), 5);
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let err =
            ScenarioConfig::from_json("{\"mode\": \"regime-map\",\n \"grid\": [}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn ode_system_tag_selects_profiles() {
        let text = r#"{"mode": "lr-ode", "grid": {"t0": 0, "t1": 1, "steps": 10},
            "params": {"system": {"kind": "general",
                "a": {"kind": "constant", "value": 1}, "omega_x": {"kind": "constant", "value": 2},
                "omega_y": {"kind": "constant", "value": 1}, "lambda": {"kind": "constant", "value": 0.3}}}}"#;
        let cfg = ScenarioConfig::from_json(text).unwrap();
        let ModeParams::LrOde(p) = cfg.params else {
            panic!()
        };
        assert!(p.system.closed_form().is_none());
        assert_eq!(p.solver, SolverChoice::Both);
    }
}
