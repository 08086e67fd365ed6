use serde::{Deserialize, Serialize};

use crate::error::{Result, Sp4Error};
use crate::numerics::quadrature::{integrate, DEFAULT_QUAD_TOL};

/// A real function of time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScalarProfile {
    Constant {
        value: f64,
    },
    /// `offset + amp * sin(freq * t + phase)`
    Sinusoid {
        amp: f64,
        freq: f64,
        #[serde(default)]
        phase: f64,
        #[serde(default)]
        offset: f64,
    },
    /// Coefficients in ascending powers of t.
    Polynomial {
        coeffs: Vec<f64>,
    },
    /// Piecewise-linear interpolation of samples; no extrapolation.
    Tabulated {
        t: Vec<f64>,
        values: Vec<f64>,
    },
}

impl ScalarProfile {
    pub fn constant(value: f64) -> Self {
        ScalarProfile::Constant { value }
    }

    pub fn sinusoid(offset: f64, amp: f64, freq: f64, phase: f64) -> Self {
        ScalarProfile::Sinusoid {
            amp,
            freq,
            phase,
            offset,
        }
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        ScalarProfile::Polynomial { coeffs }
    }

    pub fn tabulated(t: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let p = ScalarProfile::Tabulated { t, values };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        match self {
            ScalarProfile::Constant { value } if !value.is_finite() => Err(
                Sp4Error::InvalidProfile("constant value is not finite".into()),
            ),
            ScalarProfile::Sinusoid {
                amp,
                freq,
                phase,
                offset,
            } if !finite(&[*amp, *freq, *phase, *offset]) => Err(Sp4Error::InvalidProfile(
                "sinusoid parameters must be finite".into(),
            )),
            ScalarProfile::Polynomial { coeffs } if !finite(coeffs) => Err(
                Sp4Error::InvalidProfile("polynomial coefficients must be finite".into()),
            ),
            ScalarProfile::Tabulated { t, values } => {
                if t.len() != values.len() {
                    return Err(Sp4Error::InvalidProfile(format!(
                        "table has {} times but {} values",
                        t.len(),
                        values.len()
                    )));
                }
                if t.len() < 2 {
                    return Err(Sp4Error::InvalidProfile(
                        "table needs at least two samples".into(),
                    ));
                }
                if !finite(t) || !finite(values) || t.windows(2).any(|w| !(w[1] > w[0])) {
                    return Err(Sp4Error::InvalidProfile(
                        "table times must be finite and strictly increasing".into(),
                    ));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Closed interval on which the profile may be evaluated.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            ScalarProfile::Tabulated { t, .. } => (t[0], t[t.len() - 1]),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Lower limit of [`antiderivative`](Self::antiderivative): 0, or the
    /// first sample of a table.
    pub fn origin(&self) -> f64 {
        match self {
            ScalarProfile::Tabulated { t, .. } => t[0],
            _ => 0.0,
        }
    }

    fn check(&self, t: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if t.is_nan() || t < lo || t > hi {
            return Err(Sp4Error::ProfileDomain { t, lo, hi });
        }
        Ok(())
    }

    // Index of the table segment containing t (already domain-checked).
    fn segment(t: &[f64], x: f64) -> usize {
        let k = t.partition_point(|&s| s <= x);
        k.clamp(1, t.len() - 1) - 1
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        Ok(match self {
            ScalarProfile::Constant { value } => *value,
            ScalarProfile::Sinusoid {
                amp,
                freq,
                phase,
                offset,
            } => offset + amp * (freq * t + phase).sin(),
            ScalarProfile::Polynomial { coeffs } => {
                coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
            }
            ScalarProfile::Tabulated { t: ts, values } => {
                let k = Self::segment(ts, t);
                let w = (t - ts[k]) / (ts[k + 1] - ts[k]);
                values[k] + w * (values[k + 1] - values[k])
            }
        })
    }

    /// First derivative; for tables, the slope of the segment to the right of
    /// a knot (left at the final sample).
    pub fn derivative(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        Ok(match self {
            ScalarProfile::Constant { .. } => 0.0,
            ScalarProfile::Sinusoid {
                amp, freq, phase, ..
            } => amp * freq * (freq * t + phase).cos(),
            ScalarProfile::Polynomial { coeffs } => coeffs
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (k, c)| acc * t + k as f64 * c),
            ScalarProfile::Tabulated { t: ts, values } => {
                let k = Self::segment(ts, t);
                (values[k + 1] - values[k]) / (ts[k + 1] - ts[k])
            }
        })
    }

    /// Integral over `[a, b]` by adaptive Simpson (split at table knots, where
    /// the rule is then exact).
    pub fn integral(&self, a: f64, b: f64) -> Result<f64> {
        self.check(a)?;
        self.check(b)?;
        if a > b {
            return Ok(-self.integral(b, a)?);
        }
        let f = |s: f64| self.eval(s).unwrap_or(f64::NAN);
        let value = match self {
            ScalarProfile::Tabulated { t, .. } => {
                let mut cuts = vec![a];
                cuts.extend(t.iter().copied().filter(|&s| s > a && s < b));
                cuts.push(b);
                cuts.windows(2)
                    .map(|w| integrate(f, w[0], w[1], DEFAULT_QUAD_TOL).0)
                    .sum()
            }
            _ => integrate(f, a, b, DEFAULT_QUAD_TOL).0,
        };
        Ok(value)
    }

    pub fn antiderivative(&self, t: f64) -> Result<f64> {
        self.integral(self.origin(), t)
    }

    /// Antiderivative sampled on an increasing grid, accumulated interval by
    /// interval so neighbouring samples share their quadrature error.
    pub fn antiderivative_on(&self, grid: &[f64]) -> Result<Vec<f64>> {
        let Some(&first) = grid.first() else {
            return Ok(Vec::new());
        };
        let mut out = Vec::with_capacity(grid.len());
        let mut acc = self.antiderivative(first)?;
        out.push(acc);
        for w in grid.windows(2) {
            acc += self.integral(w[0], w[1])?;
            out.push(acc);
        }
        Ok(out)
    }

    /// The profile multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        match self {
            ScalarProfile::Constant { value } => ScalarProfile::Constant { value: k * value },
            ScalarProfile::Sinusoid {
                amp,
                freq,
                phase,
                offset,
            } => ScalarProfile::Sinusoid {
                amp: k * amp,
                freq: *freq,
                phase: *phase,
                offset: k * offset,
            },
            ScalarProfile::Polynomial { coeffs } => ScalarProfile::Polynomial {
                coeffs: coeffs.iter().map(|c| k * c).collect(),
            },
            ScalarProfile::Tabulated { t, values } => ScalarProfile::Tabulated {
                t: t.clone(),
                values: values.iter().map(|v| k * v).collect(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinusoid_and_its_antiderivative() {
        let p = ScalarProfile::sinusoid(1.0, 0.3, 2.0, 0.1);
        let t = 1.7;
        assert!((p.eval(t).unwrap() - (1.0 + 0.3 * (2.0 * t + 0.1).sin())).abs() < 1e-15);
        let exact = t - 0.15 * ((2.0 * t + 0.1).cos() - 0.1f64.cos());
        assert!((p.antiderivative(t).unwrap() - exact).abs() < 1e-12);
    }

    #[test]
    fn polynomial_derivative() {
        let p = ScalarProfile::polynomial(vec![1.0, -2.0, 0.5, 3.0]);
        let t = 0.7;
        assert!(
            (p.eval(t).unwrap() - (1.0 - 2.0 * t + 0.5 * t * t + 3.0 * t.powi(3))).abs() < 1e-15
        );
        assert!((p.derivative(t).unwrap() - (-2.0 + t + 9.0 * t * t)).abs() < 1e-14);
    }

    #[test]
    fn tabulated_refuses_extrapolation() {
        let p = ScalarProfile::tabulated(vec![0.0, 1.0, 3.0], vec![1.0, 3.0, -1.0]).unwrap();
        assert_eq!(p.eval(0.5).unwrap(), 2.0);
        assert_eq!(p.eval(2.0).unwrap(), 1.0);
        assert_eq!(p.derivative(1.0).unwrap(), -2.0);
        assert!(matches!(p.eval(3.5), Err(Sp4Error::ProfileDomain { .. })));
        // Trapezoids: 2 + 2
        assert!((p.antiderivative(3.0).unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn tabulated_validation() {
        assert!(ScalarProfile::tabulated(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(ScalarProfile::tabulated(vec![1.0, 0.0], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn serde_tagging() {
        let p: ScalarProfile =
            serde_json::from_str(r#"{"kind":"sinusoid","amp":0.2,"freq":1.0,"offset":1.0}"#)
                .unwrap();
        assert_eq!(p, ScalarProfile::sinusoid(1.0, 0.2, 1.0, 0.0));
    }
}
