use serde::{Deserialize, Serialize};

use crate::error::{Result, Sp4Error};

/// Strictly increasing sample times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TimeGrid {
    points: Vec<f64>,
}

impl TimeGrid {
    /// `points` equally spaced samples from `t0` to `t1` inclusive.
    pub fn uniform(t0: f64, t1: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Sp4Error::GridTooCoarse {
                points,
                required: 2,
            });
        }
        if !(t1 > t0) || !t0.is_finite() || !t1.is_finite() {
            return Err(Sp4Error::InvalidGrid(format!(
                "need finite t0 < t1, got [{t0}, {t1}]"
            )));
        }
        let h = (t1 - t0) / (points - 1) as f64;
        let mut v: Vec<f64> = (0..points).map(|k| t0 + k as f64 * h).collect();
        v[points - 1] = t1;
        Ok(TimeGrid { points: v })
    }

    /// Uniform grid whose spacing is `step` rounded so it divides `[t0, t1]`.
    pub fn with_step(t0: f64, t1: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Sp4Error::InvalidGrid(format!(
                "step must be positive, got {step}"
            )));
        }
        let n = ((t1 - t0) / step).round() as usize;
        Self::uniform(t0, t1, n + 1)
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Sp4Error::GridTooCoarse {
                points: points.len(),
                required: 2,
            });
        }
        if points.iter().any(|t| !t.is_finite()) || points.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Sp4Error::InvalidGrid(
                "grid must be finite and strictly increasing".into(),
            ));
        }
        Ok(TimeGrid { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn start(&self) -> f64 {
        self.points[0]
    }

    pub fn end(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// The common spacing if the grid is uniform to relative precision 1e-9.
    pub fn uniform_step(&self) -> Option<f64> {
        let h = (self.end() - self.start()) / (self.len() - 1) as f64;
        let uniform = self
            .points
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs().max(1.0));
        uniform.then_some(h)
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().copied()
    }
}

impl TryFrom<Vec<f64>> for TimeGrid {
    type Error = Sp4Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        TimeGrid::from_points(v)
    }
}

impl From<TimeGrid> for Vec<f64> {
    fn from(g: TimeGrid) -> Self {
        g.points
    }
}
