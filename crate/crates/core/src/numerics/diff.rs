use std::ops::{Add, Mul, Sub};

use crate::error::{Result, Sp4Error};

pub const STENCIL_POINTS: usize = 5;

// Antisymmetric half-stencils: d = sum_j w_j (s[c+j] - s[c-j]) / h.
fn half_weights(order: usize) -> Option<&'static [f64]> {
    match order {
        2 => Some(&[0.5]),
        4 => Some(&[2.0 / 3.0, -1.0 / 12.0]),
        6 => Some(&[0.75, -0.15, 1.0 / 60.0]),
        8 => Some(&[0.8, -0.2, 4.0 / 105.0, -1.0 / 280.0]),
        _ => None,
    }
}

/// Fourth-order central first derivative of uniformly spaced samples.
///
/// Output index `k` is the derivative at input index `k + 2`; the two samples at
/// each end have no centred stencil and are dropped.
pub fn central_diff<T>(samples: &[T], step: f64) -> Result<Vec<T>>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    central_diff_order(samples, step, 4)
}

/// Central first derivative of order 2, 4, 6 or 8. Output index `k` is the
/// derivative at input index `k + order / 2`.
pub fn central_diff_order<T>(samples: &[T], step: f64, order: usize) -> Result<Vec<T>>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let w = half_weights(order)
        .ok_or_else(|| Sp4Error::InvalidGrid(format!("unsupported stencil order {order}")))?;
    let width = order + 1;
    let required = width.max(STENCIL_POINTS);
    if samples.len() < required {
        return Err(Sp4Error::GridTooCoarse {
            points: samples.len(),
            required,
        });
    }
    let half = order / 2;
    let inv = 1.0 / step;
    Ok(samples
        .windows(width)
        .map(|s| {
            let mut acc = (s[half + 1] - s[half - 1]) * w[0];
            for (j, wj) in w.iter().enumerate().skip(1) {
                acc = acc + (s[half + 1 + j] - s[half - 1 - j]) * *wj;
            }
            acc * inv
        })
        .collect())
}
