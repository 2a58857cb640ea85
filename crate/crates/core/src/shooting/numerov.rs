use alloc::vec::Vec;

use crate::{Error, Result};

/// Amplitude placed next to the zero boundary value in the forbidden region.
pub(crate) const SEED: f64 = 1e-300;
const RENORM_EVERY: usize = 64;
const RENORM_ABOVE: f64 = 1e150;

/// Numerov recursion for `y'' = q y` on a uniform grid.
///
/// `w[k] = 1 - h^2 q[k] / 12`. `y` must hold the two starting values; the
/// remaining values are pushed. Every 64 steps the whole history is rescaled
/// if it has grown past 1e150, so only the shape of `y` is meaningful.
/// `x_at(k)` is only used for error reporting.
pub(crate) fn march(w: &[f64], y: &mut Vec<f64>, x_at: impl Fn(usize) -> f64) -> Result<()> {
    debug_assert!(y.len() == 2 && w.len() >= 2);
    for k in 1..w.len() - 1 {
        let next = ((12.0 - 10.0 * w[k]) * y[k] - w[k - 1] * y[k - 1]) / w[k + 1];
        y.push(next);
        if k % RENORM_EVERY == 0 {
            let mag = libm::fabs(next);
            if !mag.is_finite() {
                return Err(Error::Overflow { x: x_at(k + 1) });
            }
            if mag > RENORM_ABOVE {
                let s = 1.0 / RENORM_ABOVE;
                y.iter_mut().for_each(|v| *v *= s);
            }
        }
    }
    if y.iter().rev().take(RENORM_EVERY + 1).any(|v| !v.is_finite()) {
        return Err(Error::Overflow { x: x_at(w.len() - 1) });
    }
    Ok(())
}

/// Fourth-order one-sided derivative at `y[0]` looking towards increasing index.
pub(crate) fn forward_derivative(y: &[f64], h: f64) -> f64 {
    (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) / (12.0 * h)
}

/// Fourth-order one-sided derivative at the last element looking backwards.
pub(crate) fn backward_derivative(y: &[f64], h: f64) -> f64 {
    let n = y.len() - 1;
    (25.0 * y[n] - 48.0 * y[n - 1] + 36.0 * y[n - 2] - 16.0 * y[n - 3] + 3.0 * y[n - 4]) / (12.0 * h)
}
