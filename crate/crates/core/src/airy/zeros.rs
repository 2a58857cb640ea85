use alloc::boxed::Box;
use core::f64::consts::PI;

use once_cell::race::OnceBox;

use super::airy_ai;
use crate::{Error, Result};

/// Largest zero index served by [`airy_zero`].
pub const MAX_ZERO_INDEX: usize = 50;

const NEWTON_MAX_ITER: usize = 50;
const RESIDUAL_TOL: f64 = 1e-13;

/// The `index`-th zero of `Ai` on the negative axis, `a_1 > a_2 > ...`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryZero {
    pub index: usize,
    pub value: f64,
}

/// `-[c (i - 1/4)]^(2/3)`, the leading large-index form of the `i`-th zero
/// with a caller-chosen coefficient `c`. The correct coefficient is `3 pi / 2`.
pub fn asymptotic_zero_with(i: usize, coefficient: f64) -> f64 {
    let t = coefficient * (i as f64 - 0.25);
    -libm::cbrt(t * t)
}

/// Leading asymptotic estimate `-[(3 pi / 2)(i - 1/4)]^(2/3)` of the `i`-th zero.
pub fn asymptotic_zero(i: usize) -> f64 {
    asymptotic_zero_with(i, 1.5 * PI)
}

static MEMO: [OnceBox<f64>; MAX_ZERO_INDEX] = [const { OnceBox::new() }; MAX_ZERO_INDEX];

/// The `i`-th negative zero of `Ai`, `1 <= i <= 50`.
///
/// Seeded from [`asymptotic_zero`] and Newton-refined with `Ai / Ai'`.
/// Results are memoized; concurrent first calls may refine twice but every
/// caller observes the same stored value.
pub fn airy_zero(i: usize) -> Result<AiryZero> {
    if i == 0 || i > MAX_ZERO_INDEX {
        return Err(Error::IndexOutOfRange { index: i, min: 1, max: MAX_ZERO_INDEX });
    }
    let value = match MEMO[i - 1].get() {
        Some(v) => *v,
        None => {
            let v = refine(i)?;
            *MEMO[i - 1].get_or_init(|| Box::new(v))
        }
    };
    Ok(AiryZero { index: i, value })
}

/// The first `count` zeros.
pub fn airy_zeros(count: usize) -> Result<alloc::vec::Vec<AiryZero>> {
    (1..=count).map(airy_zero).collect()
}

fn refine(i: usize) -> Result<f64> {
    let mut a = asymptotic_zero(i);
    for _ in 0..NEWTON_MAX_ITER {
        let (ai, aip) = airy_ai(a)?;
        let step = ai / aip;
        a -= step;
        if libm::fabs(step) <= 4.0 * f64::EPSILON * libm::fabs(a) {
            break;
        }
    }
    let (residual, _) = airy_ai(a)?;
    if libm::fabs(residual) < RESIDUAL_TOL {
        Ok(a)
    } else {
        Err(Error::ConvergenceFailure { iterations: NEWTON_MAX_ITER, estimate: a })
    }
}
