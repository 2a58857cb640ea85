//! Large-argument expansions of `Ai` and `Ai'`.
//!
//! With `zeta = 2 x^(3/2) / 3` and the coefficients
//! `u_k = (2k+1)(2k+3)...(6k-1) / (216^k k!)`, `v_k = -(6k+1)/(6k-1) u_k`:
//!
//! ```text
//! Ai(x)   ~ exp(-zeta) / (2 sqrt(pi) x^(1/4)) sum (-1)^k u_k / zeta^k
//! Ai'(x)  ~ -x^(1/4) exp(-zeta) / (2 sqrt(pi)) sum (-1)^k v_k / zeta^k
//! Ai(-x)  ~ [cos(zeta - pi/4) P_u + sin(zeta - pi/4) Q_u] / (sqrt(pi) x^(1/4))
//! Ai'(-x) ~ x^(1/4) [sin(zeta - pi/4) P_v - cos(zeta - pi/4) Q_v] / sqrt(pi)
//! ```
//!
//! where `P` collects the even and `Q` the odd coefficients with alternating
//! signs. All series are cut at their smallest term.

use core::f64::consts::{FRAC_PI_4, PI};

const MAX_TERMS: usize = 120;

#[inline]
fn next_u(prev: f64, k: usize) -> f64 {
    let k = k as f64;
    prev * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k)
}

#[inline]
fn v_from_u(u: f64, k: usize) -> f64 {
    if k == 0 {
        1.0
    } else {
        let k = k as f64;
        -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u
    }
}

/// Sums `sum (-1)^k c_k / zeta^k` split by parity of `k`, stopping at the
/// smallest term. Returns `(even part, odd part)` where the odd part carries
/// its own `(-1)^((k-1)/2)` alternation as used in the oscillatory forms.
fn split_sums(zeta: f64, use_v: bool) -> (f64, f64, f64) {
    let mut u = 1.0;
    let mut zpow = 1.0;
    let mut even = 0.0;
    let mut odd = 0.0;
    let mut alternating = 0.0;
    let mut prev_mag = f64::INFINITY;
    for k in 0..MAX_TERMS {
        if k > 0 {
            u = next_u(u, k);
            zpow *= zeta;
        }
        let c = if use_v { v_from_u(u, k) } else { u };
        let term = c / zpow;
        let mag = libm::fabs(term);
        if mag > prev_mag {
            break;
        }
        prev_mag = mag;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        alternating += sign * term;
        match k % 4 {
            0 => even += term,
            1 => odd += term,
            2 => even -= term,
            _ => odd -= term,
        }
        if mag < 1e-17 * libm::fabs(alternating) && mag < 1e-17 * (libm::fabs(even) + libm::fabs(odd)) {
            break;
        }
    }
    (alternating, even, odd)
}

/// `(Ai(x), Ai'(x))` for large positive `x`.
pub(crate) fn ai_decaying(x: f64) -> (f64, f64) {
    let root4 = libm::sqrt(libm::sqrt(x));
    let zeta = 2.0 / 3.0 * x * libm::sqrt(x);
    let damp = libm::exp(-zeta) / (2.0 * libm::sqrt(PI));
    let (su, _, _) = split_sums(zeta, false);
    let (sv, _, _) = split_sums(zeta, true);
    (damp / root4 * su, -damp * root4 * sv)
}

/// `(Ai(-x), Ai'(-x))` for large positive `x`.
pub(crate) fn ai_oscillatory(x: f64) -> (f64, f64) {
    let root4 = libm::sqrt(libm::sqrt(x));
    let zeta = 2.0 / 3.0 * x * libm::sqrt(x);
    let theta = zeta - FRAC_PI_4;
    let (sin_t, cos_t) = libm::sincos(theta);
    let (_, pu, qu) = split_sums(zeta, false);
    let (_, pv, qv) = split_sums(zeta, true);
    let norm = 1.0 / libm::sqrt(PI);
    let ai = norm / root4 * (cos_t * pu + sin_t * qu);
    let aip = norm * root4 * (sin_t * pv - cos_t * qv);
    (ai, aip)
}
