//! Bracketed scalar root finding (Brent: bisection, secant and inverse
//! quadratic steps).

use crate::{Error, Result};

/// Finds a root of `f` in `[a, b]` given `fa = f(a)`, `fb = f(b)` of opposite
/// sign (or one of them zero). Stops when the bracket is narrower than
/// `rel_tol * |x| + abs_tol`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn brent<F>(mut f: F, a: f64, b: f64, fa: f64, fb: f64, rel_tol: f64, abs_tol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if (fa < 0.0) == (fb < 0.0) {
        return Err(Error::ConvergenceFailure { iterations: 0, estimate: 0.5 * (a + b) });
    }
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if libm::fabs(fc) < libm::fabs(fb) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * libm::fabs(b) + 0.5 * (rel_tol * libm::fabs(b) + abs_tol);
        let m = 0.5 * (c - b);
        if libm::fabs(m) <= tol || fb == 0.0 {
            return Ok(b);
        }
        if libm::fabs(e) >= tol && libm::fabs(fa) > libm::fabs(fb) {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < libm::fmin(3.0 * m * q - libm::fabs(tol * q), libm::fabs(e * q)) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if libm::fabs(d) > tol { d } else if m > 0.0 { tol } else { -tol };
        fb = f(b)?;
    }
    Err(Error::ConvergenceFailure { iterations: max_iter, estimate: b })
}
