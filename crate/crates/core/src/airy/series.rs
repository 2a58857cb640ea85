//! Maclaurin series for `Ai` and `Ai'`, summed in double-double.
//!
//! `Ai(z) = c1 f(z) - c2 g(z)` with
//!
//! ```text
//! f(z) = sum_k 3^k (1/3)_k z^(3k)   / (3k)!
//! g(z) = sum_k 3^k (2/3)_k z^(3k+1) / (3k+1)!
//! ```
//!
//! For large `|z|` the two sums grow like `exp(2|z|^(3/2)/3)` while `Ai` stays
//! bounded (or decays), so the cancellation costs roughly `log10` of that
//! factor in digits. Double-double keeps about 32 digits, which leaves more
//! than enough at the switch radius.

use super::dd::Dd;

/// `Ai(0) = 3^(-2/3) / Gamma(2/3)`.
const C1: Dd = Dd::new(0.3550280538878172, 2.05233632436212e-17);
/// `-Ai'(0) = 3^(-1/3) / Gamma(1/3)`.
const C2: Dd = Dd::new(0.2588194037928068, -2.522243111610832e-17);

const MAX_TERMS: usize = 400;

pub(crate) fn ai_maclaurin(z: f64) -> (f64, f64) {
    if z == 0.0 {
        return (C1.to_f64(), -C2.to_f64());
    }
    let zd = Dd::from_f64(z);
    let z2 = zd * zd;
    let z3 = z2 * zd;

    let mut t = Dd::from_f64(1.0); // f terms
    let mut s = zd; // g terms
    let mut q = z2.div_f64(2.0); // f' terms, starting at k = 1
    let mut r = Dd::from_f64(1.0); // g' terms
    let (mut f, mut g, mut fp, mut gp) = (t, s, q, r);

    for k in 1..MAX_TERMS {
        let kf = k as f64;
        t = (t * z3).div_f64((3.0 * kf - 1.0) * (3.0 * kf));
        s = (s * z3).div_f64((3.0 * kf) * (3.0 * kf + 1.0));
        r = (r * z3).div_f64((3.0 * kf) * (3.0 * kf - 2.0));
        f = f + t;
        g = g + s;
        gp = gp + r;
        if k >= 2 {
            q = (q * z3).div_f64((3.0 * kf - 3.0) * (3.0 * kf - 1.0));
            fp = fp + q;
        }
        let scale = f.abs_hi() + g.abs_hi() + fp.abs_hi() + gp.abs_hi();
        let last = t.abs_hi() + s.abs_hi() + q.abs_hi() + r.abs_hi();
        if k > 3 && last <= 1e-34 * scale {
            break;
        }
    }

    let ai = C1 * f - C2 * g;
    let aip = C1 * fp - C2 * gp;
    (ai.to_f64(), aip.to_f64())
}
