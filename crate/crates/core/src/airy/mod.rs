//! Airy function `Ai` of a real argument, its derivative and its zeros.
//!
//! For `|z| <= SERIES_RADIUS` the Maclaurin series is summed in
//! double-double arithmetic. Beyond it the standard large-argument
//! expansions are used: the exponentially decaying form for `z > 0` and the
//! oscillatory form for `z < 0`. At the switch radius both representations
//! agree to better than 1e-14.

mod asymptotic;
mod dd;
mod series;
mod zeros;

pub use zeros::{airy_zero, airy_zeros, asymptotic_zero, asymptotic_zero_with, AiryZero, MAX_ZERO_INDEX};

use crate::{Error, Result};

/// Largest `|z|` accepted by [`airy_ai`].
pub const MAX_ARGUMENT: f64 = 200.0;

/// Radius below which the Maclaurin series is used.
pub const SERIES_RADIUS: f64 = 8.0;

/// Returns `(Ai(z), Ai'(z))`.
pub fn airy_ai(z: f64) -> Result<(f64, f64)> {
    if !z.is_finite() || libm::fabs(z) > MAX_ARGUMENT {
        return Err(Error::OutOfRange { z, limit: MAX_ARGUMENT });
    }
    Ok(if libm::fabs(z) <= SERIES_RADIUS {
        series::ai_maclaurin(z)
    } else if z < 0.0 {
        asymptotic::ai_oscillatory(-z)
    } else {
        asymptotic::ai_decaying(z)
    })
}

/// `(Ai(z), Ai'(z))` from the Maclaurin series regardless of `|z|`.
///
/// Accurate to full double precision up to `|z|` of about 10; used to check
/// the switch point.
pub fn airy_ai_series(z: f64) -> (f64, f64) {
    series::ai_maclaurin(z)
}

/// `(Ai(z), Ai'(z))` from the large-argument expansion regardless of `|z|`.
pub fn airy_ai_asymptotic(z: f64) -> (f64, f64) {
    if z < 0.0 {
        asymptotic::ai_oscillatory(-z)
    } else {
        asymptotic::ai_decaying(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec::Vec;

    /// Plain f64 Maclaurin sum, kept separate from the double-double path.
    /// Good to ~1e-14 for |z| < 5.
    fn naive_series(z: f64) -> f64 {
        let c1 = libm::pow(3.0, -2.0 / 3.0) / libm::tgamma(2.0 / 3.0);
        let c2 = libm::pow(3.0, -1.0 / 3.0) / libm::tgamma(1.0 / 3.0);
        let z3 = z * z * z;
        let (mut t, mut s) = (1.0, z);
        let (mut f, mut g) = (t, s);
        for k in 1..60 {
            let k = k as f64;
            t *= z3 / ((3.0 * k - 1.0) * 3.0 * k);
            s *= z3 / (3.0 * k * (3.0 * k + 1.0));
            f += t;
            g += s;
        }
        c1 * f - c2 * g
    }

    fn bisect_sign_change(mut lo: f64, mut hi: f64) -> f64 {
        let mut flo = naive_series(lo);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let fm = naive_series(mid);
            if fm == 0.0 {
                return mid;
            }
            if (fm < 0.0) == (flo < 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn values_at_origin() {
        let (ai, aip) = airy_ai(0.0).unwrap();
        let ai0 = libm::pow(3.0, -2.0 / 3.0) / libm::tgamma(2.0 / 3.0);
        let aip0 = -libm::pow(3.0, -1.0 / 3.0) / libm::tgamma(1.0 / 3.0);
        assert!((ai - ai0).abs() < 1e-15);
        assert!((aip - aip0).abs() < 1e-15);
        assert!((ai - 0.355028053887817).abs() < 1e-15);
        assert!((aip + 0.258819403792807).abs() < 1e-15);
    }

    #[test]
    fn decays_for_positive_argument() {
        let (ai, aip) = airy_ai(10.0).unwrap();
        assert!(ai > 0.0 && ai < 1e-9);
        assert!(aip < 0.0);
        let (ai, _) = airy_ai(200.0).unwrap();
        assert!(ai >= 0.0 && ai < 1e-300);
    }

    #[test]
    fn matches_reference_values() {
        // Reference values from an arbitrary-precision evaluation.
        let cases = [
            (-20.0, -0.17640612707798468959, 0.8928628567364712384),
            (-8.1, -0.14290814709358112018, 0.85621858632862497363),
            (-7.9, 0.041701883617386709387, 0.94004299802628024348),
            (-3.0, -0.37881429367765807435, 0.31458376921659881365),
            (2.0, 0.034924130423274379135, -0.053090384433653631704),
            (8.0, 4.6922076160992316256e-8, -1.3414392979067865743e-7),
            (10.0, 1.1047532552898685934e-10, -3.5206336767389236366e-10),
        ];
        for (z, ai_ref, aip_ref) in cases {
            let (ai, aip) = airy_ai(z).unwrap();
            assert!(((ai - ai_ref) / ai_ref).abs() < 1e-12, "Ai({z}) = {ai}, want {ai_ref}");
            assert!(((aip - aip_ref) / aip_ref).abs() < 1e-12, "Ai'({z}) = {aip}, want {aip_ref}");
        }
    }

    #[test]
    fn agrees_with_naive_series_where_it_is_reliable() {
        for k in 0..=80 {
            let z = -4.0 + 0.1 * k as f64;
            let (ai, _) = airy_ai(z).unwrap();
            assert!((ai - naive_series(z)).abs() < 1e-13, "z={z}");
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(airy_ai(201.0), Err(Error::OutOfRange { .. })));
        assert!(airy_ai(-250.0).is_err());
        assert!(airy_ai(f64::NAN).is_err());
    }

    #[test]
    fn series_and_asymptotic_overlap_at_switch() {
        for z in [-SERIES_RADIUS, SERIES_RADIUS] {
            let (a, ap) = airy_ai_series(z);
            let (b, bp) = airy_ai_asymptotic(z);
            assert!(((a - b) / b).abs() < 1e-12, "z={z}: {a} vs {b}");
            assert!(((ap - bp) / bp).abs() < 1e-12, "z={z}: {ap} vs {bp}");
        }
    }

    #[test]
    fn first_zeros_match_bisection_oracle() {
        let a1 = bisect_sign_change(-3.0, -2.0);
        let a2 = bisect_sign_change(-4.5, -3.5);
        assert!((a1 + 2.338107410459767).abs() < 1e-12);
        assert!((a2 + 4.087949444130970).abs() < 1e-12);
        assert!((airy_zero(1).unwrap().value - a1).abs() < 1e-11);
        assert!((airy_zero(2).unwrap().value - a2).abs() < 1e-11);
    }

    #[test]
    fn zeros_are_refined_and_ordered() {
        let zeros = airy_zeros(MAX_ZERO_INDEX).unwrap();
        for w in zeros.windows(2) {
            assert!(w[1].value < w[0].value);
        }
        for z in &zeros {
            assert!(airy_ai(z.value).unwrap().0.abs() < 1e-13, "i={}", z.index);
        }
        // a_10 and a_50 from an arbitrary-precision zero finder.
        assert!((zeros[9].value + 12.8287767528657572).abs() < 1e-11);
        assert!((zeros[49].value + 38.021008677255254433).abs() < 1e-11);
        assert!(airy_zero(0).is_err());
        assert!(matches!(airy_zero(51), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn first_zero_gives_symmetric_wedge_level() {
        let a1 = airy_zero(1).unwrap().value;
        let e = -a1 / libm::cbrt(2.0);
        assert!((e - 1.855757081).abs() < 5e-10);
    }

    #[test]
    fn asymptotic_zero_consistency() {
        for i in 10..=MAX_ZERO_INDEX {
            let a = airy_zero(i).unwrap().value;
            assert!(((a - asymptotic_zero(i)) / a).abs() < 1e-3);
        }
    }

    #[test]
    fn ode_residual() {
        let h = 1e-4;
        let pts: Vec<f64> = (0..500).map(|k| -20.0 + 25.0 * k as f64 / 499.0).collect();
        for z in pts {
            let f = |x: f64| airy_ai(x).unwrap().0;
            let second = (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h);
            let zai = z * f(z);
            assert!((second - zai).abs() <= 1e-6 * (1.0 + zai.abs()), "z={z}");
        }
    }

    #[test]
    fn one_sign_change_between_consecutive_zeros() {
        let zeros = airy_zeros(12).unwrap();
        let count_changes = |lo: f64, hi: f64| {
            let n = 400;
            let mut changes = 0;
            let mut prev = airy_ai(lo).unwrap().0;
            for k in 1..=n {
                let x = lo + (hi - lo) * k as f64 / n as f64;
                let v = airy_ai(x).unwrap().0;
                if (v < 0.0) != (prev < 0.0) {
                    changes += 1;
                }
                prev = v;
            }
            changes
        };
        // Nudge inside each interval so the endpoints are not themselves zeros.
        assert_eq!(count_changes(zeros[0].value + 1e-6, 0.0), 0);
        for w in zeros.windows(3) {
            let lo = w[2].value + 1e-6;
            let hi = w[0].value - 1e-6;
            assert_eq!(count_changes(lo, hi), 1);
        }
    }

    #[test]
    fn concurrent_first_access_sees_one_value() {
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| airy_zero(37).unwrap().value))
            .collect();
        let vals: Vec<f64> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(vals.iter().all(|v| v.to_bits() == vals[0].to_bits()));
    }
}
