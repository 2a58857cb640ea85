//! Exact eigenvalues of the split linear potential at any shear.
//!
//! On each branch the decaying solution is an Airy function:
//!
//! ```text
//! x >= 0:  psi_R(x) = Ai( x / l_R - E / e_R)
//! x <  0:  psi_L(x) = Ai(-x / l_L - E / e_L)
//! ```
//!
//! with slope `F` of the branch, `e = (hbar^2 F^2 / 2m)^(1/3)` and `l = e / F`.
//! Equal logarithmic derivatives at the origin give
//!
//! ```text
//! G(E) = Ai'(z_R) Ai(z_L) l_L + Ai'(z_L) Ai(z_R) l_R = 0,   z = -E / e.
//! ```
//!
//! The roots of `G` are bracketed with the half-line levels: the `n`-th
//! full-line level lies between the `n`-th and `(n+1)`-th entries of the merged
//! left/right half-line spectrum (with a leading zero), since imposing
//! `psi(0) = 0` is a single constraint.

use alloc::vec::Vec;

use crate::airy::airy_ai;
use crate::analytic::{linear_half_line_energy, Branch};
use crate::potentials::PotentialKind;
use crate::roots::brent;
use crate::{Error, Model, Result, Shear, Units};

const MAX_ITER: usize = 200;

struct Branches {
    e_left: f64,
    e_right: f64,
    l_left: f64,
    l_right: f64,
}

impl Branches {
    fn new(model: &Model) -> Self {
        let u = model.units;
        let h2m = u.hbar * u.hbar / (2.0 * u.mass);
        let f_right = u.kappa * model.nu();
        let f_left = u.kappa * model.left_scale();
        let e = |f: f64| libm::cbrt(h2m * f * f);
        let (e_left, e_right) = (e(f_left), e(f_right));
        Self { e_left, e_right, l_left: e_left / f_left, l_right: e_right / f_right }
    }

    fn matching(&self, energy: f64) -> Result<f64> {
        let (ai_l, dai_l) = airy_ai(-energy / self.e_left)?;
        let (ai_r, dai_r) = airy_ai(-energy / self.e_right)?;
        Ok(dai_r * ai_l * self.l_left + dai_l * ai_r * self.l_right)
    }
}

/// `G(E)` for a split linear model; zero exactly at its eigenvalues.
pub fn linear_matching_function(model: &Model, energy: f64) -> Result<f64> {
    Branches::new(model).matching(energy)
}

/// Energy of the level with `n` nodes of the split linear potential at shear `nu`.
pub fn linear_exact_eigensolve(nu: impl Into<Shear>, n: usize, units: &Units) -> Result<f64> {
    let model = Model::new_extended(PotentialKind::SplitLinear, *units, nu)?;
    let branches = Branches::new(&model);

    let mut walls: Vec<f64> = Vec::with_capacity(2 * n + 5);
    walls.push(0.0);
    for k in 1..=n + 2 {
        walls.push(linear_half_line_energy(Branch::Left, k, model.shear(), units)?);
        walls.push(linear_half_line_energy(Branch::Right, k, model.shear(), units)?);
    }
    walls.sort_by(|a, b| a.total_cmp(b));
    let (mut lo, mut hi) = (walls[n], walls[n + 1]);
    // Coincident half-line levels are themselves eigenvalues (a node sits on
    // the origin). Such a wall inside the bracket is level n; on its edge it
    // belongs to a neighbour and is stepped over.
    let tol = 1e-9 * hi;
    if hi - lo <= tol {
        let (g_lo, g_hi) = (branches.matching(lo)?, branches.matching(hi)?);
        if hi > lo && g_lo != 0.0 && g_hi != 0.0 && (g_lo < 0.0) != (g_hi < 0.0) {
            return brent(|e| branches.matching(e), lo, hi, g_lo, g_hi, 1e-15, 0.0, MAX_ITER);
        }
        return Ok(if g_lo.abs() <= g_hi.abs() { lo } else { hi });
    }
    let shift = 1e-6 * (hi - lo);
    if n > 0 && lo - walls[n - 1] <= tol {
        lo += shift;
    }
    if walls[n + 2] - hi <= tol {
        hi -= shift;
    }
    let g_lo = branches.matching(lo)?;
    let g_hi = branches.matching(hi)?;
    if g_lo != 0.0 && g_hi != 0.0 && (g_lo < 0.0) == (g_hi < 0.0) {
        return Err(Error::ConvergenceFailure { iterations: 0, estimate: 0.5 * (lo + hi) });
    }
    brent(|e| branches.matching(e), lo, hi, g_lo, g_hi, 1e-15, 0.0, MAX_ITER)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::airy::airy_zero;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn table_levels() {
        let u = Units::linear_default();
        assert!(rel(linear_exact_eigensolve(1.0, 1, &u).unwrap(), 1.855757081) < 1e-9);
        assert!(rel(linear_exact_eigensolve(0.7162760442, 2, &u).unwrap(), 2.597461596) < 1e-9);
        assert!(rel(linear_exact_eigensolve(1.0, 3, &u).unwrap(), 3.244607624) < 1e-9);
    }

    #[test]
    fn symmetric_even_levels_sit_on_derivative_zeros() {
        // At nu = 1 even levels satisfy Ai'(-E 2^(1/3)) = 0. Bisect on Ai'
        // directly as an independent route.
        let u = Units::linear_default();
        let e0 = linear_exact_eigensolve(1.0, 0, &u).unwrap();
        let (mut lo, mut hi) = (-1.5, -0.5);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if airy_ai(mid).unwrap().1 > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let a1_prime = 0.5 * (lo + hi);
        assert!(rel(e0, -a1_prime / libm::cbrt(2.0)) < 1e-12);
        // Odd levels sit on zeros of Ai.
        let e1 = linear_exact_eigensolve(1.0, 1, &u).unwrap();
        assert!(rel(e1, -airy_zero(1).unwrap().value / libm::cbrt(2.0)) < 1e-13);
    }

    #[test]
    fn symmetric_levels_alternate_between_families() {
        let u = Units::linear_default();
        let c = libm::cbrt(2.0);
        for k in 1..=4 {
            let odd = linear_exact_eigensolve(1.0, 2 * k - 1, &u).unwrap();
            assert!(rel(odd, -airy_zero(k).unwrap().value / c) < 1e-12);
            let even = linear_exact_eigensolve(1.0, 2 * k, &u).unwrap();
            assert!(even > odd && even < -airy_zero(k + 1).unwrap().value / c);
            assert!(airy_ai(-even * c).unwrap().1.abs() < 1e-10);
        }
    }

    #[test]
    fn levels_increase_and_match_function_vanishes() {
        let u = Units::linear_default();
        for nu in [0.55, 0.7, 0.7162760442, 0.9, 1.0] {
            let model = Model::new(PotentialKind::SplitLinear, u, nu).unwrap();
            let levels: Vec<f64> = (0..7).map(|n| linear_exact_eigensolve(nu, n, &u).unwrap()).collect();
            assert!(levels.windows(2).all(|w| w[0] < w[1]));
            for e in levels {
                let g = linear_matching_function(&model, e).unwrap();
                assert!(g.abs() < 1e-12, "nu={nu} e={e} g={g}");
            }
        }
    }

    #[test]
    fn rejects_bad_shear() {
        assert!(linear_exact_eigensolve(0.5, 0, &Units::linear_default()).is_err());
    }
}
