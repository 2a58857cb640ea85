//! Numerov shooting eigensolver matched at the origin.
//!
//! The left solution is integrated from deep in the left forbidden region up
//! to `x = 0` and the right solution from deep in the right forbidden region
//! down to `x = 0`. Both start from `psi = 0` followed by a tiny seed. An
//! eigenvalue is an energy at which the two logarithmic derivatives agree at
//! the origin. Levels are bracketed by counting the nodes of the left
//! solution continued across the whole domain (a Sturm count) and refined on
//! the matching discriminant.
//!
//! Splitting at the origin keeps each integration on a smooth branch of the
//! potential, which preserves Numerov's fourth-order error law.

mod exact;
mod numerov;
mod sweep;

pub use exact::{linear_exact_eigensolve, linear_matching_function};
pub use sweep::{spectrum_sweep, spectrum_sweep_with, Extremum, ExtremumKind, Family, SweepPoint, SweepResult};

use alloc::vec::Vec;

use crate::nodes;
use crate::potentials::{Potential, TurningPoints};
use crate::roots::brent;
use crate::{Error, Result};

use numerov::{backward_derivative, forward_derivative, march, SEED};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    /// Upper bound on the Numerov step. The step actually used is also capped
    /// so that at least 400 points span the classically allowed region.
    pub grid_step: f64,
    /// Distance past each turning point, in units of the local Airy length
    /// `(hbar^2 / (2 m |V'|))^(1/3)`. 9 lengths suppress the tail by ~e^-18.
    pub domain_margin: f64,
    /// Relative energy tolerance of the root refinement.
    pub energy_tol: f64,
    /// Distance below which a node counts as sitting on the origin.
    pub node_tol: f64,
    pub max_iter: usize,
    /// Smallest accepted `nu - 1/2`.
    pub delta_nu_min: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let grid_step = 1e-3;
        Self {
            grid_step,
            domain_margin: 9.0,
            energy_tol: 1e-12,
            node_tol: 2.0 * grid_step,
            max_iter: 200,
            delta_nu_min: 1e-3,
        }
    }
}

impl SolverConfig {
    /// Sets the grid step and keeps `node_tol` at twice that step.
    pub fn with_grid_step(mut self, h: f64) -> Self {
        self.grid_step = h;
        self.node_tol = 2.0 * h;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |v: f64| v.is_finite() && v > 0.0;
        if !pos(self.grid_step) {
            return Err(Error::InvalidConfig("grid_step must be positive"));
        }
        if !pos(self.domain_margin) {
            return Err(Error::InvalidConfig("domain_margin must be positive"));
        }
        if !pos(self.energy_tol) {
            return Err(Error::InvalidConfig("energy_tol must be positive"));
        }
        if !pos(self.node_tol) {
            return Err(Error::InvalidConfig("node_tol must be positive"));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be positive"));
        }
        if !pos(self.delta_nu_min) {
            return Err(Error::InvalidConfig("delta_nu_min must be positive"));
        }
        Ok(())
    }
}

/// A converged bound state.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSolution {
    /// Number of nodes.
    pub n: usize,
    pub energy: f64,
    /// Sample abscissae, increasing, with `0.0` included exactly.
    pub grid: Vec<f64>,
    /// Wavefunction samples scaled to unit maximum magnitude, positive in the
    /// left tail.
    pub values: Vec<f64>,
    pub nodes: Vec<f64>,
    pub turning_points: TurningPoints,
    /// Largest of the left and right Numerov steps.
    pub step: f64,
}

impl EigenSolution {
    /// Number of sign changes in `values`, ignoring exact zeros.
    pub fn sign_changes(&self) -> usize {
        count_sign_changes(&self.values, 0.0).0
    }
}

fn count_sign_changes(values: &[f64], mut last: f64) -> (usize, f64) {
    let mut changes = 0;
    for &v in values {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && (v < 0.0) != (last < 0.0) {
            changes += 1;
        }
        last = v;
    }
    (changes, last)
}

/// The discretized problem for one potential on a fixed domain.
struct Shooter<'a, P: Potential> {
    potential: &'a P,
    /// `2 m / hbar^2`.
    scale: f64,
    x_left: f64,
    h_left: f64,
    h_right: f64,
    v_left: Vec<f64>,
    v_right: Vec<f64>,
    /// Length used to make the discriminant dimensionless.
    match_length: f64,
}

impl<'a, P: Potential> Shooter<'a, P> {
    /// Domain wide enough for any level up to `e_ref`.
    fn new(potential: &'a P, e_ref: f64, cfg: &SolverConfig) -> Result<Self> {
        let tp = potential.turning_points(e_ref)?;
        let hbar2 = potential.hbar() * potential.hbar();
        let scale = 2.0 * potential.mass() / hbar2;
        let airy_length = |x: f64| libm::cbrt(1.0 / (scale * libm::fabs(potential.slope(x))));
        let x_left = tp.x_minus - cfg.domain_margin * airy_length(tp.x_minus);
        let x_right = tp.x_plus + cfg.domain_margin * airy_length(tp.x_plus);
        // At least 400 points across the allowed region at e_ref, so at least
        // ~200 at e_ref / 4.
        let h = cfg.grid_step.min(tp.width() / 400.0);
        let n_left = (libm::ceil(-x_left / h) as usize).max(8);
        let n_right = (libm::ceil(x_right / h) as usize).max(8);
        let h_left = -x_left / n_left as f64;
        let h_right = x_right / n_right as f64;
        let v_left = (0..=n_left)
            .map(|k| if k == n_left { potential.value(-0.0) } else { potential.value(x_left + k as f64 * h_left) })
            .collect();
        let v_right = (0..=n_right).map(|k| potential.value(k as f64 * h_right)).collect();
        Ok(Self {
            potential,
            scale,
            x_left,
            h_left,
            h_right,
            v_left,
            v_right,
            match_length: 1.0 / libm::sqrt(scale * e_ref),
        })
    }

    fn left_x(&self, k: usize) -> f64 {
        if k + 1 == self.v_left.len() {
            0.0
        } else {
            self.x_left + k as f64 * self.h_left
        }
    }

    fn right_x(&self, k: usize) -> f64 {
        k as f64 * self.h_right
    }

    fn weights(&self, v: &[f64], h: f64, energy: f64) -> Vec<f64> {
        let c = h * h * self.scale / 12.0;
        v.iter().map(|&vk| 1.0 - c * (vk - energy)).collect()
    }

    /// Left solution on `[x_left, 0]`.
    fn integrate_left(&self, energy: f64) -> Result<Vec<f64>> {
        let w = self.weights(&self.v_left, self.h_left, energy);
        let mut y = Vec::with_capacity(w.len());
        y.extend_from_slice(&[0.0, SEED]);
        march(&w, &mut y, |k| self.left_x(k))?;
        Ok(y)
    }

    /// Right solution on `[0, x_right]`, returned in increasing `x`.
    fn integrate_right(&self, energy: f64) -> Result<Vec<f64>> {
        let mut w = self.weights(&self.v_right, self.h_right, energy);
        w.reverse();
        let mut y = Vec::with_capacity(w.len());
        y.extend_from_slice(&[0.0, SEED]);
        let last = w.len() - 1;
        march(&w, &mut y, |k| self.right_x(last - k))?;
        y.reverse();
        Ok(y)
    }

    /// Sine of the angle between `(psi, l psi')` of the two solutions at the origin.
    fn discriminant(&self, energy: f64) -> Result<f64> {
        let yl = self.integrate_left(energy)?;
        let yr = self.integrate_right(energy)?;
        let l = self.match_length;
        let (pl, dl) = (yl[yl.len() - 1], l * backward_derivative(&yl, self.h_left));
        let (pr, dr) = (yr[0], l * forward_derivative(&yr, self.h_right));
        let (nl, nr) = (libm::hypot(pl, dl), libm::hypot(pr, dr));
        if !(nl > 0.0 && nr > 0.0 && nl.is_finite() && nr.is_finite()) {
            return Err(Error::Overflow { x: 0.0 });
        }
        Ok((dl / nl) * (pr / nr) - (dr / nr) * (pl / nl))
    }

    /// Sign changes of the left solution continued across the whole domain.
    ///
    /// Equals the number of levels of the truncated problem below `energy`.
    fn node_count(&self, energy: f64) -> Result<usize> {
        let yl = self.integrate_left(energy)?;
        let (left_changes, last) = count_sign_changes(&yl, 0.0);

        let h = self.h_right;
        let psi = yl[yl.len() - 1];
        let dpsi = backward_derivative(&yl, self.h_left);
        let q0 = self.scale * (self.v_right[0] - energy);
        let dq0 = self.scale * self.potential.slope(0.0);
        let psi1 = psi
            + h * dpsi
            + h * h / 2.0 * q0 * psi
            + h * h * h / 6.0 * (dq0 * psi + q0 * dpsi)
            + h * h * h * h / 24.0 * (q0 * q0 * psi + 2.0 * dq0 * dpsi);
        let w = self.weights(&self.v_right, h, energy);
        let mut y = Vec::with_capacity(w.len());
        y.extend_from_slice(&[psi, psi1]);
        march(&w, &mut y, |k| self.right_x(k))?;
        let (right_changes, _) = count_sign_changes(&y[1..], last);
        Ok(left_changes + right_changes)
    }

    fn refine(&self, n: usize, mut lo: f64, mut hi: f64, mut count_lo: usize, mut count_hi: usize, cfg: &SolverConfig) -> Result<f64> {
        let mut iter = 0;
        while !(count_lo == n && count_hi == n + 1) {
            if iter == cfg.max_iter {
                return Err(Error::BracketFailure { level: n, lo, hi });
            }
            iter += 1;
            let mid = 0.5 * (lo + hi);
            let c = self.node_count(mid)?;
            if c <= n {
                lo = mid;
                count_lo = c;
            } else {
                hi = mid;
                count_hi = c;
            }
        }
        let f_lo = self.discriminant(lo)?;
        let f_hi = self.discriminant(hi)?;
        if f_lo != 0.0 && f_hi != 0.0 && (f_lo < 0.0) == (f_hi < 0.0) {
            return Err(Error::BracketFailure { level: n, lo, hi });
        }
        brent(|e| self.discriminant(e), lo, hi, f_lo, f_hi, cfg.energy_tol, 0.0, cfg.max_iter)
    }

    fn eigen_solution(&self, n: usize, energy: f64) -> Result<EigenSolution> {
        let yl = self.integrate_left(energy)?;
        let yr = self.integrate_right(energy)?;
        let l = self.match_length;
        let vl = (yl[yl.len() - 1], l * backward_derivative(&yl, self.h_left));
        let vr = (yr[0], l * forward_derivative(&yr, self.h_right));
        let (nl, nr) = (libm::hypot(vl.0, vl.1), libm::hypot(vr.0, vr.1));
        // Least-squares scale taking (psi, l psi') of the right solution onto the left one.
        let c = nl * ((vl.0 / nl) * (vr.0 / nr) + (vl.1 / nl) * (vr.1 / nr)) / nr;

        let mut grid = Vec::with_capacity(yl.len() + yr.len() - 1);
        let mut values = Vec::with_capacity(grid.capacity());
        for (k, &v) in yl.iter().enumerate() {
            grid.push(self.left_x(k));
            values.push(v);
        }
        for (k, &v) in yr.iter().enumerate().skip(1) {
            grid.push(self.right_x(k));
            values.push(c * v);
        }
        let peak = values.iter().fold(0.0f64, |m, v| m.max(libm::fabs(*v)));
        values.iter_mut().for_each(|v| *v /= peak);

        let mut sol = EigenSolution {
            n,
            energy,
            grid,
            values,
            nodes: Vec::new(),
            turning_points: self.potential.turning_points(energy)?,
            step: self.h_left.max(self.h_right),
        };
        sol.nodes = nodes::extract_nodes(&sol)?;
        Ok(sol)
    }
}

/// Matching discriminant at energy `energy` for a domain sized for that
/// energy. Bounded by 1 in magnitude; zero exactly at eigenvalues.
pub fn match_discriminant<P: Potential>(potential: &P, energy: f64, cfg: &SolverConfig) -> Result<f64> {
    cfg.validate()?;
    if energy.is_nan() || energy <= 0.0 {
        return Err(Error::NonPositiveEnergy(energy));
    }
    Shooter::new(potential, energy, cfg)?.discriminant(energy)
}

/// Solves for the level with exactly `n` nodes.
pub fn solve_level<P: Potential>(potential: &P, n: usize, cfg: &SolverConfig) -> Result<EigenSolution> {
    cfg.validate()?;
    let mut e_hi = 1.0;
    for _ in 0..cfg.max_iter.min(200) {
        let shooter = Shooter::new(potential, e_hi, cfg)?;
        let count_hi = shooter.node_count(e_hi)?;
        if count_hi > n {
            let e = shooter.refine(n, 0.0, e_hi, 0, count_hi, cfg)?;
            return shooter.eigen_solution(n, e);
        }
        e_hi *= 2.0;
    }
    Err(Error::BracketFailure { level: n, lo: 0.0, hi: e_hi })
}

/// Like [`solve_level`] but brackets around `guess` first, falling back to a
/// full search when the guess does not bracket level `n`.
pub fn solve_level_near<P: Potential>(potential: &P, n: usize, guess: f64, cfg: &SolverConfig) -> Result<EigenSolution> {
    cfg.validate()?;
    if guess > 0.0 && guess.is_finite() {
        let mut width = 0.05;
        for _ in 0..4 {
            let hi = guess * (1.0 + width);
            let lo = guess * (1.0 - width).max(0.0);
            let shooter = Shooter::new(potential, hi, cfg)?;
            let count_lo = shooter.node_count(lo)?;
            let count_hi = shooter.node_count(hi)?;
            if count_lo <= n && count_hi > n {
                let e = shooter.refine(n, lo, hi, count_lo, count_hi, cfg)?;
                return shooter.eigen_solution(n, e);
            }
            width *= 2.0;
        }
    }
    solve_level(potential, n, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::ho_crossing_shear;
    use crate::{Model, PotentialKind, Units};
    use num_rational::Ratio;

    fn harmonic(nu: impl Into<crate::Shear>) -> Model {
        Model::new(PotentialKind::SplitHarmonic, Units::harmonic_default(), nu).unwrap()
    }

    fn linear(nu: impl Into<crate::Shear>) -> Model {
        Model::new(PotentialKind::SplitLinear, Units::linear_default(), nu).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn discriminant_vanishes_on_levels_only() {
        let cfg = SolverConfig::default();
        assert!(match_discriminant(&harmonic(1.0), 0.5, &cfg).unwrap().abs() < 1e-8);
        assert!(match_discriminant(&harmonic(1.0), 0.7, &cfg).unwrap().abs() > 0.1);
        assert!(match_discriminant(&linear(1.0), 1.855757081, &cfg).unwrap().abs() < 1e-8);
        assert!(match_discriminant(&harmonic(1.0), 0.0, &cfg).is_err());
    }

    #[test]
    fn symmetric_oscillator_levels() {
        let cfg = SolverConfig::default();
        for n in 0..8 {
            let sol = solve_level(&harmonic(1.0), n, &cfg).unwrap();
            assert!(rel(sol.energy, n as f64 + 0.5) < 1e-8, "n={n} E={}", sol.energy);
            assert_eq!(sol.sign_changes(), n);
            assert_eq!(sol.nodes.len(), n);
        }
    }

    #[test]
    fn node_on_origin_at_crossing_shear() {
        let cfg = SolverConfig::default();
        let nu = ho_crossing_shear(1, 2);
        assert_eq!(nu, Ratio::new(9, 11));
        let sol = solve_level(&harmonic(nu), 4, &cfg).unwrap();
        assert!(rel(sol.energy, 4.5) < 1e-8);
        assert!(sol.nodes.iter().any(|x| x.abs() < cfg.node_tol));
    }

    #[test]
    fn linear_level_at_table_shear() {
        let cfg = SolverConfig::default();
        let sol = solve_level(&linear(0.7162760442), 2, &cfg).unwrap();
        assert!(rel(sol.energy, 2.597461596) < 1e-7);
    }

    #[test]
    fn solution_shape_invariants() {
        let cfg = SolverConfig::default();
        for model in [harmonic(0.7), linear(0.6), harmonic(Ratio::new(5, 7))] {
            for n in [0, 3, 5] {
                let sol = solve_level(&model, n, &cfg).unwrap();
                assert_eq!(sol.sign_changes(), n);
                assert!(sol.nodes.iter().all(|&x| sol.turning_points.contains(x)));
                assert!(sol.grid.windows(2).all(|w| w[0] < w[1]));
                assert!(sol.grid.contains(&0.0));
                // Magnitude grows monotonically from each end up to the turning point.
                let tp = sol.turning_points;
                let left: Vec<f64> = sol.grid.iter().zip(&sol.values).filter(|(x, _)| **x < tp.x_minus).map(|(_, v)| v.abs()).collect();
                assert!(left.windows(2).all(|w| w[0] <= w[1]));
                let right: Vec<f64> = sol.grid.iter().zip(&sol.values).filter(|(x, _)| **x > tp.x_plus).map(|(_, v)| v.abs()).collect();
                assert!(right.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }

    #[test]
    fn levels_are_ordered() {
        let cfg = SolverConfig::default();
        for model in [harmonic(0.62), linear(0.83)] {
            let e: Vec<f64> = (0..6).map(|n| solve_level(&model, n, &cfg).unwrap().energy).collect();
            assert!(e.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn continuation_matches_cold_start() {
        let cfg = SolverConfig::default();
        let model = harmonic(0.8);
        let cold = solve_level(&model, 4, &cfg).unwrap().energy;
        let warm = solve_level_near(&model, 4, cold * 1.03, &cfg).unwrap().energy;
        assert!(rel(warm, cold) < 1e-11);
        // A guess near the wrong level must still land on the requested one.
        let wrong = solve_level_near(&model, 4, 1.0, &cfg).unwrap().energy;
        assert!(rel(wrong, cold) < 1e-11);
    }

    #[test]
    fn fourth_order_grid_convergence() {
        let model = harmonic(0.7);
        let e = |h: f64| {
            let cfg = SolverConfig { energy_tol: 1e-15, ..SolverConfig::default().with_grid_step(h) };
            solve_level(&model, 3, &cfg).unwrap().energy
        };
        let (e1, e2, e3) = (e(0.012), e(0.006), e(0.003));
        let ratio = (e1 - e2) / (e2 - e3);
        assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = SolverConfig { grid_step: 0.0, ..SolverConfig::default() };
        assert!(matches!(solve_level(&harmonic(1.0), 0, &cfg), Err(Error::InvalidConfig(_))));
    }
}
