use alloc::vec::Vec;

use super::{solve_level_near, EigenSolution, SolverConfig};
use crate::analytic::{ho_endpoint_spectrum, Endpoint};
use crate::{Error, Model, PotentialKind, Result, Shear, Units};

use super::exact::linear_exact_eigensolve;

/// A potential family with the shear left free.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Family {
    pub kind: PotentialKind,
    pub units: Units,
}

impl Family {
    pub fn new(kind: PotentialKind, units: Units) -> Self {
        Self { kind, units }
    }

    /// The family in its default dimensionless units.
    pub fn with_default_units(kind: PotentialKind) -> Self {
        Self { kind, units: Units::default_for(kind) }
    }

    pub fn at(&self, nu: impl Into<Shear>) -> Result<Model> {
        Model::new(self.kind, self.units, nu)
    }

    /// `E_n(1)`: closed form for the oscillator, exact Airy matching for the wedge.
    pub fn symmetric_level(&self, n: usize) -> Result<f64> {
        match self.kind {
            PotentialKind::SplitHarmonic => Ok(ho_endpoint_spectrum(n, Endpoint::NuOne, &self.units)),
            PotentialKind::SplitLinear => linear_exact_eigensolve(1.0, n, &self.units),
        }
    }

    /// Rejects grids that are not strictly descending inside `(1/2 + delta, 1]`.
    pub fn check_grid(&self, nu_grid: &[f64], cfg: &SolverConfig) -> Result<()> {
        if nu_grid.is_empty() {
            return Err(Error::InvalidGrid("empty shear grid"));
        }
        if !nu_grid.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::InvalidGrid("shear grid must be strictly descending"));
        }
        let min = 0.5 + cfg.delta_nu_min;
        if let Some(&bad) = nu_grid.iter().find(|&&nu| !(nu >= min && nu <= 1.0)) {
            return Err(Error::ShearOutOfRange { nu: bad, min, max: 1.0 });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub nu: f64,
    pub energy: Result<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremumKind {
    Min,
    Max,
}

/// An interior grid point where `E_n(nu)` changes direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum {
    pub index: usize,
    pub nu: f64,
    pub energy: f64,
    pub kind: ExtremumKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub kind: PotentialKind,
    pub n: usize,
    /// `E_n(1)`.
    pub reference: f64,
    pub points: Vec<SweepPoint>,
    pub extrema: Vec<Extremum>,
}

impl SweepResult {
    /// `(nu, E_n(nu) - E_n(1))` for the points that solved.
    pub fn shifted(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points.iter().filter_map(move |p| p.energy.as_ref().ok().map(|e| (p.nu, e - self.reference)))
    }
}

/// `E_n(nu)` over a descending grid, each solve seeded by the previous energy.
///
/// Solver failures are recorded per point and the sweep carries on.
pub fn spectrum_sweep(family: &Family, n: usize, nu_grid: &[f64], cfg: &SolverConfig) -> Result<SweepResult> {
    spectrum_sweep_with(family, n, nu_grid, cfg, |_| {})
}

/// [`spectrum_sweep`] that also hands every converged solution to `visit`.
pub fn spectrum_sweep_with<F>(family: &Family, n: usize, nu_grid: &[f64], cfg: &SolverConfig, mut visit: F) -> Result<SweepResult>
where
    F: FnMut(&EigenSolution),
{
    cfg.validate()?;
    family.check_grid(nu_grid, cfg)?;
    let reference = family.symmetric_level(n)?;
    let mut guess = reference;
    let mut points = Vec::with_capacity(nu_grid.len());
    for &nu in nu_grid {
        let energy = family.at(nu).and_then(|m| solve_level_near(&m, n, guess, cfg)).map(|sol| {
            visit(&sol);
            sol.energy
        });
        if let Ok(e) = energy {
            guess = e;
        }
        points.push(SweepPoint { nu, energy });
    }
    let extrema = find_extrema(&points);
    Ok(SweepResult { kind: family.kind, n, reference, points, extrema })
}

fn find_extrema(points: &[SweepPoint]) -> Vec<Extremum> {
    let ok: Vec<(usize, f64, f64)> = points
        .iter()
        .enumerate()
        .filter_map(|(k, p)| p.energy.as_ref().ok().map(|&e| (k, p.nu, e)))
        .collect();
    ok.windows(3)
        .filter_map(|w| {
            let (d1, d2) = (w[1].2 - w[0].2, w[2].2 - w[1].2);
            let kind = if d1 < 0.0 && d2 > 0.0 {
                ExtremumKind::Min
            } else if d1 > 0.0 && d2 < 0.0 {
                ExtremumKind::Max
            } else {
                return None;
            };
            Some(Extremum { index: w[1].0, nu: w[1].1, energy: w[1].2, kind })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(hi: f64, lo: f64, steps: usize) -> Vec<f64> {
        (0..=steps).map(|k| hi - (hi - lo) * k as f64 / steps as f64).collect()
    }

    #[test]
    fn ground_state_never_returns() {
        let fam = Family::with_default_units(PotentialKind::SplitHarmonic);
        let res = spectrum_sweep(&fam, 0, &grid(1.0, 0.55, 30), &SolverConfig::default()).unwrap();
        let shifted: Vec<(f64, f64)> = res.shifted().collect();
        assert_eq!(shifted.len(), 31);
        assert!(shifted[0].1.abs() < 1e-9);
        assert!(shifted[1..].iter().all(|(_, d)| *d > 1e-6));
        assert!(res.extrema.iter().all(|e| e.kind != ExtremumKind::Min));
    }

    /// Shears in `(lo, 1)` where `E_n(nu) = E_n(1)`: either a node sits on the
    /// origin (odd half-line states on both sides) or both half-line states
    /// are even with zero slope there.
    fn coincidences(n: usize, lo: f64) -> Vec<f64> {
        let n = n as f64;
        let mut out = Vec::new();
        for j in 0..=(n as usize) {
            let j = j as f64;
            out.push((2.0 * n + 1.0) / (4.0 * j + 3.0));
            out.push((2.0 * n + 1.0) / (4.0 * j + 1.0));
        }
        out.retain(|&nu| nu > lo && nu < 1.0 - 1e-12);
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }

    /// Midpoints of grid intervals on which `E_n(nu) - E_n(1)` changes sign.
    fn sign_changes(res: &SweepResult) -> Vec<(f64, f64)> {
        let s: Vec<(f64, f64)> = res.shifted().skip(1).collect();
        s.windows(2).filter(|w| (w[0].1 < 0.0) != (w[1].1 < 0.0)).map(|w| (w[0].0, w[1].0)).collect()
    }

    #[test]
    fn first_excited_state_returns_once_below_one() {
        let fam = Family::with_default_units(PotentialKind::SplitHarmonic);
        let res = spectrum_sweep(&fam, 1, &grid(1.0, 0.55, 40), &SolverConfig::default()).unwrap();
        let shifted: Vec<(f64, f64)> = res.shifted().collect();
        assert!(shifted[0].1.abs() < 1e-9);
        assert!(shifted[1..].iter().all(|(_, d)| d.abs() > 1e-6));
        // No node reaches the origin, but the zero-slope family returns at 3/5.
        assert_eq!(coincidences(1, 0.55), [0.6]);
        let changes = sign_changes(&res);
        assert_eq!(changes.len(), 1);
        assert!(changes[0].0 > 0.6 && changes[0].1 < 0.6);
    }

    #[test]
    fn level_four_changes_sign_at_coincidences() {
        let fam = Family::with_default_units(PotentialKind::SplitHarmonic);
        let res = spectrum_sweep(&fam, 4, &grid(1.0, 0.55, 91), &SolverConfig::default()).unwrap();
        let expected = coincidences(4, 0.55);
        assert_eq!(expected.len(), 3);
        let changes = sign_changes(&res);
        assert_eq!(changes.len(), expected.len(), "{changes:?}");
        for (c, nu) in changes.iter().zip(&expected) {
            assert!(c.0 > *nu && c.1 < *nu);
        }
        // One extremum between consecutive returns.
        let kinds: Vec<ExtremumKind> = res.extrema.iter().map(|e| e.kind).collect();
        assert_eq!(kinds, [ExtremumKind::Max, ExtremumKind::Min, ExtremumKind::Max]);
        for pair in res.extrema.windows(2) {
            assert!(expected.iter().any(|&nu| pair[0].nu > nu && nu > pair[1].nu));
        }
    }

    #[test]
    fn approaches_hard_wall_limit_from_below() {
        let fam = Family::with_default_units(PotentialKind::SplitHarmonic);
        let cfg = SolverConfig::default();
        for n in [0usize, 2] {
            let wall = ho_endpoint_spectrum(n, Endpoint::NuHalf, &fam.units);
            let res = spectrum_sweep(&fam, n, &[0.51, 0.501], &cfg).unwrap();
            let e: Vec<f64> = res.points.iter().map(|p| *p.energy.as_ref().unwrap()).collect();
            assert!(e[0] < wall && e[1] < wall);
            assert!(wall - e[1] < wall - e[0]);
            assert!((wall - e[1]) / wall < 0.05);
        }
    }

    #[test]
    fn rejects_bad_grids() {
        let fam = Family::with_default_units(PotentialKind::SplitLinear);
        let cfg = SolverConfig::default();
        assert!(matches!(spectrum_sweep(&fam, 0, &[0.6, 0.7], &cfg), Err(Error::InvalidGrid(_))));
        assert!(matches!(spectrum_sweep(&fam, 0, &[0.9, 0.5005], &cfg), Err(Error::ShearOutOfRange { .. })));
        assert!(spectrum_sweep(&fam, 0, &[], &cfg).is_err());
    }
}
