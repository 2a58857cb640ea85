//! Closed-form spectra of the two sheared families.
//!
//! When an eigenfunction has a node exactly at `x = 0` the full-line problem
//! splits into two half-line problems with a hard wall at the origin, both
//! sharing the eigenvalue. Solving the two half-line problems and equating
//! their levels gives the shear `nu_ij` at which that happens and the energy
//! `E_ij` of the level, where `i` and `j` index the left and right half-line
//! states.
//!
//! Harmonic shears are exact rationals and all harmonic energies come back
//! in units of `hbar omega` as rationals too. Linear shears come from the
//! refined zeros of `Ai` and are floating point.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_rational::Ratio;

use crate::airy::{airy_zero, asymptotic_zero_with, MAX_ZERO_INDEX};
use crate::potentials::{ratio_to_f64, PotentialKind};
use crate::{Error, Result, Shear, Units};

type Q = Ratio<i64>;

/// The two limiting shears of the harmonic family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    /// `nu = 1`, the ordinary oscillator.
    NuOne,
    /// `nu = 1/2`, the oscillator on `x > 0` behind a hard wall.
    NuHalf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Left,
    Right,
}

/// A level of one half-line problem (hard wall at the origin).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfLineLevel {
    pub branch: Branch,
    /// `i`/`j` for that branch: the harmonic level carries `2k + 1` nodes on
    /// the full oscillator, the linear one sits on the `k`-th zero of `Ai`.
    pub index: usize,
    pub energy: f64,
}

/// A shear at which the `n`-th eigenfunction has a node exactly at `x = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossingEvent {
    pub kind: PotentialKind,
    pub i: usize,
    pub j: usize,
    /// Total node count of the full-line eigenfunction.
    pub n: usize,
    pub nu: Shear,
    pub energy: f64,
}

fn check_shear(nu: f64) -> Result<()> {
    if nu.is_finite() && nu > 0.5 {
        Ok(())
    } else {
        Err(Error::ShearOutOfRange { nu, min: 0.5, max: f64::INFINITY })
    }
}

fn check_shear_exact(nu: Q) -> Result<()> {
    if nu > Ratio::new(1, 2) {
        Ok(())
    } else {
        Err(Error::ShearOutOfRange { nu: ratio_to_f64(nu), min: 0.5, max: f64::INFINITY })
    }
}

// --- split harmonic oscillator ---------------------------------------------

/// `E_n` at an endpoint shear, in units of `hbar omega`:
/// `n + 1/2` at `nu = 1` and `(2n + 3/2) / 2` at `nu = 1/2`.
pub fn ho_endpoint_level(n: usize, which: Endpoint) -> Q {
    let n = n as i64;
    match which {
        Endpoint::NuOne => Ratio::new(2 * n + 1, 2),
        Endpoint::NuHalf => Ratio::new(4 * n + 3, 4),
    }
}

pub fn ho_endpoint_spectrum(n: usize, which: Endpoint, units: &Units) -> f64 {
    units.hbar * units.omega() * ratio_to_f64(ho_endpoint_level(n, which))
}

/// `E_n(1/2) / E_n(1)`, exactly.
pub fn ho_endpoint_ratio(n: usize) -> Q {
    ho_endpoint_level(n, Endpoint::NuHalf) / ho_endpoint_level(n, Endpoint::NuOne)
}

/// Half-line level in units of `hbar omega`, computed exactly:
/// left `nu/(2nu-1) (2k + 3/2)`, right `nu (2k + 3/2)`.
pub fn ho_half_line_level(branch: Branch, k: usize, nu: Q) -> Result<Q> {
    check_shear_exact(nu)?;
    let quanta = Ratio::new(4 * k as i64 + 3, 2);
    let scale = match branch {
        Branch::Left => nu / (nu + nu - Ratio::from_integer(1)),
        Branch::Right => nu,
    };
    Ok(scale * quanta)
}

pub fn ho_half_line_energy(branch: Branch, k: usize, nu: impl Into<Shear>, units: &Units) -> Result<f64> {
    let nu = nu.into();
    let hw = units.hbar * units.omega();
    if let Shear::Exact(r) = nu {
        return Ok(hw * ratio_to_f64(ho_half_line_level(branch, k, r)?));
    }
    let v = nu.value();
    check_shear(v)?;
    let scale = match branch {
        Branch::Left => v / (2.0 * v - 1.0),
        Branch::Right => v,
    };
    Ok(hw * scale * (2.0 * k as f64 + 1.5))
}

/// `nu_ij = (2(i + j) + 3) / (4j + 3)`.
pub fn ho_crossing_shear(i: usize, j: usize) -> Q {
    Ratio::new(2 * (i + j) as i64 + 3, 4 * j as i64 + 3)
}

/// All origin crossings of level `n >= 1`, sorted by descending shear.
///
/// Every event has the energy `hbar omega (n + 1/2)` of the symmetric oscillator.
pub fn ho_crossings(n: usize, units: &Units) -> Vec<CrossingEvent> {
    if n == 0 {
        return Vec::new();
    }
    let energy = ho_endpoint_spectrum(n, Endpoint::NuOne, units);
    let sum = n - 1;
    // Larger i (closer to j) gives larger nu.
    (0..=sum / 2)
        .rev()
        .map(|i| {
            let j = sum - i;
            CrossingEvent {
                kind: PotentialKind::SplitHarmonic,
                i,
                j,
                n,
                nu: Shear::Exact(ho_crossing_shear(i, j)),
                energy,
            }
        })
        .collect()
}

// --- split linear potential -------------------------------------------------

fn zero_magnitude(k: usize) -> Result<f64> {
    Ok(-airy_zero(k)?.value)
}

/// Half-line level on the `k`-th zero of `Ai`:
/// `-a_k / 2^(1/3) (hbar^2 kappa^2 / m)^(1/3) s^(2/3)` with `s = nu/(2nu-1)` on
/// the left and `s = nu` on the right.
pub fn linear_half_line_energy(branch: Branch, k: usize, nu: impl Into<Shear>, units: &Units) -> Result<f64> {
    let nu = nu.into();
    check_shear(nu.value())?;
    let scale = match branch {
        Branch::Left => nu.left_scale(),
        Branch::Right => nu.value(),
    };
    let a = zero_magnitude(k)?;
    Ok(a / libm::cbrt(2.0) * units.linear_energy_unit() * libm::cbrt(scale * scale))
}

/// Crossing `(i, j)` with `1 <= i <= j`:
/// `nu_ij = [1 + (|a_i|/|a_j|)^(3/2)] / 2`,
/// `E_ij = (hbar^2 kappa^2/m)^(1/3) (|a_i|^(3/2) + |a_j|^(3/2))^(2/3) / 2`.
pub fn linear_crossing(i: usize, j: usize, units: &Units) -> Result<CrossingEvent> {
    if i == 0 || i > j {
        return Err(Error::IndexOutOfRange { index: i, min: 1, max: j.max(1) });
    }
    if j > MAX_ZERO_INDEX {
        return Err(Error::IndexOutOfRange { index: j, min: 1, max: MAX_ZERO_INDEX });
    }
    let ai = zero_magnitude(i)?;
    let aj = zero_magnitude(j)?;
    // Both zeros are negative; work with magnitudes so the 3/2 power is real.
    let ratio = ai / aj;
    let nu = if i == j { 1.0 } else { 0.5 * (1.0 + ratio * libm::sqrt(ratio)) };
    let sum = ai * libm::sqrt(ai) + aj * libm::sqrt(aj);
    let energy = units.linear_energy_unit() * libm::cbrt(sum * sum) / 2.0;
    Ok(CrossingEvent { kind: PotentialKind::SplitLinear, i, j, n: i + j - 1, nu: Shear::Float(nu), energy })
}

/// All crossings of level `n >= 1` (pairs with `i + j = n + 1`), sorted by descending shear.
pub fn linear_crossings(n: usize, units: &Units) -> Result<Vec<CrossingEvent>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let sum = n + 1;
    (1..=sum / 2).rev().map(|i| linear_crossing(i, sum - i, units)).collect()
}

/// Crossings for every `i + j` in `2..=max_sum`, ordered by `i + j` then `i`.
pub fn linear_crossing_table(max_sum: usize, units: &Units) -> Result<Vec<CrossingEvent>> {
    let mut rows = Vec::new();
    for sum in 2..=max_sum {
        for i in 1..=sum / 2 {
            rows.push(linear_crossing(i, sum - i, units)?);
        }
    }
    Ok(rows)
}

/// Spread `max E_ij - min E_ij` over the pairs with a fixed `i + j`.
pub fn linear_crossing_spread(sum: usize, units: &Units) -> Result<f64> {
    if sum < 2 {
        return Ok(0.0);
    }
    let energies = linear_crossings(sum - 1, units)?;
    let (lo, hi) = energies
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| (lo.min(c.energy), hi.max(c.energy)));
    Ok(hi - lo)
}

/// Large-index crossing energy `(hbar^2 kappa^2/m)^(1/3) (6 pi)^(2/3) / 8 (2i + 2j - 1)^(2/3)`.
pub fn semiclassical_energy(i: usize, j: usize, units: &Units) -> f64 {
    let six_pi = 6.0 * PI;
    let m = (2 * (i + j)) as f64 - 1.0;
    units.linear_energy_unit() * libm::cbrt(six_pi * six_pi) / 8.0 * libm::cbrt(m * m)
}

/// The crossing energy obtained by inserting the leading zero estimate
/// `a_k ~ -[c (k - 1/4)]^(2/3)` into the exact crossing formula.
///
/// With `c = 3 pi / 2` this reproduces [`semiclassical_energy`].
pub fn semiclassical_energy_with(i: usize, j: usize, coefficient: f64, units: &Units) -> f64 {
    let ai = -asymptotic_zero_with(i, coefficient);
    let aj = -asymptotic_zero_with(j, coefficient);
    let sum = ai * libm::sqrt(ai) + aj * libm::sqrt(aj);
    units.linear_energy_unit() * libm::cbrt(sum * sum) / 2.0
}
