//! Bound-state spectra of sheared one-dimensional potentials.
//!
//! Two potential families are supported, the split harmonic oscillator and
//! the split linear potential. Both have a left branch that is a rescaled copy
//! of the right branch, controlled by a shear parameter `nu` in `(1/2, 1]`,
//! such that the distance between the classical turning points at a fixed
//! energy does not depend on `nu`.
//!
//! The crate provides:
//!
//! * [`potentials`]: the two families, their turning points and units.
//! * [`airy`]: `Ai`, `Ai'` and the negative-axis zeros of `Ai`.
//! * [`analytic`]: closed-form half-line spectra and the shear values at which
//!   an eigenfunction has a node exactly at the origin.
//! * [`shooting`]: a Numerov shooting eigensolver matched at the origin, the
//!   exact Airy-function eigensolver for the linear family, and shear sweeps.
//! * [`nodes`]: node extraction, node trajectories across a sweep and
//!   detection of origin crossings.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod airy;
pub mod analytic;
mod error;
pub mod nodes;
pub mod potentials;
mod roots;
pub mod shooting;

pub use error::{Error, Result};
pub use potentials::{Model, PotentialKind, Shear, TurningPoints, Units};
