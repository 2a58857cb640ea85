//! Front end for `sheared-core`: CSV tables, run manifests and verification
//! suites behind the `sheared-spectra` binary.

pub mod commands;
pub mod config;
pub mod manifest;
pub mod reference;
pub mod table;
pub mod verify;

use sheared_core::PotentialKind;

/// Parses `harmonic` or `linear`.
pub fn parse_model(s: &str) -> Result<PotentialKind, String> {
    match s {
        "harmonic" => Ok(PotentialKind::SplitHarmonic),
        "linear" => Ok(PotentialKind::SplitLinear),
        other => Err(format!("unknown model `{other}` (expected harmonic or linear)")),
    }
}
