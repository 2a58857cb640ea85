//! Run settings: solver parameters, units and output options.
//!
//! Values come from defaults, then an optional `key = value` file named by
//! `SHEARED_SPECTRA_CONFIG`, then command-line flags. Every value that was
//! set explicitly is kept in `overrides` for the run manifest.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use sheared_core::shooting::SolverConfig;
use sheared_core::{PotentialKind, Units};

pub const CONFIG_ENV: &str = "SHEARED_SPECTRA_CONFIG";

pub const KEYS: &[&str] = &[
    "grid_step",
    "domain_margin",
    "energy_tol",
    "node_tol",
    "max_iter",
    "delta_nu_min",
    "hbar",
    "mass",
    "kappa",
    "digits",
    "jobs",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub solver: SolverConfig,
    pub hbar: Option<f64>,
    pub mass: Option<f64>,
    pub kappa: Option<f64>,
    pub digits: usize,
    /// Worker threads; `None` lets rayon decide.
    pub jobs: Option<usize>,
    pub overrides: BTreeMap<String, String>,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            solver: SolverConfig::default(),
            hbar: None,
            mass: None,
            kappa: None,
            digits: 10,
            jobs: None,
            overrides: BTreeMap::new(),
        }
    }
}

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
pub fn parse(text: &str) -> anyhow::Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| anyhow!("line {}: expected key = value", no + 1))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

impl Settings {
    /// Defaults overlaid with the file at `path`, if any.
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let mut s = Self::default();
        if let Some(p) = path {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
            for (k, v) in parse(&text).with_context(|| format!("in config {}", p.display()))? {
                s.set(&k, &v).with_context(|| format!("in config {}", p.display()))?;
            }
        }
        Ok(s)
    }

    pub fn set(&mut self, key: &str, value: &str) -> anyhow::Result<()> {
        let float = || value.parse::<f64>().with_context(|| format!("{key}: `{value}` is not a number"));
        let int = || value.parse::<usize>().with_context(|| format!("{key}: `{value}` is not a non-negative integer"));
        match key {
            "grid_step" => {
                self.solver = self.solver.with_grid_step(float()?);
                if let Some(t) = self.overrides.get("node_tol") {
                    self.solver.node_tol = t.parse()?;
                }
            }
            "domain_margin" => self.solver.domain_margin = float()?,
            "energy_tol" => self.solver.energy_tol = float()?,
            "node_tol" => self.solver.node_tol = float()?,
            "max_iter" => self.solver.max_iter = int()?,
            "delta_nu_min" => self.solver.delta_nu_min = float()?,
            "hbar" => self.hbar = Some(float()?),
            "mass" => self.mass = Some(float()?),
            "kappa" => self.kappa = Some(float()?),
            "digits" => {
                let d = int()?;
                if !(1..=17).contains(&d) {
                    bail!("digits must be between 1 and 17");
                }
                self.digits = d;
            }
            "jobs" => {
                let j = int()?;
                if j == 0 {
                    bail!("jobs must be at least 1");
                }
                self.jobs = Some(j);
            }
            other => bail!("unknown setting `{other}` (known: {})", KEYS.join(", ")),
        }
        self.overrides.insert(key.to_string(), value.to_string());
        Ok(())
    }

    /// The model's default units with any `hbar`/`mass`/`kappa` overrides.
    pub fn units(&self, kind: PotentialKind) -> anyhow::Result<Units> {
        let d = Units::default_for(kind);
        Ok(Units::new(self.hbar.unwrap_or(d.hbar), self.mass.unwrap_or(d.mass), self.kappa.unwrap_or(d.kappa))?)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        Ok(self.solver.validate()?)
    }
}

/// Human-readable units line for CSV headers.
pub fn units_comment(kind: PotentialKind, units: &Units) -> String {
    let scale = match kind {
        PotentialKind::SplitHarmonic => format!("hbar*omega = {}", units.energy_unit(kind)),
        PotentialKind::SplitLinear => format!("(hbar^2 kappa^2 / m)^(1/3) = {}", units.energy_unit(kind)),
    };
    format!(
        "units: hbar = {}, m = {}, kappa = {}; energies absolute, natural energy unit {scale}",
        units.hbar, units.mass, units.kappa
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_values() {
        let kv = parse("# solver\ngrid_step = 5e-4\n\n  jobs=2  # threads\n").unwrap();
        assert_eq!(kv, vec![("grid_step".into(), "5e-4".into()), ("jobs".into(), "2".into())]);
        assert!(parse("grid_step 1").is_err());
    }

    #[test]
    fn grid_step_moves_node_tol_unless_pinned() {
        let mut s = Settings::default();
        s.set("grid_step", "0.002").unwrap();
        assert_eq!(s.solver.node_tol, 0.004);
        s.set("node_tol", "0.01").unwrap();
        s.set("grid_step", "0.001").unwrap();
        assert_eq!(s.solver.node_tol, 0.01);
        assert_eq!(s.overrides.len(), 2);
    }

    #[test]
    fn rejects_bad_values() {
        let mut s = Settings::default();
        assert!(s.set("grid_stp", "1").is_err());
        assert!(s.set("jobs", "0").is_err());
        assert!(s.set("energy_tol", "tiny").is_err());
        assert!(s.set("digits", "30").is_err());
        assert!(s.overrides.is_empty());
    }

    #[test]
    fn units_override() {
        let mut s = Settings::default();
        s.set("kappa", "2").unwrap();
        let u = s.units(PotentialKind::SplitHarmonic).unwrap();
        assert_eq!(u.omega(), 2.0);
        s.set("mass", "-1").unwrap();
        assert!(s.units(PotentialKind::SplitLinear).is_err());
    }
}
