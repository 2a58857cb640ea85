//! Self-checks run by `sheared-spectra verify`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::Ratio;
use serde::Serialize;
use sheared_core::airy::{airy_ai, airy_ai_asymptotic, airy_ai_series, airy_zeros, SERIES_RADIUS};
use sheared_core::analytic::{
    ho_crossing_shear, ho_crossings, ho_endpoint_level, ho_endpoint_ratio, ho_half_line_level, linear_crossing,
    linear_crossing_spread, linear_crossing_table, linear_crossings, semiclassical_energy, semiclassical_energy_with,
    Branch, Endpoint,
};
use sheared_core::nodes::find_crossings;
use sheared_core::shooting::{linear_exact_eigensolve, solve_level, solve_level_near, Family, SolverConfig};
use sheared_core::{Model, PotentialKind, Units};

use crate::commands::TABLE1_MAX_SUM;
use crate::reference;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    ClosedForms,
    OracleEquivalence,
    Airy,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "closed_forms" => Ok(Suite::ClosedForms),
            "oracle_equivalence" => Ok(Suite::OracleEquivalence),
            "airy" => Ok(Suite::Airy),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}` (closed_forms, oracle_equivalence, airy, all)")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::ClosedForms => "closed_forms",
            Suite::OracleEquivalence => "oracle_equivalence",
            Suite::Airy => "airy",
            Suite::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("{mark} {}/{} ({:.2}s): {}\n", c.suite, c.name, c.seconds, c.detail));
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        s.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        s
    }
}

type Outcome = anyhow::Result<(bool, String)>;

fn run(suite: Suite, name: &'static str, f: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e:#}")),
    };
    Check { suite, name, passed, detail, seconds: start.elapsed().as_secs_f64() }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

pub fn run_suite(suite: Suite, cfg: &SolverConfig) -> Report {
    let mut checks = Vec::new();
    if matches!(suite, Suite::ClosedForms | Suite::All) {
        let s = Suite::ClosedForms;
        checks.push(run(s, "table1_reproduction", table1_reproduction));
        checks.push(run(s, "harmonic_closed_forms", harmonic_closed_forms));
        checks.push(run(s, "linear_near_degeneracy", near_degeneracy));
        checks.push(run(s, "semiclassical_coefficient", semiclassical_check));
    }
    if matches!(suite, Suite::OracleEquivalence | Suite::All) {
        let s = Suite::OracleEquivalence;
        checks.push(run(s, "harmonic_shooting_vs_closed_form", || harmonic_shooting(cfg)));
        checks.push(run(s, "linear_shooting_vs_exact_airy", || linear_shooting(cfg)));
        checks.push(run(s, "oscillation_crossing_correspondence", || oscillation_crossings(cfg)));
    }
    if matches!(suite, Suite::Airy | Suite::All) {
        let s = Suite::Airy;
        checks.push(run(s, "ode_residual", airy_residual));
        checks.push(run(s, "zero_interlacing", airy_interlacing));
        checks.push(run(s, "series_asymptotic_overlap", airy_overlap));
    }
    let passed = checks.iter().all(|c| c.passed);
    Report { suite, passed, checks }
}

fn table1_reproduction() -> Outcome {
    let start = Instant::now();
    let rows = linear_crossing_table(TABLE1_MAX_SUM, &Units::linear_default())?;
    let printed = reference::table1();
    if rows.len() != printed.len() {
        return Ok((false, format!("{} rows computed, {} printed", rows.len(), printed.len())));
    }
    let mut worst = 0.0f64;
    for (c, p) in rows.iter().zip(&printed) {
        if (c.i, c.j) != (p.i, p.j) {
            return Ok((false, format!("row order differs at ({}, {})", p.i, p.j)));
        }
        worst = worst.max(rel(c.nu.value(), p.nu)).max(rel(c.energy, p.energy));
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = worst <= 1e-8 && elapsed < 1.0;
    Ok((ok, format!("{} rows, max relative error {worst:.2e} (limit 1e-8), {elapsed:.3}s (limit 1s)", rows.len())))
}

fn harmonic_closed_forms() -> Outcome {
    let half = Ratio::new(1, 2);
    let mut events = 0;
    for n in 1..=10usize {
        for c in ho_crossings(n, &Units::harmonic_default()) {
            events += 1;
            let nu = c.nu.as_ratio().ok_or_else(|| anyhow::anyhow!("inexact shear for ({}, {})", c.i, c.j))?;
            let expected = Ratio::new(2 * (c.i + c.j) as i64 + 3, 4 * c.j as i64 + 3);
            let level = Ratio::from_integer(n as i64) + half;
            let left = ho_half_line_level(Branch::Left, c.i, nu)?;
            let right = ho_half_line_level(Branch::Right, c.j, nu)?;
            if nu != expected || nu != ho_crossing_shear(c.i, c.j) || left != level || right != level || c.i + c.j + 1 != n {
                return Ok((false, format!("n={n} (i, j)=({}, {}): nu={nu}, left={left}, right={right}", c.i, c.j)));
            }
        }
    }
    for n in 0..=10usize {
        let two_n = Ratio::from_integer(2 * n as i64);
        let expected = (two_n + Ratio::new(3, 2)) / (two_n + 1);
        let direct = ho_endpoint_level(n, Endpoint::NuHalf) / ho_endpoint_level(n, Endpoint::NuOne);
        if ho_endpoint_ratio(n) != expected || direct != expected {
            return Ok((false, format!("endpoint ratio for n={n}")));
        }
    }
    Ok((true, format!("{events} crossing events for n <= 10 exact; endpoint ratios exact for n <= 10")))
}

fn near_degeneracy() -> Outcome {
    let units = Units::linear_default();
    let printed: Vec<_> = reference::table1().into_iter().filter(|r| r.i + r.j == 6).collect();
    let mut worst = 0.0f64;
    for p in &printed {
        worst = worst.max(rel(linear_crossing(p.i, p.j, &units)?.energy, p.energy));
    }
    let spread = linear_crossing_spread(6, &units)?;
    let ok = printed.len() == 3 && worst <= 1e-8 && (spread - 2.7e-3).abs() < 0.1e-3;
    Ok((ok, format!("i+j=6: max relative error {worst:.2e}; spread {spread:.4e}")))
}

fn semiclassical_check() -> Outcome {
    let units = Units::linear_default();
    let mut detail = Vec::new();
    let mut ok = true;
    for (i, j) in [(5, 5), (5, 6)] {
        let exact = linear_crossing(i, j, &units)?.energy;
        let good = rel(semiclassical_energy(i, j, &units), exact);
        let printed = rel(semiclassical_energy_with(i, j, std::f64::consts::PI, &units), exact);
        ok &= good < 5e-3 && printed > 0.2;
        detail.push(format!("({i},{j}): 3pi/2 {:.3}%, pi {:.1}%", 100.0 * good, 100.0 * printed));
    }
    Ok((ok, detail.join("; ")))
}

fn harmonic_shooting(cfg: &SolverConfig) -> Outcome {
    let start = Instant::now();
    let units = Units::harmonic_default();
    let mut worst_sym = 0.0f64;
    let symmetric = Model::new(PotentialKind::SplitHarmonic, units, 1.0)?;
    for n in 0..=7 {
        let e = solve_level(&symmetric, n, cfg)?.energy;
        worst_sym = worst_sym.max(rel(e, n as f64 + 0.5));
    }
    let mut worst_cross = 0.0f64;
    let mut worst_node = 0.0f64;
    for n in 1..=5 {
        for c in ho_crossings(n, &units) {
            let model = Model::new(PotentialKind::SplitHarmonic, units, c.nu)?;
            let sol = solve_level_near(&model, n, c.energy, cfg)?;
            worst_cross = worst_cross.max(rel(sol.energy, c.energy));
            let closest = sol.nodes.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()));
            worst_node = worst_node.max(closest);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = worst_sym <= 1e-8 && worst_cross <= 1e-7 && worst_node < 2.0 * cfg.grid_step && elapsed < 30.0;
    Ok((
        ok,
        format!(
            "nu=1: {worst_sym:.2e} (1e-8); crossings: {worst_cross:.2e} (1e-7); max |x_node| {worst_node:.2e} (< {:.1e}); {elapsed:.2}s",
            2.0 * cfg.grid_step
        ),
    ))
}

fn linear_shooting(cfg: &SolverConfig) -> Outcome {
    let units = Units::linear_default();
    let family = Family::new(PotentialKind::SplitLinear, units);
    let mut worst = 0.0f64;
    for k in 0..20 {
        let nu = 1.0 - 0.45 * k as f64 / 19.0;
        let model = family.at(nu)?;
        for n in 0..=6 {
            let exact = linear_exact_eigensolve(nu, n, &units)?;
            let shot = solve_level_near(&model, n, exact, cfg)?.energy;
            worst = worst.max(rel(shot, exact));
        }
    }
    Ok((worst <= 1e-7, format!("20 shears x 7 levels, max relative difference {worst:.2e} (limit 1e-7)")))
}

fn oscillation_crossings(cfg: &SolverConfig) -> Outcome {
    let grid: Vec<f64> = (0..=45).map(|k| 1.0 - 0.45 * k as f64 / 45.0).collect();
    let harmonic = Family::with_default_units(PotentialKind::SplitHarmonic);
    let (_, found) = find_crossings(&harmonic, 4, &grid, cfg)?;
    let interior: Vec<_> = found.iter().filter(|c| !c.at_sample).collect();
    let targets = [9.0 / 11.0, 3.0 / 5.0];
    let mut ok = interior.len() == 2;
    let mut detail = format!("harmonic n=4: {} interior crossings", interior.len());
    for (c, t) in interior.iter().zip(targets) {
        let (dnu, de) = ((c.nu_star - t).abs(), (c.energy - 4.5).abs());
        ok &= dnu < 1e-4 && de < 1e-6;
        detail.push_str(&format!("; nu*={:.6} (|d|={dnu:.1e}), |E-4.5|={de:.1e}", c.nu_star));
    }

    let linear = Family::with_default_units(PotentialKind::SplitLinear);
    let (_, found) = find_crossings(&linear, 3, &grid, cfg)?;
    let expected = linear_crossings(3, &linear.units)?;
    ok &= found.len() == expected.len();
    detail.push_str(&format!("; linear n=3: {} crossings", found.len()));
    for (c, e) in found.iter().zip(&expected) {
        let dnu = (c.nu_star - e.nu.value()).abs();
        ok &= dnu < 1e-4 && c.indices(PotentialKind::SplitLinear) == (e.i, e.j);
        detail.push_str(&format!("; ({},{}) nu*={:.6} (|d|={dnu:.1e})", e.i, e.j, c.nu_star));
    }
    Ok((ok, detail))
}

fn airy_residual() -> Outcome {
    let h = 1e-4;
    let mut worst = 0.0f64;
    for k in 0..500 {
        let z = -20.0 + 25.0 * k as f64 / 499.0;
        let (ai, _) = airy_ai(z)?;
        let second = (airy_ai(z + h)?.1 - airy_ai(z - h)?.1) / (2.0 * h);
        worst = worst.max((second - z * ai).abs() / (1.0 + (z * ai).abs()));
    }
    Ok((worst <= 1e-6, format!("500 points on [-20, 5], max scaled residual {worst:.2e} (limit 1e-6)")))
}

fn airy_interlacing() -> Outcome {
    let zeros = airy_zeros(20)?;
    let sign_changes = |a: f64, b: f64| -> anyhow::Result<usize> {
        let mut count = 0;
        let mut prev = airy_ai(a)?.0;
        for k in 1..=400 {
            let v = airy_ai(a + (b - a) * k as f64 / 400.0)?.0;
            if (v < 0.0) != (prev < 0.0) {
                count += 1;
            }
            prev = v;
        }
        Ok(count)
    };
    let delta = 1e-6;
    if sign_changes(zeros[0].value + delta, 0.0)? != 0 {
        return Ok((false, "sign change on (a_1, 0]".into()));
    }
    for w in zeros.windows(3) {
        let found = sign_changes(w[2].value + delta, w[0].value - delta)?;
        if found != 1 {
            return Ok((false, format!("{found} sign changes strictly between a_{} and a_{}", w[2].index, w[0].index)));
        }
    }
    Ok((true, "one sign change between a_(i+2) and a_i for i <= 18; none on (a_1, 0]".into()))
}

fn airy_overlap() -> Outcome {
    let mut worst = 0.0f64;
    for z in [-SERIES_RADIUS, SERIES_RADIUS] {
        let (s, sd) = airy_ai_series(z);
        let (a, ad) = airy_ai_asymptotic(z);
        worst = worst.max(rel(s, a)).max(rel(sd, ad));
    }
    Ok((worst <= 1e-12, format!("|z| = {SERIES_RADIUS}: max relative difference {worst:.2e} (limit 1e-12)")))
}
