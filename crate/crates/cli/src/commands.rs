//! Table-producing subcommands. Each returns a [`Table`]; writing files and
//! manifests is left to the caller.

use anyhow::{bail, Context};
use rayon::prelude::*;
use sheared_core::analytic::{ho_crossings, linear_crossing_table, linear_crossings, CrossingEvent};
use sheared_core::nodes::{find_crossings, DetectedCrossing};
use sheared_core::shooting::{solve_level_near, spectrum_sweep, Family, SweepResult};
use sheared_core::{PotentialKind, Shear};

use crate::config::{units_comment, Settings};
use crate::table::{format_sig, Table};

/// Largest `i + j` in the reference linear crossing table.
pub const TABLE1_MAX_SUM: usize = 11;

/// `steps + 1` shears from `nu_max` down to `nu_min`.
pub fn shear_grid(nu_max: f64, nu_min: f64, steps: usize) -> anyhow::Result<Vec<f64>> {
    if !(nu_min.is_finite() && nu_max.is_finite()) {
        bail!("shear bounds must be finite");
    }
    if steps == 0 || nu_min == nu_max {
        if nu_min != nu_max {
            bail!("--steps must be positive when --nu-min differs from --nu-max");
        }
        return Ok(vec![nu_max]);
    }
    if nu_min > nu_max {
        bail!("--nu-min ({nu_min}) exceeds --nu-max ({nu_max})");
    }
    let span = nu_max - nu_min;
    Ok((0..=steps).map(|k| if k == steps { nu_min } else { nu_max - span * k as f64 / steps as f64 }).collect())
}

fn pool(settings: &Settings) -> anyhow::Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = settings.jobs {
        b = b.num_threads(j);
    }
    b.build().context("starting worker threads")
}

fn exact_or_blank(nu: Shear) -> String {
    match nu {
        Shear::Exact(r) => format!("{}/{}", r.numer(), r.denom()),
        Shear::Float(_) => String::new(),
    }
}

/// The split linear crossing table for `i + j = 2..=11`.
pub fn table1(settings: &Settings) -> anyhow::Result<Table> {
    let kind = PotentialKind::SplitLinear;
    let units = settings.units(kind)?;
    let d = settings.digits;
    let mut t = Table::new(&["i_plus_j", "i", "j", "nu", "energy"]);
    t.comment("split linear potential: shears and energies at which a node sits on x = 0");
    t.comment(units_comment(kind, &units));
    for c in linear_crossing_table(TABLE1_MAX_SUM, &units)? {
        t.push(vec![
            (c.i + c.j).to_string(),
            c.i.to_string(),
            c.j.to_string(),
            format_sig(c.nu.value(), d),
            format_sig(c.energy, d),
        ]);
    }
    Ok(t)
}

/// `E_n(nu)` and `E_n(nu) - E_n(1)` for `n = 0..=n_max` over `grid`.
pub fn spectrum(kind: PotentialKind, grid: &[f64], n_max: usize, settings: &Settings) -> anyhow::Result<Table> {
    settings.validate()?;
    let family = Family::new(kind, settings.units(kind)?);
    let cfg = settings.solver;
    let sweeps: Vec<SweepResult> = pool(settings)?.install(|| {
        (0..=n_max).into_par_iter().map(|n| spectrum_sweep(&family, n, grid, &cfg)).collect::<Result<Vec<_>, _>>()
    })?;

    let d = settings.digits;
    let mut t = Table::new(&["nu", "n", "energy", "energy_minus_E_n1", "status"]);
    t.comment(format!("{kind} model spectrum, levels 0..={n_max}"));
    t.comment(units_comment(kind, &family.units));
    for s in &sweeps {
        t.comment(format!("E_{}(1) = {}", s.n, format_sig(s.reference, d)));
    }
    for (k, &nu) in grid.iter().enumerate() {
        for s in &sweeps {
            let p = &s.points[k];
            let row = match &p.energy {
                Ok(e) => vec![format_sig(nu, d), s.n.to_string(), format_sig(*e, d), format_sig(e - s.reference, d), "ok".into()],
                Err(err) => vec![format_sig(nu, d), s.n.to_string(), String::new(), String::new(), err.to_string()],
            };
            t.push(row);
        }
    }
    Ok(t)
}

/// Closed-form crossings for levels `1..=n_max`.
pub fn crossings(kind: PotentialKind, n_max: usize, settings: &Settings) -> anyhow::Result<Table> {
    let units = settings.units(kind)?;
    let d = settings.digits;
    let mut t = Table::new(&["n", "i", "j", "nu", "nu_exact", "energy"]);
    t.comment(format!("{kind} model: closed-form shears at which level n has a node on x = 0"));
    t.comment(units_comment(kind, &units));
    for n in 1..=n_max {
        let events: Vec<CrossingEvent> = match kind {
            PotentialKind::SplitHarmonic => ho_crossings(n, &units),
            PotentialKind::SplitLinear => linear_crossings(n, &units)?,
        };
        for c in events {
            t.push(vec![
                n.to_string(),
                c.i.to_string(),
                c.j.to_string(),
                format_sig(c.nu.value(), d),
                exact_or_blank(c.nu),
                format_sig(c.energy, d),
            ]);
        }
    }
    Ok(t)
}

/// Node positions of level `n` over `grid`, followed by detected crossings.
///
/// `record` is `node` for a node position and `crossing` for a refined
/// origin crossing. If the trajectory cannot be followed the levels are solved
/// independently and each row carries its own status.
pub fn nodes(kind: PotentialKind, n: usize, grid: &[f64], settings: &Settings) -> anyhow::Result<Table> {
    settings.validate()?;
    let family = Family::new(kind, settings.units(kind)?);
    let cfg = settings.solver;
    family.check_grid(grid, &cfg)?;
    let d = settings.digits;
    let mut t = Table::new(&["record", "nu", "energy", "node", "x", "i", "j", "status"]);
    t.comment(format!("{kind} model, level {n}: node positions and origin crossings"));
    t.comment(units_comment(kind, &family.units));
    t.comment(format!("node_tol = {}", cfg.node_tol));

    match find_crossings(&family, n, grid, &cfg) {
        Ok((trajectory, found)) => {
            for s in &trajectory.samples {
                for (k, x) in s.nodes.iter().enumerate() {
                    t.push(vec![
                        "node".into(),
                        format_sig(s.nu, d),
                        format_sig(s.energy, d),
                        k.to_string(),
                        format_sig(*x, d),
                        String::new(),
                        String::new(),
                        "ok".into(),
                    ]);
                }
            }
            for v in &trajectory.drift_violations {
                t.comment(format!(
                    "drift: node {} moved left by {} at nu = {}",
                    v.node,
                    format_sig(-v.shift, 3),
                    format_sig(trajectory.samples[v.sample].nu, d)
                ));
            }
            for c in &found {
                push_crossing(&mut t, kind, c, d);
            }
        }
        Err(err) => {
            t.comment(format!("tracking failed: {err}; levels solved independently"));
            let mut guess = family.symmetric_level(n)?;
            for &nu in grid {
                match family.at(nu).and_then(|m| solve_level_near(&m, n, guess, &cfg)) {
                    Ok(sol) => {
                        guess = sol.energy;
                        for (k, x) in sol.nodes.iter().enumerate() {
                            t.push(vec![
                                "node".into(),
                                format_sig(nu, d),
                                format_sig(sol.energy, d),
                                k.to_string(),
                                format_sig(*x, d),
                                String::new(),
                                String::new(),
                                "ok".into(),
                            ]);
                        }
                    }
                    Err(e) => t.push(vec![
                        "node".into(),
                        format_sig(nu, d),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        e.to_string(),
                    ]),
                }
            }
        }
    }
    Ok(t)
}

fn push_crossing(t: &mut Table, kind: PotentialKind, c: &DetectedCrossing, d: usize) {
    let (i, j) = c.indices(kind);
    let status = if c.at_sample { "at_sample" } else { "interpolated" };
    t.push(vec![
        "crossing".into(),
        format_sig(c.nu_star, d),
        format_sig(c.energy, d),
        c.left_nodes.to_string(),
        "0".into(),
        i.to_string(),
        j.to_string(),
        status.into(),
    ]);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_are_exact() {
        let g = shear_grid(1.0, 0.55, 9).unwrap();
        assert_eq!(g.len(), 10);
        assert_eq!((g[0], g[9]), (1.0, 0.55));
        assert!(g.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(shear_grid(0.8, 0.8, 0).unwrap(), vec![0.8]);
        assert!(shear_grid(0.6, 0.9, 3).is_err());
        assert!(shear_grid(1.0, 0.6, 0).is_err());
    }

    #[test]
    fn table1_has_reference_shape() {
        let t = table1(&Settings::default()).unwrap();
        assert_eq!(t.rows.len(), 30);
        assert_eq!(t.rows[0], ["2", "1", "1", "1.000000000", "1.855757081"]);
        // The printed row reads 0.8261801521 / 6.305322798 (truncated, not rounded).
        let nu: f64 = t.rows[23][3].parse().unwrap();
        let e: f64 = t.rows[23][4].parse().unwrap();
        assert!((nu - 0.8261801521).abs() < 2e-10 && (e - 6.305322798).abs() < 2e-9);
    }

    #[test]
    fn harmonic_crossings_are_exact_rationals() {
        let t = crossings(PotentialKind::SplitHarmonic, 4, &Settings::default()).unwrap();
        let n4: Vec<&Vec<String>> = t.rows.iter().filter(|r| r[0] == "4").collect();
        assert_eq!(n4.len(), 2);
        assert_eq!(n4[0][4], "9/11");
        assert_eq!(n4[1][4], "3/5");
        assert!(n4.iter().all(|r| r[5] == "4.500000000"));
    }

    #[test]
    fn ground_state_spectrum_stays_above() {
        let g = shear_grid(1.0, 0.6, 8).unwrap();
        let t = spectrum(PotentialKind::SplitHarmonic, &g, 0, &Settings::default()).unwrap();
        assert_eq!(t.rows.len(), 9);
        for r in &t.rows[1..] {
            assert_eq!(r[4], "ok");
            assert!(r[3].parse::<f64>().unwrap() > 0.0);
        }
    }

    #[test]
    fn nodes_report_crossing() {
        let g = shear_grid(1.0, 0.65, 14).unwrap();
        let t = nodes(PotentialKind::SplitHarmonic, 2, &g, &Settings::default()).unwrap();
        let c: Vec<&Vec<String>> = t.rows.iter().filter(|r| r[0] == "crossing").collect();
        assert_eq!(c.len(), 1);
        assert!((c[0][1].parse::<f64>().unwrap() - 5.0 / 7.0).abs() < 1e-4);
        assert_eq!((c[0][5].as_str(), c[0][6].as_str()), ("0", "1"));
    }
}
