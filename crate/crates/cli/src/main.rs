use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use sheared_core::PotentialKind;
use sheared_spectra::commands::{self, shear_grid};
use sheared_spectra::config::{Settings, CONFIG_ENV};
use sheared_spectra::manifest::{write_with_manifest, RunManifest};
use sheared_spectra::table::Table;
use sheared_spectra::verify::{run_suite, Suite};

/// Spectra, node trajectories and origin crossings of sheared 1D potentials.
#[derive(Parser, Debug)]
#[command(name = "sheared-spectra", version)]
struct Cli {
    /// `key = value` settings file applied before command-line flags.
    #[arg(long, env = CONFIG_ENV, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Linear-potential crossing table for i + j = 2..11.
    Table1(Common),
    /// E_n(nu) and E_n(nu) - E_n(1) over a shear grid.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Highest level.
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form crossing shears and energies.
    Crossings {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Node positions of one level over a shear grid, with detected crossings.
    Nodes {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Level (number of nodes).
        #[arg(long, short = 'n', default_value_t = 4)]
        level: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite; exit status 1 if any check fails.
    Verify {
        #[arg(value_parser = |s: &str| s.parse::<Suite>(), default_value = "all")]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct ModelArgs {
    #[arg(long, value_parser = sheared_spectra::parse_model, default_value = "harmonic")]
    model: PotentialKind,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Single shear; overrides the range flags.
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long, default_value_t = 0.55)]
    nu_min: f64,
    #[arg(long, default_value_t = 1.0)]
    nu_max: f64,
    /// Number of grid intervals.
    #[arg(long, default_value_t = 45)]
    steps: usize,
}

impl GridArgs {
    fn grid(&self) -> anyhow::Result<Vec<f64>> {
        match self.nu {
            Some(nu) => Ok(vec![nu]),
            None => shear_grid(self.nu_max, self.nu_min, self.steps),
        }
    }

    fn record(&self, m: &mut RunManifest) {
        match self.nu {
            Some(nu) => m.param("nu", nu),
            None => m.param("nu_min", self.nu_min).param("nu_max", self.nu_max).param("steps", self.steps),
        };
    }
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    grid_step: Option<f64>,
    /// Relative energy tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Worker threads for per-level work.
    #[arg(long)]
    jobs: Option<usize>,
    /// Significant digits in CSV output.
    #[arg(long)]
    digits: Option<usize>,
    /// Output file; a manifest is written beside it. Standard output otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn settings(&self, config: Option<&PathBuf>) -> anyhow::Result<Settings> {
        let mut s = Settings::load(config.map(|p| p.as_path()))?;
        if let Some(h) = self.grid_step {
            s.set("grid_step", &h.to_string())?;
        }
        if let Some(t) = self.tol {
            s.set("energy_tol", &t.to_string())?;
        }
        if let Some(j) = self.jobs {
            s.set("jobs", &j.to_string())?;
        }
        if let Some(d) = self.digits {
            s.set("digits", &d.to_string())?;
        }
        s.validate()?;
        Ok(s)
    }
}

fn emit(text: &str, out: Option<&PathBuf>, manifest: &mut RunManifest) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            let m = write_with_manifest(path, text, manifest)?;
            eprintln!("wrote {} and {}", path.display(), m.display());
        }
        None => std::io::stdout().lock().write_all(text.as_bytes()).context("writing to stdout")?,
    }
    Ok(())
}

fn manifest_for(name: &str, settings: &Settings, config: Option<&PathBuf>, model: Option<PotentialKind>) -> RunManifest {
    let mut m = RunManifest::new(name);
    m.overrides = settings.overrides.clone();
    m.config_file = config.map(|p| p.display().to_string());
    m.model = model.map(|k| k.to_string());
    m
}

fn emit_table(table: Table, common: &Common, manifest: &mut RunManifest) -> anyhow::Result<ExitCode> {
    emit(&table.render(), common.out.as_ref(), manifest)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let config = cli.config.as_ref();
    match cli.command {
        Command::Table1(common) => {
            let s = common.settings(config)?;
            let mut m = manifest_for("table1", &s, config, Some(PotentialKind::SplitLinear));
            m.param("digits", s.digits);
            emit_table(commands::table1(&s)?, &common, &mut m)
        }
        Command::Spectrum { model, grid, nmax, common } => {
            let s = common.settings(config)?;
            let mut m = manifest_for("spectrum", &s, config, Some(model.model));
            grid.record(&mut m);
            m.param("nmax", nmax);
            emit_table(commands::spectrum(model.model, &grid.grid()?, nmax, &s)?, &common, &mut m)
        }
        Command::Crossings { model, nmax, common } => {
            let s = common.settings(config)?;
            let mut m = manifest_for("crossings", &s, config, Some(model.model));
            m.param("nmax", nmax);
            emit_table(commands::crossings(model.model, nmax, &s)?, &common, &mut m)
        }
        Command::Nodes { model, grid, level, common } => {
            let s = common.settings(config)?;
            let mut m = manifest_for("nodes", &s, config, Some(model.model));
            grid.record(&mut m);
            m.param("level", level);
            emit_table(commands::nodes(model.model, level, &grid.grid()?, &s)?, &common, &mut m)
        }
        Command::Verify { suite, common } => {
            let s = common.settings(config)?;
            let mut m = manifest_for("verify", &s, config, None);
            m.param("suite", suite.to_string());
            let report = run_suite(suite, &s.solver);
            let mut json = serde_json::to_string_pretty(&report)?;
            json.push('\n');
            match &common.out {
                Some(_) => {
                    print!("{}", report.summary());
                    emit(&json, common.out.as_ref(), &mut m)?;
                }
                None => {
                    eprint!("{}", report.summary());
                    emit(&json, None, &mut m)?;
                }
            }
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
