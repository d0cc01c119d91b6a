//! The `techrace` command line.
//!
//! Exit codes: 0 on success, 1 when `validate` finds a disagreement,
//! 2 for usage errors (bad flags, unknown preset, table or parameter),
//! 3 for any other failure.
//!
//! CSV schemas, one header row each:
//!
//! - `run`: `scenario,horizon,r,p`
//! - `table`: `scenario,R(10),P(10),dR%,dP%` (table4) or
//!   `scenario,R(10),P(10),eps_R` (table5)
//! - `sweep`: `parameter,value,regime,r10`
//! - `validate`: `scenario,trials,seed,analytic_r,mc_r,mc_r_ci99,analytic_p,mc_p,mc_p_ci99,pass`
//! - `trajectory`: `t,p,d,rai,pr_detect,hazard,integrand,cumulative_risk`
//! - `band`: `t` followed by lower, nominal and upper columns for p, d, rai and r
//!
//! The preset file can be replaced by pointing `TECHRACE_PRESETS` at a TOML
//! file with the same layout as the shipped one.

use std::ffi::OsString;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::model::{breakout_prob, cumulative_risk, sample_trajectory, ModelParams};
use crate::montecarlo::{validate, ValidationReport, DEFAULT_SEED, DEFAULT_TRIALS};
use crate::output::{self, fixed, Format, OutputSpec};
use crate::scenario::{scenario_table, walkthrough, PresetCatalog, TableId};
use crate::sensitivity::{oat_sweep, uncertainty_band, BandSpec, SweepGrid, SweepParameter};
use crate::service::{self, ServiceConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "techrace", version, about = "Proliferation versus detection technology race model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// text, csv or json.
    #[arg(long, default_value = "text", value_parser = parse_format)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Decimal places for printed values.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u16).range(1..=17))]
    pub precision: u16,
}

impl OutputArgs {
    fn spec(&self) -> OutputSpec {
        OutputSpec { format: self.format, precision: self.precision as usize }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cumulative risk and breakout probability of one preset.
    Run {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        horizon: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Scenario comparison table.
    Table {
        /// table4 or table5.
        #[arg(long, value_parser = parse_table)]
        id: TableId,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One-at-a-time parameter sweep across the three growth regimes.
    Sweep {
        /// p_max, pi0, eta, beta, kappa or tau.
        #[arg(long)]
        param: String,
        /// Comma-separated grid; defaults to the robustness grid.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<f64>>,
        #[arg(long)]
        horizon: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Step-by-step limited-growth walk-through.
    Walkthrough {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte Carlo check of the analytic risk for one or all presets.
    Validate {
        /// Defaults to every preset.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        horizon: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sampled time series of one preset.
    Trajectory {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        horizon: Option<f64>,
        /// Samples per year.
        #[arg(long, default_value_t = 100.0)]
        resolution: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Uncertainty envelope of one preset over the default ensemble.
    Band {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        horizon: Option<f64>,
        /// Samples per year.
        #[arg(long, default_value_t = 20.0)]
        resolution: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Start the HTTP evaluation service.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        bind: IpAddr,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Do not send cross-origin headers.
        #[arg(long)]
        no_cors: bool,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_table(s: &str) -> Result<TableId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Model(Error),
    Io(std::io::Error),
    ValidationFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Model(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn preset_params(catalog: &PresetCatalog, name: &str, horizon: Option<f64>) -> Result<ModelParams, Error> {
    let mut p = catalog.build_preset(name)?;
    if let Some(h) = horizon {
        p.horizon = h;
        p.validate()?;
    }
    Ok(p)
}

/// Renders `run` output.
pub fn write_run(out: &mut dyn Write, scenario: &str, params: &ModelParams, spec: &OutputSpec) -> std::io::Result<()> {
    let r = cumulative_risk(params).map_err(std::io::Error::other)?;
    let p = breakout_prob(r).map_err(std::io::Error::other)?;
    let h = params.horizon;
    let prec = spec.precision;
    match spec.format {
        Format::Text => writeln!(out, "R({h})={}, P({h})={}", fixed(r, prec), fixed(p, prec)),
        Format::Csv => {
            writeln!(out, "scenario,horizon,r,p")?;
            writeln!(out, "{scenario},{h},{},{}", fixed(r, prec), fixed(p, prec))
        }
        Format::Json => {
            output::write_json(out, &serde_json::json!({ "scenario": scenario, "horizon": h, "r": r, "p": p }))
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    if let Command::Serve { bind, port, no_cors } = command {
        let catalog = PresetCatalog::load()?;
        let addr = SocketAddr::new(bind, port);
        let runtime = tokio::runtime::Runtime::new()?;
        writeln!(out, "listening on http://{addr}")?;
        out.flush()?;
        runtime.block_on(service::serve(addr, catalog, ServiceConfig { cors: !no_cors }))?;
        return Ok(());
    }

    let catalog = PresetCatalog::load()?;
    let mut buf = Vec::new();
    let destination = match command {
        Command::Run { preset, horizon, output } => {
            let params = preset_params(&catalog, &preset, horizon)?;
            write_run(&mut buf, &preset, &params, &output.spec())?;
            output.out
        }
        Command::Table { id, output } => {
            let table = scenario_table(&catalog, id)?;
            output::write_table(&mut buf, &table, &output.spec())?;
            output.out
        }
        Command::Sweep { param, values, horizon, output } => {
            let parameter: SweepParameter = param.parse()?;
            let mut grid = SweepGrid::robustness(parameter, &catalog)?;
            if let Some(v) = values {
                grid.values = v;
            }
            if let Some(h) = horizon {
                grid.base.horizon = h;
            }
            let surface = oat_sweep(&catalog, &grid)?;
            output::write_sweep(&mut buf, &surface, &output.spec())?;
            for w in &surface.warnings {
                writeln!(err, "warning: {w}")?;
            }
            output.out
        }
        Command::Walkthrough { output } => {
            let w = walkthrough(&catalog)?;
            match output.format {
                Format::Json => output::write_json(&mut buf, &w)?,
                _ => write!(buf, "{w}")?,
            }
            output.out
        }
        Command::Validate { preset, trials, seed, horizon, output } => {
            let names = match preset {
                Some(name) => vec![name],
                None => catalog.names(),
            };
            let reports = names
                .iter()
                .map(|name| validate(name, &preset_params(&catalog, name, horizon)?, trials, seed))
                .collect::<Result<Vec<ValidationReport>, Error>>()?;
            output::write_validation(&mut buf, &reports, &output.spec())?;
            emit(out, output.out.as_ref(), &buf)?;
            return if reports.iter().all(|r| r.pass) { Ok(()) } else { Err(Failure::ValidationFailed) };
        }
        Command::Trajectory { preset, horizon, resolution, output } => {
            let params = preset_params(&catalog, &preset, horizon)?;
            let tr = sample_trajectory(&params, resolution)?;
            output::write_trajectory(&mut buf, &tr, &output.spec())?;
            output.out
        }
        Command::Band { preset, horizon, resolution, output } => {
            let params = preset_params(&catalog, &preset, horizon)?;
            let spec = BandSpec { resolution, ..BandSpec::default() };
            let band = uncertainty_band(&params, &spec)?;
            output::write_band(&mut buf, &band, &output.spec())?;
            output.out
        }
        Command::Serve { .. } => unreachable!(),
    };
    emit(out, destination.as_ref(), &buf)?;
    Ok(())
}

fn emit(out: &mut dyn Write, destination: Option<&PathBuf>, bytes: &[u8]) -> std::io::Result<()> {
    match destination {
        Some(path) => std::fs::write(path, bytes),
        None => {
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing the artifact to `out` and diagnostics to `err`. Returns the
/// process exit status.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::ValidationFailed) => {
            let _ = writeln!(err, "error: Monte Carlo validation failed");
            EXIT_VALIDATION_FAILED
        }
        Err(Failure::Model(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::UnknownPreset { .. } | Error::UnknownParameter { .. } => EXIT_USAGE,
                _ => EXIT_FAILURE,
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}
