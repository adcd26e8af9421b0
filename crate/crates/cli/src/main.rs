//! `islkit` command-line front end.
//!
//! Exit codes: 0 success, 2 input error, 3 numerical or bound failure.

mod config;
mod output;

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use islkit::bounds::{self, BoundOptions, BoundReport, Theorem};
use islkit::dynamics::propagate;
use islkit::figures;
use islkit::measures::MeasureKind;

use config::{Format, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Numerical(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        Self::Input(msg.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            Self::Input(_) => 2,
            Self::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Input(m) | Self::Numerical(m) => f.write_str(m),
        }
    }
}

impl From<islkit::Error> for CliError {
    fn from(e: islkit::Error) -> Self {
        let msg = format!("{}: {e}", e.name());
        if e.is_input_error() {
            Self::Input(msg)
        } else {
            Self::Numerical(msg)
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "islkit", version, about = "Imaginarity measures, open-system qubit dynamics and imaginarity speed limits")]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output file (a directory for `figure`); stdout when absent.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Imaginarity of a state file; all three measures unless one is chosen.
    Measure {
        state: PathBuf,
        /// tr, rel or geom.
        #[arg(long, short)]
        measure: Option<MeasureKind>,
    },
    /// Propagate the configured model and emit the trajectory.
    Evolve,
    /// Evaluate speed-limit bounds on the configured trajectory.
    Bound,
    /// Speed-limit-time dataset for figure 2, 3, 4 or 5.
    Figure { id: u32 },
    /// First time the configured measure drops to epsilon.
    Teps {
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, short)]
        measure: Option<MeasureKind>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = cli.config.as_deref().map(RunConfig::load).transpose()?;
    let format = cli.format.or(config.as_ref().and_then(|c| c.format));
    let out = cli.out.clone().or(config.as_ref().and_then(|c| c.output.clone()));
    let needs_config = || config.as_ref().ok_or_else(|| CliError::input("this command needs --config"));
    match cli.command {
        Command::Measure { state, measure } => {
            let rho = config::read_state(&state)?;
            let kinds = measure.map_or(MeasureKind::ALL.to_vec(), |k| vec![k]);
            let mut values = Vec::new();
            for kind in kinds {
                values.push((kind, kind.evaluate(&rho)?));
            }
            emit(out.as_deref(), &output::measures(&values, format.unwrap_or(Format::Csv)))
        }
        Command::Evolve => {
            let config = needs_config()?;
            let rho0 = config.initial_state()?;
            let g = config.generator(&rho0)?;
            let dt = config.step()?;
            let traj = propagate(&g, &rho0, config.horizon, dt)?;
            emit(out.as_deref(), &output::trajectory(&traj, config, dt, format.unwrap_or(Format::Csv)))
        }
        Command::Bound => {
            let config = needs_config()?;
            let rho0 = config.initial_state()?;
            let g = config.generator(&rho0)?;
            let traj = propagate(&g, &rho0, config.horizon, config.step()?)?;
            let theorems = match &config.theorems {
                None => vec![Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4],
                Some(names) => names
                    .iter()
                    .map(|n| n.parse::<Theorem>().map_err(CliError::from))
                    .collect::<Result<_, _>>()?,
            };
            let reports = theorems
                .into_iter()
                .map(|t| bounds::evaluate(t, &traj, config.fidelity, BoundOptions::default()))
                .collect::<Result<Vec<BoundReport>, _>>()?;
            emit(out.as_deref(), &output::reports(&reports, format.unwrap_or(Format::Json)))?;
            let invalid: Vec<String> = reports.iter().filter(|r| !r.is_valid()).map(|r| r.theorem.to_string()).collect();
            if invalid.is_empty() {
                Ok(())
            } else {
                Err(CliError::Numerical(format!("bound exceeds the elapsed time for {}", invalid.join(", "))))
            }
        }
        Command::Figure { id } => {
            let dt = match &config {
                Some(c) => c.step()?,
                None => config::env_step()?,
            };
            let data = figures::figure(id, dt)?;
            for v in data.violations() {
                eprintln!("warning: figure {id}: {v}");
            }
            let format = format.unwrap_or(Format::Csv);
            let text = output::figure(&data, format);
            match out {
                None => emit(None, &text),
                Some(dir) => {
                    fs::create_dir_all(&dir).map_err(|e| CliError::input(format!("cannot create {}: {e}", dir.display())))?;
                    let ext = if format == Format::Csv { "csv" } else { "json" };
                    emit(Some(&dir.join(format!("fig{id}.{ext}"))), &text)
                }
            }
        }
        Command::Teps { epsilon, measure } => {
            let config = needs_config()?;
            let epsilon = epsilon.or(config.epsilon).ok_or_else(|| CliError::input("epsilon is missing"))?;
            if !(epsilon.is_finite() && epsilon > 0.0) {
                return Err(CliError::input(format!("epsilon must be positive, got {epsilon}")));
            }
            let kind = measure.or(config.measure).unwrap_or(MeasureKind::TraceDistance);
            let rho0 = config.initial_state()?;
            let g = config.generator(&rho0)?;
            let t = bounds::t_epsilon(&g, &rho0, kind, epsilon, config.horizon, config.step()?)?;
            emit(out.as_deref(), &output::threshold(kind, epsilon, t, format.unwrap_or(Format::Csv)))
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Numerical(format!("cannot write output: {e}"))),
            _ => Ok(()),
        },
        Some(p) => fs::write(p, text).map_err(|e| CliError::input(format!("cannot write {}: {e}", p.display()))),
    }
}
