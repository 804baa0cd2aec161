//! `qrep`: batch experiments on repetition-code readout, written as CSV.

mod commands;
mod config;
mod spec;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "qrep",
    version,
    about = "Repetition-code readout error mitigation experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by all experiment subcommands.
#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Master seed; required whenever anything is sampled.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Shots per circuit. Without it, exact (infinite-shot) values are reported.
    #[arg(long)]
    pub shots: Option<usize>,
    /// none | uniform:P_CNOT:P0R:P1R | gaussian:MEAN:SIGMA[:P0R:P1R]
    #[arg(long)]
    pub noise: Option<String>,
    /// Calibration snapshot (JSON) to take noise parameters from.
    #[arg(long)]
    pub snapshot: Option<PathBuf>,
    /// chain:N | chain-middle:N | split:N | circular:N | none | path to a layout JSON
    #[arg(long, default_value = "circular:4")]
    pub layout: String,
    /// Output CSV path (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file of flag values; explicit flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl Common {
    pub fn seed(&self) -> Result<u64> {
        self.seed.ok_or_else(|| anyhow::Error::new(CliError::MissingSeed))
    }

    pub fn noise_source(&self) -> Result<spec::NoiseSource> {
        spec::NoiseSource::resolve(self.noise.as_deref(), self.snapshot.as_deref())
    }
}

#[derive(Debug)]
pub enum CliError {
    MissingSeed,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::MissingSeed => f.write_str("this run samples random numbers; pass --seed"),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Subcommand)]
#[command(args_override_self = true)]
enum Command {
    /// Logical error of basis states for unencoded and encoded readout.
    BenchmarkEncodings(commands::bench::BenchArgs),
    /// Mean and 2-sigma band of the logical error against readout error.
    LogicalErrorCurve(commands::curves::CurveArgs),
    /// Crossover readout error against mean CNOT error, with the tangent slope.
    Crossover(commands::curves::CrossoverArgs),
    /// Single-qubit H2 energy along a dissociation profile.
    VqeH2(commands::apps::VqeArgs),
    /// Two-spin Ising s_z(t) from a Trotter circuit.
    IsingTrotter(commands::apps::IsingArgs),
    /// HeH+ reference-state energy.
    Heh(commands::apps::HehArgs),
    /// <Z> over rotations about X, Y and Z.
    BlochScan(commands::apps::BlochArgs),
    /// Calibration snapshot tools.
    #[command(subcommand)]
    Calib(commands::calib::CalibCommand),
}

/// CSV writer on `--out` or stdout.
pub fn csv_writer(out: Option<&Path>) -> Result<csv::Writer<Box<dyn Write>>> {
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(std::io::BufWriter::new(
            std::fs::File::create(p).with_context(|| format!("cannot write {}", p.display()))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    };
    Ok(csv::Writer::from_writer(sink))
}

fn error_name(e: &anyhow::Error) -> &'static str {
    for cause in e.chain() {
        if let Some(core) = cause.downcast_ref::<qrep_core::Error>() {
            return core.name();
        }
        if let Some(cli) = cause.downcast_ref::<CliError>() {
            return match cli {
                CliError::MissingSeed => "MissingSeed",
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return "Io";
        }
    }
    "InvalidConfig"
}

fn run(args: Vec<String>) -> Result<()> {
    let cli = Cli::try_parse_from(config::expand(args)?).unwrap_or_else(|e| e.exit());
    match cli.command {
        Command::BenchmarkEncodings(a) => commands::bench::run(&a),
        Command::LogicalErrorCurve(a) => commands::curves::run_curve(&a),
        Command::Crossover(a) => commands::curves::run_crossover(&a),
        Command::VqeH2(a) => commands::apps::run_vqe(&a),
        Command::IsingTrotter(a) => commands::apps::run_ising(&a),
        Command::Heh(a) => commands::apps::run_heh(&a),
        Command::BlochScan(a) => commands::apps::run_bloch(&a),
        Command::Calib(c) => commands::calib::run(&c),
    }
}

fn main() -> ExitCode {
    match run(std::env::args().collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e:#}", error_name(&e));
            ExitCode::FAILURE
        }
    }
}
