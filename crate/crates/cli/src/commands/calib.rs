use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Subcommand;
use qrep_core::calib::{asymmetry_report, heavy_hex_65, write_asymmetry_csv, CalibrationSnapshot, SynthConfig};

use crate::CliError;

#[derive(Subcommand, Debug)]
pub enum CalibCommand {
    /// Validate a snapshot and write it in canonical form.
    Import {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-qubit readout asymmetry (p1r / p0r) as CSV.
    Report {
        snapshot: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synthetic 65-qubit heavy-hex snapshot.
    Synth {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_out(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("cannot write {}", p.display()))?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

pub fn run(cmd: &CalibCommand) -> Result<()> {
    match cmd {
        CalibCommand::Import { input, out } => {
            let s = CalibrationSnapshot::load(input)
                .with_context(|| format!("cannot import {}", input.display()))?
                .canonicalized();
            write_out(out.as_deref(), s.to_json()?.as_bytes())
        }
        CalibCommand::Report { snapshot, out } => {
            let s =
                CalibrationSnapshot::load(snapshot).with_context(|| format!("cannot load {}", snapshot.display()))?;
            let mut buf = Vec::new();
            write_asymmetry_csv(&mut buf, &asymmetry_report(&s))?;
            write_out(out.as_deref(), &buf)
        }
        CalibCommand::Synth { seed, out } => {
            let seed = seed.ok_or(CliError::MissingSeed)?;
            let s = heavy_hex_65(SynthConfig::default(), seed)?;
            write_out(out.as_deref(), s.to_json()?.as_bytes())
        }
    }
}
