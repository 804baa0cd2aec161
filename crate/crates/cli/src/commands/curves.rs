use anyhow::{bail, Result};
use clap::Args;
use qrep_core::analytics::{crossover_curve, sample_band, BandConfig, SigmaRule};
use qrep_core::calib::scatter_points;
use qrep_core::codes::EncodingLayout;

use crate::spec::{linspace, parse_layout, parse_sigma_rule, NoiseSource};
use crate::{csv_writer, Common};

#[derive(Args, Debug)]
pub struct CurveArgs {
    #[command(flatten)]
    pub common: Common,
    /// CNOT error draws per grid point.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 50)]
    pub grid_points: usize,
    #[arg(long, default_value_t = 0.1)]
    pub p_r_max: f64,
    /// Drop snapshot CNOT errors above this value before the Gaussian fit.
    #[arg(long)]
    pub outlier_cutoff: Option<f64>,
    /// Also write per-embedding points from the snapshot to this CSV.
    #[arg(long)]
    pub scatter: Option<std::path::PathBuf>,
    /// Embeddings used for --scatter.
    #[arg(long, default_value_t = 100)]
    pub max_layouts: usize,
}

#[derive(Args, Debug)]
pub struct CrossoverArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 50)]
    pub grid_points: usize,
    /// Largest mean CNOT error; the grid is evenly spaced up to it, excluding 0.
    #[arg(long, default_value_t = 0.03)]
    pub p_cnot_max: f64,
    /// zero | fixed:S | proportional:R
    #[arg(long, default_value = "proportional:0.4738")]
    pub sigma_rule: String,
}

fn layout(c: &Common) -> Result<EncodingLayout> {
    match parse_layout(&c.layout)? {
        Some(l) => Ok(l),
        None => bail!("this subcommand needs an encoded layout"),
    }
}

/// The seed, which is mandatory only when draws are random.
fn band_config(c: &Common, samples: usize, random: bool) -> Result<BandConfig> {
    let seed = if random { c.seed()? } else { c.seed.unwrap_or(0) };
    Ok(BandConfig {
        n_samples: samples,
        seed,
    })
}

pub fn run_curve(args: &CurveArgs) -> Result<()> {
    let c = &args.common;
    let layout = layout(c)?;
    let source = c.noise_source()?;
    let dist = source.distribution(args.outlier_cutoff)?;
    let config = band_config(c, args.samples, dist.sigma > 0.0)?;
    let grid = linspace(0.0, args.p_r_max, args.grid_points);
    let band = sample_band(&layout, dist, &grid, config)?;
    let mut w = csv_writer(c.out.as_deref())?;
    w.write_record(["p_r", "mean", "lo", "hi"])?;
    for i in 0..band.p_r.len() {
        w.serialize((band.p_r[i], band.mean[i], band.lo[i], band.hi[i]))?;
    }
    w.flush()?;

    if let Some(path) = &args.scatter {
        let NoiseSource::Snapshot(s) = &source else {
            bail!("--scatter needs --snapshot");
        };
        let points = scatter_points(s, &layout, args.max_layouts)?;
        let mut w = csv_writer(Some(path))?;
        w.write_record([
            "root",
            "mean_readout",
            "logical_error_0",
            "logical_error_1",
            "discard_0",
            "discard_1",
        ])?;
        for p in points {
            w.serialize((
                p.root,
                p.mean_readout,
                p.logical_error_0,
                p.logical_error_1,
                p.discard_0,
                p.discard_1,
            ))?;
        }
        w.flush()?;
    }
    Ok(())
}

pub fn run_crossover(args: &CrossoverArgs) -> Result<()> {
    let c = &args.common;
    if c.noise.is_some() || c.snapshot.is_some() {
        bail!("crossover sweeps the mean CNOT error itself; use --sigma-rule instead of --noise/--snapshot");
    }
    let layout = layout(c)?;
    let rule = parse_sigma_rule(&args.sigma_rule)?;
    let config = band_config(
        c,
        args.samples,
        rule != SigmaRule::Zero && rule != SigmaRule::Fixed(0.0),
    )?;
    let n = args.grid_points;
    let grid = linspace(args.p_cnot_max / n as f64, args.p_cnot_max, n);
    let curve = crossover_curve(&layout, &grid, rule, config)?;
    let mut w = csv_writer(c.out.as_deref())?;
    w.write_record(["p_cnot", "p_r_star"])?;
    for (a, b) in curve.p_cnot.iter().zip(&curve.p_r_star) {
        w.serialize((a, b))?;
    }
    w.flush()?;
    drop(w);
    let line = format!("tangent_slope={}", curve.tangent_slope);
    if c.out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    Ok(())
}
