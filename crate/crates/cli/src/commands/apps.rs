use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use qrep_core::apps::{
    bloch_scan, h2_one_qubit, heh_circuit, heh_hamiltonian, load_coefficients, measure_energy, optimal_ry_theta,
    synthetic_coefficients, sz_trajectory, Backend, CoefficientRow, IsingConfig, UniformNoise,
};
use qrep_core::codes::EncodingLayout;
use qrep_core::qsim::{Circuit, DensityState, Gate};
use qrep_core::rng::derive_seed;

use crate::spec::{linspace, parse_layout, parse_list};
use crate::{csv_writer, Common};

#[derive(Args, Debug)]
pub struct VqeArgs {
    #[command(flatten)]
    pub common: Common,
    /// CSV with header distance,h0,...,h4.
    #[arg(long, conflicts_with = "synthetic")]
    pub coefficients: Option<PathBuf>,
    /// Use N seeded synthetic coefficient rows instead of a file.
    #[arg(long)]
    pub synthetic: Option<usize>,
    /// Keep CNOT noise but drop readout errors.
    #[arg(long)]
    pub no_readout_noise: bool,
}

#[derive(Args, Debug)]
pub struct IsingArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Trotter steps per circuit.
    #[arg(long, default_value_t = 5)]
    pub steps: usize,
    #[arg(long, default_value_t = 3.0)]
    pub t_max: f64,
    /// Time points, evenly spaced on [0, t_max].
    #[arg(long, default_value_t = 20)]
    pub points: usize,
}

#[derive(Args, Debug)]
pub struct HehArgs {
    #[command(flatten)]
    pub common: Common,
    /// CSV with header distance,c0,...,c8.
    #[arg(long, conflicts_with = "synthetic")]
    pub coefficients: Option<PathBuf>,
    #[arg(long)]
    pub synthetic: Option<usize>,
    /// Circuit parameters a,b,c.
    #[arg(long, default_value = "0,0,0")]
    pub params: String,
}

#[derive(Args, Debug)]
pub struct BlochArgs {
    #[command(flatten)]
    pub common: Common,
}

/// Backend, noise, layout and seed shared by the application subcommands.
struct AppSetup {
    backend: Backend,
    noise: UniformNoise,
    layout: Option<EncodingLayout>,
    seed: u64,
}

fn setup(c: &Common) -> Result<AppSetup> {
    let (backend, seed) = match c.shots {
        Some(shots) => (Backend::Sampled { shots }, c.seed()?),
        None => (Backend::Exact, c.seed.unwrap_or(0)),
    };
    Ok(AppSetup {
        backend,
        noise: c.noise_source()?.uniform()?,
        layout: parse_layout(&c.layout)?,
        seed,
    })
}

fn coefficient_rows(
    c: &Common,
    file: Option<&PathBuf>,
    synthetic: Option<usize>,
    n: usize,
) -> Result<Vec<CoefficientRow>> {
    match (file, synthetic) {
        (Some(p), _) => {
            let f = std::fs::File::open(p).with_context(|| format!("cannot open {}", p.display()))?;
            Ok(load_coefficients(f, n)?)
        }
        (None, Some(k)) => Ok(synthetic_coefficients(k, n, c.seed()?)),
        (None, None) => bail!("pass --coefficients FILE or --synthetic N"),
    }
}

pub fn run_vqe(args: &VqeArgs) -> Result<()> {
    let c = &args.common;
    let mut s = setup(c)?;
    if args.no_readout_noise {
        s.noise = s.noise.without_readout();
    }
    let rows = coefficient_rows(c, args.coefficients.as_ref(), args.synthetic, 5)?;
    let mut w = csv_writer(c.out.as_deref())?;
    w.write_record(["distance", "E_unencoded", "E_encoded", "E_exact"])?;
    for (i, row) in rows.iter().enumerate() {
        let coeffs: [f64; 5] = row.coeffs.as_slice().try_into().context("expected 5 coefficients")?;
        let h = h2_one_qubit(coeffs)?;
        let (theta, exact) = optimal_ry_theta(&h)?;
        let prep = Circuit::from_gates(1, [Gate::Ry { qubit: 0, theta }])?;
        let i = i as u64;
        let un = measure_energy(&prep, &h, None, &s.noise, s.backend, derive_seed(s.seed, 2 * i))?;
        let enc = measure_energy(
            &prep,
            &h,
            s.layout.as_ref(),
            &s.noise,
            s.backend,
            derive_seed(s.seed, 2 * i + 1),
        )?;
        w.serialize((row.distance, un.energy, enc.energy, exact))?;
    }
    w.flush()?;
    Ok(())
}

pub fn run_ising(args: &IsingArgs) -> Result<()> {
    let c = &args.common;
    let s = setup(c)?;
    let cfg = IsingConfig {
        alpha: args.alpha,
        beta: args.beta,
        n_steps: args.steps,
        times: linspace(0.0, args.t_max, args.points),
    };
    let un = sz_trajectory(&cfg, None, &s.noise, s.backend, derive_seed(s.seed, 0))?;
    let enc = sz_trajectory(&cfg, s.layout.as_ref(), &s.noise, s.backend, derive_seed(s.seed, 1))?;
    let mut w = csv_writer(c.out.as_deref())?;
    w.write_record(["t", "sz_unencoded", "sz_encoded", "sz_reference"])?;
    for i in 0..cfg.times.len() {
        w.serialize((cfg.times[i], un.sz[i], enc.sz[i], un.reference[i]))?;
    }
    w.flush()?;
    Ok(())
}

pub fn run_heh(args: &HehArgs) -> Result<()> {
    let c = &args.common;
    let s = setup(c)?;
    let [a, b, cc]: [f64; 3] = parse_list::<f64>(&args.params)?
        .try_into()
        .map_err(|_| anyhow::anyhow!("--params needs three values a,b,c"))?;
    let circuit = heh_circuit(a, b, cc)?;
    let mut state = DensityState::zero(2)?;
    state.run(&circuit, None)?;
    let rows = coefficient_rows(c, args.coefficients.as_ref(), args.synthetic, 9)?;
    let mut w = csv_writer(c.out.as_deref())?;
    w.write_record(["distance", "E", "E_ref"])?;
    for (i, row) in rows.iter().enumerate() {
        let coeffs: [f64; 9] = row.coeffs.as_slice().try_into().context("expected 9 coefficients")?;
        let h = heh_hamiltonian(coeffs)?;
        let e = measure_energy(
            &circuit,
            &h,
            s.layout.as_ref(),
            &s.noise,
            s.backend,
            derive_seed(s.seed, i as u64),
        )?;
        w.serialize((row.distance, e.energy, state.expectation(&h)?))?;
    }
    w.flush()?;
    Ok(())
}

pub fn run_bloch(args: &BlochArgs) -> Result<()> {
    let c = &args.common;
    let s = setup(c)?;
    let un = bloch_scan(None, &s.noise, s.backend, derive_seed(s.seed, 0))?;
    let enc = bloch_scan(s.layout.as_ref(), &s.noise, s.backend, derive_seed(s.seed, 1))?;
    let mut w = csv_writer(c.out.as_deref())?;
    w.write_record(["axis", "angle", "value_unencoded", "value_encoded", "exact"])?;
    for (u, e) in un.iter().zip(&enc) {
        w.serialize((u.axis.to_string(), u.angle, u.value, e.value, u.exact))?;
    }
    w.flush()?;
    Ok(())
}
