use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{measure_energy, Backend, UniformNoise};
use crate::codes::EncodingLayout;
use crate::qsim::{exact_propagator, CMatrix, Circuit, Gate, Hamiltonian, C64};
use crate::rng::derive_seed;
use crate::{Error, Result};

/// Two-spin transverse-field Ising model `alpha Z1Z2 + beta (X1 + X2)`.
pub fn ising_hamiltonian(alpha: f64, beta: f64) -> Result<Hamiltonian> {
    Hamiltonian::from_strs(2, &[(alpha, "ZZ"), (beta, "XI"), (beta, "IX")])
}

/// `s_z = (Z1 + Z2) / 2`.
pub fn sz_observable() -> Hamiltonian {
    Hamiltonian::from_strs(2, &[(0.5, "ZI"), (0.5, "IZ")]).expect("valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrotterConfig {
    pub alpha: f64,
    pub beta: f64,
    pub t: f64,
    pub n: usize,
}

/// `n` Trotter steps, each RX(2βt/n) on both qubits, then CNOT(0,1) RZ(2αt/n) on 1, CNOT(0,1).
pub fn ising_trotter_circuit(cfg: &TrotterConfig) -> Result<Circuit> {
    if cfg.n == 0 {
        return Err(Error::InvalidArgument("Trotter step count must be at least 1".into()));
    }
    let dt = cfg.t / cfg.n as f64;
    let mut c = Circuit::new(2)?;
    for _ in 0..cfg.n {
        for qubit in 0..2 {
            c.push(Gate::Rx {
                qubit,
                theta: 2.0 * cfg.beta * dt,
            })?;
        }
        c.push(Gate::cnot(0, 1))?;
        c.push(Gate::Rz {
            qubit: 1,
            theta: 2.0 * cfg.alpha * dt,
        })?;
        c.push(Gate::cnot(0, 1))?;
    }
    Ok(c)
}

/// One Trotter step `exp(-i dt alpha ZZ) exp(-i dt beta (X1 + X2))`.
pub fn trotter_step_unitary(cfg: &TrotterConfig) -> Result<CMatrix> {
    let dt = cfg.t / cfg.n as f64;
    let zz = Hamiltonian::from_strs(2, &[(cfg.alpha, "ZZ")])?.to_matrix()?;
    let x = Hamiltonian::from_strs(2, &[(cfg.beta, "XI"), (cfg.beta, "IX")])?.to_matrix()?;
    Ok(exact_propagator(&zz, dt)? * exact_propagator(&x, dt)?)
}

/// Noiseless `<s_z>` after `n` Trotter steps from `|00>`, from matrices alone.
pub fn trotter_reference_sz(cfg: &TrotterConfig) -> Result<f64> {
    let step = trotter_step_unitary(cfg)?;
    let mut psi = nalgebra::DVector::<C64>::zeros(4);
    psi[0] = C64::new(1.0, 0.0);
    for _ in 0..cfg.n {
        psi = &step * psi;
    }
    // Z1 + Z2 over 2 on basis index x (bit i = qubit i)
    Ok((0..4)
        .map(|x: usize| psi[x].norm_sqr() * (1.0 - (x.count_ones() as f64)))
        .sum())
}

/// Time grid and couplings of an `s_z(t)` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingConfig {
    pub alpha: f64,
    pub beta: f64,
    pub n_steps: usize,
    pub times: Vec<f64>,
}

impl Default for IsingConfig {
    fn default() -> Self {
        IsingConfig {
            alpha: 1.0,
            beta: 1.0,
            n_steps: 5,
            times: (0..20).map(|i| 3.0 * i as f64 / 19.0).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SzTrajectory {
    pub t: Vec<f64>,
    pub sz: Vec<f64>,
    pub stderr: Vec<f64>,
    pub discard_fraction: Vec<f64>,
    /// Noiseless Trotter curve with the same step count.
    pub reference: Vec<f64>,
}

impl SzTrajectory {
    pub fn mean_abs_deviation(&self) -> f64 {
        self.sz
            .iter()
            .zip(&self.reference)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            / self.sz.len() as f64
    }
}

/// Measure `<s_z>` along the time grid; time point `i` uses seed `derive_seed(seed, i)`.
pub fn sz_trajectory(
    cfg: &IsingConfig,
    layout: Option<&EncodingLayout>,
    noise: &UniformNoise,
    backend: Backend,
    seed: u64,
) -> Result<SzTrajectory> {
    let obs = sz_observable();
    let points = cfg
        .times
        .par_iter()
        .enumerate()
        .map(|(i, &t)| {
            let tc = TrotterConfig {
                alpha: cfg.alpha,
                beta: cfg.beta,
                t,
                n: cfg.n_steps,
            };
            let e = measure_energy(
                &ising_trotter_circuit(&tc)?,
                &obs,
                layout,
                noise,
                backend,
                derive_seed(seed, i as u64),
            )?;
            Ok((e, trotter_reference_sz(&tc)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SzTrajectory {
        t: cfg.times.clone(),
        sz: points.iter().map(|(e, _)| e.energy).collect(),
        stderr: points.iter().map(|(e, _)| e.stderr).collect(),
        discard_fraction: points.iter().map(|(e, _)| e.discard_fraction).collect(),
        reference: points.iter().map(|(_, r)| *r).collect(),
    })
}
