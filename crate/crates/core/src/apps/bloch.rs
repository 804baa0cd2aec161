use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{measure_energy, Backend, UniformNoise};
use crate::codes::EncodingLayout;
use crate::qsim::{Circuit, Gate, Hamiltonian};
use crate::rng::derive_seed;
use crate::Result;

/// Rotation angles per axis, equally spaced on `[0, π]`.
pub const BLOCH_ANGLES: usize = 21;
/// Shots per circuit in the reference scan.
pub const BLOCH_SHOTS: usize = 57344;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlochAxis {
    X,
    Y,
    Z,
}

impl fmt::Display for BlochAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlochAxis::X => "X",
            BlochAxis::Y => "Y",
            BlochAxis::Z => "Z",
        })
    }
}

impl BlochAxis {
    /// Noiseless `<Z>` after the scan circuit.
    pub fn exact(self, angle: f64) -> f64 {
        match self {
            BlochAxis::X | BlochAxis::Y => angle.cos(),
            BlochAxis::Z => 0.0,
        }
    }
}

/// Rotation about `axis` from `|0>`; the Z sweep starts with RX(π/2) to reach the equator.
pub fn bloch_circuit(axis: BlochAxis, angle: f64) -> Result<Circuit> {
    let gates = match axis {
        BlochAxis::X => vec![Gate::Rx { qubit: 0, theta: angle }],
        BlochAxis::Y => vec![Gate::Ry { qubit: 0, theta: angle }],
        BlochAxis::Z => vec![
            Gate::Rx {
                qubit: 0,
                theta: FRAC_PI_2,
            },
            Gate::Rz { qubit: 0, theta: angle },
        ],
    };
    Circuit::from_gates(1, gates)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochPoint {
    pub axis: BlochAxis,
    pub angle: f64,
    pub value: f64,
    pub stderr: f64,
    pub exact: f64,
}

/// `<Z>` for all 63 scan circuits; circuit `i` (X sweep first) uses `derive_seed(seed, i)`.
pub fn bloch_scan(
    layout: Option<&EncodingLayout>,
    noise: &UniformNoise,
    backend: Backend,
    seed: u64,
) -> Result<Vec<BlochPoint>> {
    let z = Hamiltonian::from_strs(1, &[(1.0, "Z")])?;
    let jobs: Vec<(BlochAxis, f64)> = [BlochAxis::X, BlochAxis::Y, BlochAxis::Z]
        .into_iter()
        .flat_map(|a| (0..BLOCH_ANGLES).map(move |k| (a, PI * k as f64 / (BLOCH_ANGLES - 1) as f64)))
        .collect();
    jobs.par_iter()
        .enumerate()
        .map(|(i, &(axis, angle))| {
            let e = measure_energy(
                &bloch_circuit(axis, angle)?,
                &z,
                layout,
                noise,
                backend,
                derive_seed(seed, i as u64),
            )?;
            Ok(BlochPoint {
                axis,
                angle,
                value: e.energy,
                stderr: e.stderr,
                exact: axis.exact(angle),
            })
        })
        .collect()
}
