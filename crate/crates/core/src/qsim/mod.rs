//! Noisy simulation of small circuits.
//!
//! Two routes are provided. [`DensityState`] is a full density-matrix simulator
//! used for the (short) state-preparation part of a circuit. The encoding stage,
//! which only contains CNOTs and bit flips, is propagated classically as a
//! probability vector over bitstrings by [`classical`]; the depolarizing channel
//! maps diagonals to diagonals under basis permutations, so nothing is lost.

mod circuit;
pub mod classical;
mod counts;
mod density;
mod gate;
mod noise;
mod pauli;
pub mod sampling;

pub use circuit::{Circuit, FaultLocation};
pub use classical::{exact_outcome_distribution, Distribution};
pub use counts::{format_bits, parse_bits, Counts};
pub use density::{exact_propagator, DensityState};
pub use gate::{Gate, GateKind};
pub use noise::{NoiseModel, ReadoutError};
pub use pauli::{Hamiltonian, Pauli, PauliString};
pub use sampling::{sample_distribution, sample_measurement, sample_trajectories};

pub type C64 = nalgebra::Complex<f64>;
pub type CMatrix = nalgebra::DMatrix<C64>;
pub type Matrix2 = nalgebra::Matrix2<C64>;

/// Largest register handled by the dense density-matrix route.
pub const MAX_DENSE_QUBITS: usize = 10;
/// Largest register handled by the classical probability-vector route.
pub const MAX_CLASSICAL_QUBITS: usize = 24;
