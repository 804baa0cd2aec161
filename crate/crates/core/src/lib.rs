//! Repetition-code readout error mitigation toolkit.
//!
//! The crate is organised bottom-up:
//!
//! - [`qsim`]: density-matrix and classical simulation of small circuits under a
//!   depolarizing-CNOT plus bit-flip-readout noise model.
//! - [`codes`]: chain, split and circular repetition layouts, their encoding
//!   circuits, majority-vote and flag decoding, and the [4,2,2] detection code.
//! - [`analytics`]: exact logical-error enumeration, Gaussian CNOT-error bands,
//!   crossover thresholds, readout-asymmetry effects and Gaussian fitting.
//! - [`apps`]: energy and spin measurements for small model Hamiltonians,
//!   optionally read out through an encoding layout.
//! - [`calib`]: calibration snapshots and their conversion to noise models.
//!
//! # Bit ordering
//!
//! Everywhere in this crate, bit `i` of a basis index (or character `i` of a
//! bitstring, counting from the left) refers to qubit `i`. Pauli strings follow
//! the same rule: character `i` acts on qubit `i`.

pub mod analytics;
pub mod apps;
pub mod calib;
pub mod codes;
mod error;
pub mod qsim;
pub mod rng;

pub use error::{Error, Result};
