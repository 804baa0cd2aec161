//! Small measurement experiments read out with or without a repetition layout.
//!
//! Every experiment measures one or more *root* qubits. With a layout, each root
//! becomes the root of its own copy of the layout and the basis-change rotations
//! are applied to the root before the encoding fragment.

mod bloch;
mod coefficients;
mod energy;
mod hamiltonians;
mod ising;

pub use bloch::{bloch_circuit, bloch_scan, BlochAxis, BlochPoint, BLOCH_ANGLES, BLOCH_SHOTS};
pub use coefficients::{load_coefficients, synthetic_coefficients, write_coefficients, CoefficientRow};
pub use energy::{group_terms, measure_energy, Backend, EnergyEstimate, MeasurementGroup, RegisterPlan, UniformNoise};
pub use hamiltonians::{h2_one_qubit, h2_two_qubit, heh_circuit, heh_hamiltonian, optimal_ry_theta};
pub use ising::{
    ising_hamiltonian, ising_trotter_circuit, sz_observable, sz_trajectory, trotter_reference_sz, trotter_step_unitary,
    IsingConfig, SzTrajectory, TrotterConfig,
};
