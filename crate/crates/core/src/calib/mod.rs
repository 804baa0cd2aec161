//! Device calibration snapshots and the noise models derived from them.

mod embed;
mod model;
mod snapshot;
mod synth;

pub use embed::{find_embeddings, DeviceGraph};
pub use model::{
    asymmetry_report, distribution_from_snapshot, noise_for_qubits, noise_from_snapshot, scatter_points,
    uniform_from_snapshot, write_asymmetry_csv, AsymmetryRow, ScatterPoint,
};
pub use snapshot::{CalibrationSnapshot, EdgeCalibration, QubitCalibration};
pub use synth::{heavy_hex_65, synthetic_snapshot, SynthConfig};
