use super::{decode_counts, EncodingLayout};
use crate::qsim::{sample_trajectories, Counts, Distribution, FaultLocation, NoiseModel};
use crate::{Error, Result};

/// Outcome of a basis-state benchmark of one layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentOutcome {
    pub shots: u64,
    pub kept: u64,
    pub wrong: u64,
    /// Wrong decodes over kept shots.
    pub error_rate: f64,
    pub discard_fraction: f64,
}

impl ExperimentOutcome {
    /// Binomial standard error of `error_rate`.
    pub fn std_error(&self) -> f64 {
        if self.kept == 0 {
            return 0.0;
        }
        (self.error_rate * (1.0 - self.error_rate) / self.kept as f64).sqrt()
    }
}

impl EncodingLayout {
    /// The layout relabeled onto `0..width` (in increasing physical order), with
    /// the physical index of each new label.
    pub fn compacted(&self) -> (EncodingLayout, Vec<usize>) {
        let mut phys = self.qubits();
        phys.sort_unstable();
        let local = self
            .relabeled(|q| phys.binary_search(&q).expect("own qubit"))
            .expect("relabeling is a bijection");
        (local, phys)
    }

    /// Noise restricted to this layout, relabeled like [`EncodingLayout::compacted`].
    pub fn local_noise(&self, noise: &NoiseModel) -> Result<NoiseModel> {
        let (_, phys) = self.compacted();
        let local = |q: usize| phys.binary_search(&q).expect("own qubit");
        let mut out = NoiseModel::new();
        for (a, b) in self.cnot_pairs() {
            out.set_cnot(local(a), local(b), noise.cnot(a, b)?)?;
        }
        for &q in &phys {
            out.set_readout(local(q), noise.readout(q)?)?;
        }
        Ok(out)
    }
}

/// Shots of `layout` encoding the basis state `basis_state` on its root.
///
/// Counts are over the compacted layout (see [`EncodingLayout::compacted`]).
/// `fault` uses physical qubit indices and inserts a deterministic X.
pub fn encoded_shots(
    layout: &EncodingLayout,
    basis_state: u8,
    noise: &NoiseModel,
    shots: usize,
    seed: u64,
    fault: Option<FaultLocation>,
) -> Result<Counts> {
    if basis_state > 1 {
        return Err(Error::InvalidArgument(format!(
            "basis state must be 0 or 1, got {basis_state}"
        )));
    }
    let (local, phys) = layout.compacted();
    let noise = layout.local_noise(noise)?;
    let mut stage = local.encoding_circuit(local.width())?;
    if let Some(f) = fault {
        let qubit = phys
            .binary_search(&f.qubit)
            .map_err(|_| Error::InvalidArgument(format!("fault qubit {} is not in the layout", f.qubit)))?;
        stage = stage.with_fault(FaultLocation { qubit, ..f })?;
    }
    let initial = Distribution::delta(local.width(), usize::from(basis_state) << local.root())?;
    sample_trajectories(&initial, &stage, &noise, shots, seed)
}

/// Monte Carlo logical error of `layout` on the basis state `basis_state`.
pub fn logical_error_experiment(
    layout: &EncodingLayout,
    basis_state: u8,
    noise: &NoiseModel,
    shots: usize,
    seed: u64,
) -> Result<ExperimentOutcome> {
    let counts = encoded_shots(layout, basis_state, noise, shots, seed, None)?;
    let (local, _) = layout.compacted();
    let d = decode_counts(&counts, &[local.into()])?;
    let kept = d.kept();
    let wrong = d.logical.get(u64::from(1 - basis_state));
    Ok(ExperimentOutcome {
        shots: d.total(),
        kept,
        wrong,
        error_rate: if kept == 0 { 0.0 } else { wrong as f64 / kept as f64 },
        discard_fraction: d.discard_fraction(),
    })
}
