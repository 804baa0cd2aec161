//! Probability-vector propagation through classical circuit stages.
//!
//! A vector of length `2^n` holds the probability of each bitstring (index bit
//! `i` = qubit `i`). A noisy CNOT moves weight `1 - p` to the ideally permuted
//! pair value and `p/3` to each of the other three values of the pair, which is
//! exactly the diagonal of the depolarizing channel applied after a permutation.

use super::{Circuit, DensityState, Gate, NoiseModel, ReadoutError, MAX_CLASSICAL_QUBITS, MAX_DENSE_QUBITS};
use crate::{Error, Result};

/// Exact outcome probabilities over `n_bits`-bit strings.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    pub n_bits: usize,
    pub probs: Vec<f64>,
}

impl Distribution {
    pub fn delta(n_bits: usize, index: usize) -> Result<Self> {
        if n_bits == 0 || n_bits > MAX_CLASSICAL_QUBITS {
            return Err(Error::TooManyQubits(n_bits));
        }
        let mut probs = vec![0.0; 1 << n_bits];
        *probs.get_mut(index).ok_or(Error::DimensionMismatch {
            expected: 1 << n_bits,
            got: index,
        })? = 1.0;
        Ok(Distribution { n_bits, probs })
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Probability that qubit `q` reads 1.
    pub fn marginal_one(&self, q: usize) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|(x, _)| (x >> q) & 1 == 1)
            .map(|(_, p)| p)
            .sum()
    }

    /// Apply a CNOT/X-only stage with depolarizing CNOT noise from `noise`.
    pub fn propagate(&mut self, stage: &Circuit, noise: &NoiseModel) -> Result<()> {
        if stage.n_qubits() != self.n_bits {
            return Err(Error::DimensionMismatch {
                expected: self.n_bits,
                got: stage.n_qubits(),
            });
        }
        for g in stage.gates() {
            match *g {
                Gate::Cnot { control, target } => {
                    let p = noise.cnot(control, target)?;
                    noisy_cnot(&mut self.probs, control, target, p);
                }
                Gate::X(q) => {
                    let bit = 1usize << q;
                    for x in (0..self.probs.len()).filter(|x| x & bit == 0) {
                        self.probs.swap(x, x | bit);
                    }
                }
                Gate::Barrier => {}
                _ => return Err(Error::NonClassicalGate(g.to_string())),
            }
        }
        Ok(())
    }

    /// Convolve with independent per-qubit readout flips.
    pub fn apply_readout(&mut self, readout: &[ReadoutError]) -> Result<()> {
        if readout.len() != self.n_bits {
            return Err(Error::DimensionMismatch {
                expected: self.n_bits,
                got: readout.len(),
            });
        }
        for (q, r) in readout.iter().enumerate() {
            if r.p0 == 0.0 && r.p1 == 0.0 {
                continue;
            }
            let bit = 1usize << q;
            for x in (0..self.probs.len()).filter(|x| x & bit == 0) {
                let (a, b) = (self.probs[x], self.probs[x | bit]);
                self.probs[x] = a * (1.0 - r.p0) + b * r.p1;
                self.probs[x | bit] = a * r.p0 + b * (1.0 - r.p1);
            }
        }
        Ok(())
    }
}

/// One noisy CNOT on a probability vector.
pub fn noisy_cnot(probs: &mut [f64], control: usize, target: usize, p: f64) {
    let (cb, tb) = (1usize << control, 1usize << target);
    let pair = cb | tb;
    if p == 0.0 {
        for x in (0..probs.len()).filter(|x| x & cb != 0 && x & tb == 0) {
            probs.swap(x, x | tb);
        }
        return;
    }
    let mut out = vec![0.0; probs.len()];
    let spread = p / 3.0;
    let keep = 1.0 - 4.0 * spread;
    for (x, &w) in probs.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let ideal = if x & cb != 0 { x ^ tb } else { x };
        out[ideal] += w * keep;
        let rest = x & !pair;
        for k in [0, cb, tb, pair] {
            out[rest | k] += w * spread;
        }
    }
    probs.copy_from_slice(&out);
}

/// Basis populations after running `prep` with noisy CNOTs.
///
/// Only the qubits `prep` touches are simulated as a density matrix; every other
/// qubit stays in `|0>`.
pub fn prepared_populations(prep: &Circuit, noise: &NoiseModel) -> Result<Distribution> {
    let n = prep.n_qubits();
    let touched: Vec<usize> = prep.touched_qubits().into_iter().collect();
    if touched.is_empty() {
        return Distribution::delta(n, 0);
    }
    if touched.len() > MAX_DENSE_QUBITS {
        return Err(Error::TooManyQubits(touched.len()));
    }
    if n > MAX_CLASSICAL_QUBITS {
        return Err(Error::TooManyQubits(n));
    }
    let local = |q: usize| touched.binary_search(&q).expect("touched qubit");
    let mut state = DensityState::zero(touched.len())?;
    for g in prep.gates() {
        match *g {
            Gate::Cnot { control, target } => {
                let p = noise.cnot(control, target)?;
                state.apply_noisy_cnot(local(control), local(target), p)?;
            }
            _ => state.apply_gate(&g.remap(local))?,
        }
    }
    let mut probs = vec![0.0; 1 << n];
    for (x, w) in state.diagonal().into_iter().enumerate() {
        let full = touched
            .iter()
            .enumerate()
            .filter(|(j, _)| (x >> j) & 1 == 1)
            .fold(0usize, |acc, (_, &q)| acc | (1 << q));
        probs[full] += w.max(0.0);
    }
    Ok(Distribution { n_bits: n, probs })
}

/// Outcome probabilities before readout flips: `prep` on the density-matrix
/// route, then the CNOT-only `encoding` stage propagated classically.
pub fn pre_readout_distribution(prep: &Circuit, encoding: &Circuit, noise: &NoiseModel) -> Result<Distribution> {
    if encoding.n_qubits() != prep.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: prep.n_qubits(),
            got: encoding.n_qubits(),
        });
    }
    if let Some(g) = encoding
        .gates()
        .iter()
        .find(|g| !matches!(g, Gate::Cnot { .. } | Gate::X(_) | Gate::Barrier))
    {
        return Err(Error::NonClassicalGate(g.to_string()));
    }
    let mut d = prepared_populations(prep, noise)?;
    d.propagate(encoding, noise)?;
    Ok(d)
}

/// Exact computational-basis outcome probabilities, readout flips included.
pub fn exact_outcome_distribution(prep: &Circuit, encoding: &Circuit, noise: &NoiseModel) -> Result<Distribution> {
    let mut d = pre_readout_distribution(prep, encoding, noise)?;
    d.apply_readout(&noise.readout_vec(d.n_bits)?)?;
    Ok(d)
}
