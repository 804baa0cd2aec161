//! Shot sampling.
//!
//! All samplers split the shots into fixed chunks ([`crate::rng::SHOT_CHUNK`]),
//! sample chunk `k` from substream `k` of the master seed and merge the chunk
//! histograms, so results are identical for any thread count.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Circuit, Counts, DensityState, Distribution, Gate, NoiseModel, ReadoutError};
use crate::rng::{shot_chunks, substream};
use crate::{Error, Result};

struct Cdf(Vec<f64>);

impl Cdf {
    fn new(probs: &[f64]) -> Result<Self> {
        let mut acc = 0.0;
        let mut cdf = Vec::with_capacity(probs.len());
        for &p in probs {
            if p.is_nan() || p < -1e-12 {
                return Err(Error::InvalidArgument(format!("invalid probability {p}")));
            }
            acc += p.max(0.0);
            cdf.push(acc);
        }
        if (acc - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!("probabilities sum to {acc}")));
        }
        Ok(Cdf(cdf))
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> u64 {
        let total = *self.0.last().expect("non-empty");
        let u = rng.random::<f64>() * total;
        // first index whose cumulative weight exceeds u; its own weight is positive
        let idx = self.0.partition_point(|&c| c <= u);
        if idx < self.0.len() {
            idx as u64
        } else {
            self.0.partition_point(|&c| c < total) as u64
        }
    }
}

fn flip_readout(x: u64, readout: &[ReadoutError], rng: &mut ChaCha8Rng) -> u64 {
    let mut y = x;
    for (q, r) in readout.iter().enumerate() {
        let bit = (x >> q) & 1 == 1;
        let p = r.flip_probability(bit);
        if p > 0.0 && rng.random::<f64>() < p {
            y ^= 1 << q;
        }
    }
    y
}

fn run_chunks<F>(n_bits: usize, shots: usize, seed: u64, shot: F) -> Result<Counts>
where
    F: Fn(&mut ChaCha8Rng) -> u64 + Sync,
{
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be positive".into()));
    }
    let parts: Vec<BTreeMap<u64, u64>> = shot_chunks(shots)
        .into_par_iter()
        .map(|(stream, len)| {
            let mut rng = substream(seed, stream);
            let mut hist = BTreeMap::new();
            for _ in 0..len {
                *hist.entry(shot(&mut rng)).or_insert(0u64) += 1;
            }
            hist
        })
        .collect();
    let mut counts = Counts::new(n_bits)?;
    for hist in parts {
        for (k, v) in hist {
            counts.add(k, v)?;
        }
    }
    Ok(counts)
}

/// Sample ideal outcomes from `dist` and flip each bit with its readout rate.
pub fn sample_distribution(dist: &Distribution, readout: &[ReadoutError], shots: usize, seed: u64) -> Result<Counts> {
    if readout.len() != dist.n_bits {
        return Err(Error::DimensionMismatch {
            expected: dist.n_bits,
            got: readout.len(),
        });
    }
    let cdf = Cdf::new(&dist.probs)?;
    run_chunks(dist.n_bits, shots, seed, |rng| {
        let x = cdf.sample(rng);
        flip_readout(x, readout, rng)
    })
}

/// Measure every qubit of `state` in the computational basis with readout noise.
pub fn sample_measurement(state: &DensityState, noise: &NoiseModel, shots: usize, seed: u64) -> Result<Counts> {
    let dist = Distribution {
        n_bits: state.n_qubits(),
        probs: state.diagonal(),
    };
    sample_distribution(&dist, &noise.readout_vec(state.n_qubits())?, shots, seed)
}

/// Monte Carlo trajectories through a CNOT/X-only stage.
///
/// Each shot draws a starting bitstring from `initial`, applies every gate of
/// `stage` (a CNOT fails with its pair's probability, replacing the pair by one
/// of the three non-ideal values uniformly), then applies readout flips.
pub fn sample_trajectories(
    initial: &Distribution,
    stage: &Circuit,
    noise: &NoiseModel,
    shots: usize,
    seed: u64,
) -> Result<Counts> {
    if stage.n_qubits() != initial.n_bits {
        return Err(Error::DimensionMismatch {
            expected: initial.n_bits,
            got: stage.n_qubits(),
        });
    }
    enum Op {
        Cnot(u64, u64, f64),
        Flip(u64),
    }
    let mut ops = Vec::new();
    for g in stage.gates() {
        match *g {
            Gate::Cnot { control, target } => {
                ops.push(Op::Cnot(1 << control, 1 << target, noise.cnot(control, target)?))
            }
            Gate::X(q) => ops.push(Op::Flip(1 << q)),
            Gate::Barrier => {}
            _ => return Err(Error::NonClassicalGate(g.to_string())),
        }
    }
    let readout = noise.readout_vec(initial.n_bits)?;
    let cdf = Cdf::new(&initial.probs)?;
    run_chunks(initial.n_bits, shots, seed, |rng| {
        let mut x = cdf.sample(rng);
        for op in &ops {
            match *op {
                Op::Flip(b) => x ^= b,
                Op::Cnot(cb, tb, p) => {
                    let ideal = if x & cb != 0 { x ^ tb } else { x };
                    if p > 0.0 && rng.random::<f64>() < p {
                        let rest = x & !(cb | tb);
                        let others: Vec<u64> = [0, cb, tb, cb | tb]
                            .into_iter()
                            .map(|k| rest | k)
                            .filter(|&y| y != ideal)
                            .collect();
                        x = others[rng.random_range(0..3)];
                    } else {
                        x = ideal;
                    }
                }
            }
        }
        flip_readout(x, &readout, rng)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn readout(n: usize, p0: f64, p1: f64) -> NoiseModel {
        NoiseModel::uniform(n, [], 0.0, ReadoutError::new(p0, p1).unwrap()).unwrap()
    }

    #[test]
    fn noiseless_zero() {
        let s = DensityState::zero(1).unwrap();
        let c = sample_measurement(&s, &readout(1, 0.0, 0.0), 1000, 1).unwrap();
        assert_eq!(c.get_str("0"), 1000);
    }

    #[test]
    fn one_with_readout_flip_is_binomial() {
        let s = DensityState::basis(1, 1).unwrap();
        let shots = 1_000_000;
        let c = sample_measurement(&s, &readout(1, 0.0, 0.05), shots, 42).unwrap();
        let f = c.frequency(0);
        let sigma = (0.05f64 * 0.95 / shots as f64).sqrt();
        assert!((f - 0.05).abs() < 4.0 * sigma, "f = {f}");
    }

    #[test]
    fn plus_state_is_balanced() {
        let mut s = DensityState::zero(1).unwrap();
        s.apply_gate(&Gate::H(0)).unwrap();
        let shots = 400_000;
        let c = sample_measurement(&s, &readout(1, 0.1, 0.1), shots, 3).unwrap();
        let sigma = (0.25 / shots as f64).sqrt();
        assert!((c.frequency(1) - 0.5).abs() < 4.0 * sigma);
    }

    #[test]
    fn zero_shots_rejected() {
        let s = DensityState::zero(1).unwrap();
        assert!(sample_measurement(&s, &readout(1, 0.0, 0.0), 0, 1).is_err());
    }

    #[test]
    fn seeds_are_deterministic() {
        let mut s = DensityState::zero(2).unwrap();
        s.apply_gate(&Gate::H(0)).unwrap();
        s.apply_gate(&Gate::H(1)).unwrap();
        let n = readout(2, 0.02, 0.04);
        let a = sample_measurement(&s, &n, 50_000, 11).unwrap();
        let b = sample_measurement(&s, &n, 50_000, 11).unwrap();
        let c = sample_measurement(&s, &n, 50_000, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn zero_probability_outcomes_never_sampled() {
        let dist = Distribution {
            n_bits: 2,
            probs: vec![0.0, 0.5, 0.0, 0.5],
        };
        let c = sample_distribution(&dist, &[ReadoutError::default(); 2], 100_000, 9).unwrap();
        assert_eq!(c.get(0) + c.get(2), 0);
    }

    #[test]
    fn trajectories_match_single_cnot_distribution() {
        let initial = Distribution::delta(2, 1).unwrap();
        let stage = Circuit::from_gates(2, [Gate::cnot(0, 1)]).unwrap();
        let p = 0.3;
        let noise = NoiseModel::uniform(2, [(0, 1)], p, ReadoutError::default()).unwrap();
        let shots = 600_000;
        let c = sample_trajectories(&initial, &stage, &noise, shots, 5).unwrap();
        for (x, want) in [(3u64, 1.0 - p), (0, p / 3.0), (1, p / 3.0), (2, p / 3.0)] {
            let sigma = (want * (1.0 - want) / shots as f64).sqrt();
            assert!((c.frequency(x) - want).abs() < 4.0 * sigma, "x={x}");
        }
    }
}
