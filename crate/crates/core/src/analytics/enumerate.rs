use crate::codes::{decode_distribution, EncodingLayout};
use crate::qsim::{Distribution, NoiseModel, ReadoutError};
use crate::{Error, Result};

/// Exact logical error of one encoded basis state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogicalError {
    /// Probability of a wrong decode given the shot was kept.
    pub error: f64,
    /// Probability that the flag rejected the shot (0 without a flag).
    pub discard: f64,
    /// Joint probability of keeping the shot and decoding it wrongly.
    pub wrong_and_kept: f64,
}

impl LogicalError {
    fn new(wrong_and_kept: f64, discard: f64) -> Self {
        let kept = 1.0 - discard;
        LogicalError {
            error: if kept > 0.0 { wrong_and_kept / kept } else { 0.0 },
            discard,
            wrong_and_kept,
        }
    }
}

/// Pre-readout statistics of an encoded basis state, reduced to what a uniform
/// readout channel can see: the number of ones among the data bits and the flag.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedHistogram {
    state: u8,
    n_data: usize,
    has_flag: bool,
    /// `weights[k][f]`: probability of `k` data ones with flag value `f`.
    weights: Vec<[f64; 2]>,
}

impl EncodedHistogram {
    /// Propagate `basis_state` through the noisy encoding. Only the CNOT rates of
    /// `noise` are used.
    pub fn new(layout: &EncodingLayout, noise: &NoiseModel, basis_state: u8) -> Result<Self> {
        if basis_state > 1 {
            return Err(Error::InvalidArgument(format!(
                "basis state must be 0 or 1, got {basis_state}"
            )));
        }
        let (local, phys) = layout.compacted();
        let mut local_noise = NoiseModel::new();
        for (a, b) in layout.cnot_pairs() {
            let la = phys.binary_search(&a).expect("own qubit");
            let lb = phys.binary_search(&b).expect("own qubit");
            local_noise.set_cnot(la, lb, noise.cnot(a, b)?)?;
        }
        Self::from_local(&local, &local_noise, basis_state)
    }

    /// Same as [`EncodedHistogram::new`] for a compact layout with `p` given per
    /// entry of `layout.cnot_pairs()`.
    pub fn from_rates(layout: &EncodingLayout, rates: &[f64], basis_state: u8) -> Result<Self> {
        let pairs = layout.cnot_pairs();
        if rates.len() != pairs.len() {
            return Err(Error::DimensionMismatch {
                expected: pairs.len(),
                got: rates.len(),
            });
        }
        let mut noise = NoiseModel::new();
        for (&(a, b), &p) in pairs.iter().zip(rates) {
            noise.set_cnot(a, b, p)?;
        }
        Self::new(layout, &noise, basis_state)
    }

    fn from_local(local: &EncodingLayout, noise: &NoiseModel, state: u8) -> Result<Self> {
        let n = local.width();
        let mut dist = Distribution::delta(n, usize::from(state) << local.root())?;
        dist.propagate(&local.encoding_circuit(n)?, noise)?;
        let data_mask: usize = local.data_qubits().iter().map(|q| 1 << q).sum();
        let n_data = local.n_rep() + 1;
        let mut weights = vec![[0.0; 2]; n_data + 1];
        for (x, &p) in dist.probs.iter().enumerate() {
            let k = (x & data_mask).count_ones() as usize;
            let f = local.flag().map_or(0, |fq| (x >> fq) & 1);
            weights[k][f] += p;
        }
        Ok(EncodedHistogram {
            state,
            n_data,
            has_flag: local.flag().is_some(),
            weights,
        })
    }

    pub fn basis_state(&self) -> u8 {
        self.state
    }

    /// Apply identical readout flips `(p0, p1)` on every qubit and decode.
    pub fn logical_error(&self, p0: f64, p1: f64) -> LogicalError {
        self.apply(&ReadoutKernel::new(self.n_data, self.state, p0, p1))
    }

    /// Decode with a precomputed kernel (must match this histogram's size and state).
    pub(crate) fn apply(&self, kernel: &ReadoutKernel) -> LogicalError {
        debug_assert_eq!(kernel.wrong_given_k.len(), self.n_data + 1);
        let keep = if self.has_flag { kernel.flag_keep } else { [1.0, 1.0] };
        let (mut wrong, mut discard) = (0.0, 0.0);
        for (w, pw) in self.weights.iter().zip(&kernel.wrong_given_k) {
            for f in 0..2 {
                wrong += w[f] * pw * keep[f];
                discard += w[f] * (1.0 - keep[f]);
            }
        }
        LogicalError::new(wrong, discard)
    }

    pub(crate) fn n_data(&self) -> usize {
        self.n_data
    }
}

/// Readout-and-decode probabilities that depend only on the block size, the
/// encoded state and the flip rates.
#[derive(Debug, Clone)]
pub(crate) struct ReadoutKernel {
    /// Probability of a wrong decode given `k` pre-readout data ones.
    wrong_given_k: Vec<f64>,
    /// Probability that the flag reads 0 given its pre-readout value.
    flag_keep: [f64; 2],
}

impl ReadoutKernel {
    pub(crate) fn new(n: usize, state: u8, p0: f64, p1: f64) -> Self {
        let wrong_given_k = (0..=n)
            .map(|k| {
                let observed = convolve(&binomial(k, 1.0 - p1), &binomial(n - k, p0));
                observed
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| if state == 1 { 2 * j < n } else { 2 * j > n })
                    .map(|(_, p)| p)
                    .sum()
            })
            .collect();
        ReadoutKernel {
            wrong_given_k,
            flag_keep: [1.0 - p0, p1],
        }
    }
}

fn binomial(n: usize, p: f64) -> Vec<f64> {
    let mut pmf = vec![1.0];
    for _ in 0..n {
        let mut next = vec![0.0; pmf.len() + 1];
        for (i, &v) in pmf.iter().enumerate() {
            next[i] += v * (1.0 - p);
            next[i + 1] += v * p;
        }
        pmf = next;
    }
    pmf
}

fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact logical error of `layout` with CNOT rates from `noise` and the same
/// readout pair `(p0r, p1r)` on every qubit.
pub fn enumerate_logical_error(
    layout: &EncodingLayout,
    noise: &NoiseModel,
    p0r: f64,
    p1r: f64,
    encoded_state: u8,
) -> Result<LogicalError> {
    let r = ReadoutError::new(p0r, p1r)?;
    Ok(EncodedHistogram::new(layout, noise, encoded_state)?.logical_error(r.p0, r.p1))
}

/// Exact logical error with per-qubit readout rates taken from `noise`.
pub fn exact_logical_error(layout: &EncodingLayout, noise: &NoiseModel, encoded_state: u8) -> Result<LogicalError> {
    if encoded_state > 1 {
        return Err(Error::InvalidArgument(format!(
            "basis state must be 0 or 1, got {encoded_state}"
        )));
    }
    let (local, _) = layout.compacted();
    let noise = layout.local_noise(noise)?;
    let n = local.width();
    let mut dist = Distribution::delta(n, usize::from(encoded_state) << local.root())?;
    dist.propagate(&local.encoding_circuit(n)?, &noise)?;
    dist.apply_readout(&noise.readout_vec(n)?)?;
    let d = decode_distribution(&dist, &[local.into()])?;
    Ok(LogicalError::new(d.kept[usize::from(1 - encoded_state)], d.discard))
}
