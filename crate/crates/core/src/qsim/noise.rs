use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::check_probability;
use crate::{Error, Result};

/// Readout bit-flip probabilities of one qubit: `p0` flips a prepared 0 into a
/// measured 1, `p1` flips a prepared 1 into a measured 0.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ReadoutError {
    pub p0: f64,
    pub p1: f64,
}

impl ReadoutError {
    pub fn new(p0: f64, p1: f64) -> Result<Self> {
        check_probability(|| "p0r".into(), p0)?;
        check_probability(|| "p1r".into(), p1)?;
        Ok(ReadoutError { p0, p1 })
    }

    pub fn symmetric(p: f64) -> Result<Self> {
        Self::new(p, p)
    }

    /// Probability of reading `bit` as its complement.
    #[inline]
    pub fn flip_probability(&self, bit: bool) -> f64 {
        if bit {
            self.p1
        } else {
            self.p0
        }
    }
}

/// Depolarizing CNOT error per qubit pair plus per-qubit readout flips.
///
/// Lookups never fall back to a default: a CNOT on a pair without an entry, or a
/// measurement of a qubit without readout rates, is an error.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseModel {
    cnot_error: BTreeMap<(usize, usize), f64>,
    readout: BTreeMap<usize, ReadoutError>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl NoiseModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Same CNOT error on every listed pair and the same readout on qubits `0..n_qubits`.
    pub fn uniform(
        n_qubits: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
        p_cnot: f64,
        readout: ReadoutError,
    ) -> Result<Self> {
        let mut m = NoiseModel::new();
        for (a, b) in pairs {
            m.set_cnot(a, b, p_cnot)?;
        }
        for q in 0..n_qubits {
            m.set_readout(q, readout)?;
        }
        Ok(m)
    }

    /// A model with zero error on every listed pair and qubit.
    pub fn noiseless(n_qubits: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Self::uniform(n_qubits, pairs, 0.0, ReadoutError::default()).expect("zero is a probability")
    }

    pub fn set_cnot(&mut self, a: usize, b: usize, p: f64) -> Result<&mut Self> {
        if a == b {
            return Err(Error::DuplicateQubit(a));
        }
        check_probability(|| format!("p_cnot({a},{b})"), p)?;
        self.cnot_error.insert(key(a, b), p);
        Ok(self)
    }

    pub fn set_readout(&mut self, q: usize, r: ReadoutError) -> Result<&mut Self> {
        check_probability(|| format!("p0r[{q}]"), r.p0)?;
        check_probability(|| format!("p1r[{q}]"), r.p1)?;
        self.readout.insert(q, r);
        Ok(self)
    }

    pub fn cnot(&self, a: usize, b: usize) -> Result<f64> {
        self.cnot_error
            .get(&key(a, b))
            .copied()
            .ok_or(Error::MissingEdge(a.min(b), a.max(b)))
    }

    pub fn readout(&self, q: usize) -> Result<ReadoutError> {
        self.readout.get(&q).copied().ok_or(Error::MissingReadout(q))
    }

    /// Readout rates for qubits `0..n`, in order.
    pub fn readout_vec(&self, n: usize) -> Result<Vec<ReadoutError>> {
        (0..n).map(|q| self.readout(q)).collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.cnot_error.iter().map(|(k, v)| (*k, *v))
    }

    pub fn readouts(&self) -> impl Iterator<Item = (usize, ReadoutError)> + '_ {
        self.readout.iter().map(|(k, v)| (*k, *v))
    }

    /// Copy with all readout errors set to zero, keeping CNOT errors.
    pub fn without_readout(&self) -> NoiseModel {
        NoiseModel {
            cnot_error: self.cnot_error.clone(),
            readout: self.readout.keys().map(|&q| (q, ReadoutError::default())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_pair_is_an_error() {
        let m = NoiseModel::uniform(3, [(0, 1)], 0.01, ReadoutError::default()).unwrap();
        assert_eq!(m.cnot(1, 0).unwrap(), 0.01);
        assert!(matches!(m.cnot(1, 2), Err(Error::MissingEdge(1, 2))));
        assert!(matches!(m.readout(3), Err(Error::MissingReadout(3))));
    }

    #[test]
    fn probabilities_are_validated() {
        let mut m = NoiseModel::new();
        assert!(m.set_cnot(0, 1, 1.5).is_err());
        assert!(m.set_cnot(0, 1, -0.1).is_err());
        assert!(m.set_cnot(0, 0, 0.1).is_err());
        assert!(ReadoutError::new(0.2, 1.01).is_err());
    }

    #[test]
    fn ablation_keeps_cnot_errors() {
        let m = NoiseModel::uniform(2, [(0, 1)], 0.02, ReadoutError::new(0.01, 0.03).unwrap()).unwrap();
        let a = m.without_readout();
        assert_eq!(a.cnot(0, 1).unwrap(), 0.02);
        assert_eq!(a.readout(1).unwrap(), ReadoutError::default());
    }
}
