use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{CMatrix, C64, MAX_DENSE_QUBITS};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A tensor product of single-qubit Paulis; position `i` acts on qubit `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(ops: Vec<Pauli>) -> Self {
        PauliString(ops)
    }

    pub fn identity(n: usize) -> Self {
        PauliString(vec![Pauli::I; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// Qubits carrying a non-identity factor.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != Pauli::I)
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether every qubit carries equal factors or an identity on one side.
    pub fn qubitwise_commutes(&self, other: &PauliString) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| a == Pauli::I || b == Pauli::I || a == b)
    }

    /// Action on a computational basis state: returns `(image index, phase)`.
    fn apply_to_basis(&self, x: usize) -> (usize, C64) {
        let mut y = x;
        let mut phase = C64::new(1.0, 0.0);
        for (q, &p) in self.0.iter().enumerate() {
            let bit = (x >> q) & 1 == 1;
            match p {
                Pauli::I => {}
                Pauli::X => y ^= 1 << q,
                Pauli::Y => {
                    y ^= 1 << q;
                    // Y|0> = i|1>, Y|1> = -i|0>
                    phase *= if bit { C64::new(0.0, -1.0) } else { C64::new(0.0, 1.0) };
                }
                Pauli::Z => {
                    if bit {
                        phase = -phase;
                    }
                }
            }
        }
        (y, phase)
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(Pauli::from_char)
            .collect::<Option<Vec<_>>>()
            .filter(|v| !v.is_empty())
            .map(PauliString)
            .ok_or_else(|| Error::InvalidPauli(s.into()))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A real linear combination of Pauli strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hamiltonian {
    n_qubits: usize,
    terms: Vec<(f64, PauliString)>,
}

impl Hamiltonian {
    pub fn new(n_qubits: usize, terms: Vec<(f64, PauliString)>) -> Result<Self> {
        for (c, p) in &terms {
            if !c.is_finite() {
                return Err(Error::InvalidArgument(format!("coefficient {c} of {p} is not finite")));
            }
            if p.len() != n_qubits {
                return Err(Error::DimensionMismatch {
                    expected: n_qubits,
                    got: p.len(),
                });
            }
        }
        Ok(Hamiltonian { n_qubits, terms })
    }

    /// Build from `(coefficient, "XZ..")` pairs.
    pub fn from_strs(n_qubits: usize, terms: &[(f64, &str)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|&(c, s)| Ok((c, s.parse()?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_qubits, parsed)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    /// Coefficient of the given string, summed over repeated entries.
    pub fn coefficient(&self, p: &PauliString) -> f64 {
        self.terms.iter().filter(|(_, q)| q == p).map(|(c, _)| c).sum()
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.n_qubits > MAX_DENSE_QUBITS {
            return Err(Error::TooManyQubits(self.n_qubits));
        }
        let dim = 1usize << self.n_qubits;
        let mut m = CMatrix::zeros(dim, dim);
        for (c, p) in &self.terms {
            for x in 0..dim {
                let (y, phase) = p.apply_to_basis(x);
                m[(y, x)] += phase * *c;
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p: PauliString = "XIZY".parse().unwrap();
        assert_eq!(p.to_string(), "XIZY");
        assert_eq!(p.support(), vec![0, 2, 3]);
        assert!("XQ".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
    }

    #[test]
    fn y_matrix() {
        let h = Hamiltonian::from_strs(1, &[(1.0, "Y")]).unwrap();
        let m = h.to_matrix().unwrap();
        assert_eq!(m[(0, 1)], C64::new(0.0, -1.0));
        assert_eq!(m[(1, 0)], C64::new(0.0, 1.0));
    }

    #[test]
    fn qubit_zero_is_first_character() {
        // Z on qubit 0 only: basis index 1 (qubit 0 set) gets -1.
        let m = Hamiltonian::from_strs(2, &[(1.0, "ZI")]).unwrap().to_matrix().unwrap();
        assert_eq!(m[(1, 1)].re, -1.0);
        assert_eq!(m[(2, 2)].re, 1.0);
    }

    #[test]
    fn qubitwise_commutation() {
        let a: PauliString = "XI".parse().unwrap();
        let b: PauliString = "XZ".parse().unwrap();
        let c: PauliString = "ZZ".parse().unwrap();
        assert!(a.qubitwise_commutes(&b));
        assert!(!a.qubitwise_commutes(&c));
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(Hamiltonian::from_strs(2, &[(1.0, "Z")]).is_err());
        assert!(Hamiltonian::from_strs(1, &[(f64::NAN, "Z")]).is_err());
    }
}
