use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{CMatrix, Gate, C64, MAX_DENSE_QUBITS};
use crate::{Error, Result};

/// An ordered gate list over an indexed qubit register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

/// A point in a circuit where a deterministic X fault is inserted: on `qubit`,
/// immediately after the first `after_gates` gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaultLocation {
    pub after_gates: usize,
    pub qubit: usize,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidArgument("a circuit needs at least one qubit".into()));
        }
        Ok(Circuit {
            n_qubits,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(n_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Circuit::new(n_qubits)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    /// Append all gates of `other`, which must fit in this register.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        for g in &other.gates {
            self.push(g.clone())?;
        }
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Copy of the circuit on a register of `n_qubits`, with qubit `q` moved to `map(q)`.
    pub fn remapped(&self, n_qubits: usize, map: impl Fn(usize) -> usize) -> Result<Circuit> {
        Circuit::from_gates(n_qubits, self.gates.iter().map(|g| g.remap(&map)))
    }

    /// Qubits acted on by at least one gate.
    pub fn touched_qubits(&self) -> BTreeSet<usize> {
        self.gates.iter().flat_map(|g| g.qubits()).collect()
    }

    /// Unordered qubit pairs used by CNOTs, in first-use order.
    pub fn cnot_pairs(&self) -> Vec<(usize, usize)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for g in &self.gates {
            if let Gate::Cnot { control, target } = *g {
                let key = (control.min(target), control.max(target));
                if seen.insert(key) {
                    out.push(key);
                }
            }
        }
        out
    }

    /// A copy with an X gate inserted at `fault`.
    pub fn with_fault(&self, fault: FaultLocation) -> Result<Circuit> {
        if fault.after_gates > self.gates.len() {
            return Err(Error::InvalidArgument(format!(
                "fault position {} beyond circuit of {} gates",
                fault.after_gates,
                self.gates.len()
            )));
        }
        let mut gates = self.gates.clone();
        gates.insert(fault.after_gates, Gate::X(fault.qubit));
        Circuit::from_gates(self.n_qubits, gates)
    }

    /// Apply the circuit's unitary to a state vector in place (noiseless).
    pub fn apply_to_vector(&self, psi: &mut [C64]) -> Result<()> {
        let dim = 1usize << self.n_qubits;
        if psi.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: psi.len(),
            });
        }
        for g in &self.gates {
            match *g {
                Gate::Cnot { control, target } => {
                    let (cb, tb) = (1usize << control, 1usize << target);
                    for i in 0..dim {
                        if i & cb != 0 && i & tb == 0 {
                            psi.swap(i, i | tb);
                        }
                    }
                }
                Gate::Barrier => {}
                _ => {
                    let u = g.single_qubit_matrix().expect("single-qubit gate");
                    let bit = 1usize << g.qubits()[0];
                    for i in 0..dim {
                        if i & bit == 0 {
                            let (a, b) = (psi[i], psi[i | bit]);
                            psi[i] = u[(0, 0)] * a + u[(0, 1)] * b;
                            psi[i | bit] = u[(1, 0)] * a + u[(1, 1)] * b;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The full unitary of the circuit, column by column.
    pub fn unitary(&self) -> Result<CMatrix> {
        if self.n_qubits > MAX_DENSE_QUBITS {
            return Err(Error::TooManyQubits(self.n_qubits));
        }
        let dim = 1usize << self.n_qubits;
        let mut u = CMatrix::zeros(dim, dim);
        let mut col = vec![C64::new(0.0, 0.0); dim];
        for j in 0..dim {
            col.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
            col[j] = C64::new(1.0, 0.0);
            self.apply_to_vector(&mut col)?;
            for (i, z) in col.iter().enumerate() {
                u[(i, j)] = *z;
            }
        }
        Ok(u)
    }
}
