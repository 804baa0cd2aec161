use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::qsim::{Circuit, FaultLocation, Gate};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LayoutKind {
    Chain,
    Split,
    Circular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootPosition {
    Edge,
    Middle,
}

/// Physical qubit for each role of a layout.
///
/// A chain with its root at the edge keeps its whole ladder in `branch_a`. Every
/// other layout has two branches of `n_rep / 2` qubits each, listed outward
/// from the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QubitAssignment {
    pub root: usize,
    pub branch_a: Vec<usize>,
    #[serde(default)]
    pub branch_b: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<usize>,
}

/// A repetition block: one root, `n_rep` auxiliary qubits and an optional flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLayout")]
pub struct EncodingLayout {
    kind: LayoutKind,
    n_rep: usize,
    root_position: RootPosition,
    qubit_assignment: QubitAssignment,
}

#[derive(Deserialize)]
struct RawLayout {
    kind: LayoutKind,
    n_rep: usize,
    root_position: Option<RootPosition>,
    qubit_assignment: QubitAssignment,
}

impl TryFrom<RawLayout> for EncodingLayout {
    type Error = Error;

    fn try_from(raw: RawLayout) -> Result<Self> {
        let position = raw.root_position.unwrap_or(match raw.kind {
            LayoutKind::Chain => RootPosition::Edge,
            _ => RootPosition::Middle,
        });
        EncodingLayout::new(raw.kind, raw.n_rep, position, raw.qubit_assignment)
    }
}

impl EncodingLayout {
    pub fn new(
        kind: LayoutKind,
        n_rep: usize,
        root_position: RootPosition,
        qubit_assignment: QubitAssignment,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidLayout(msg));
        if n_rep == 0 || !n_rep.is_multiple_of(2) {
            return bad(format!("n_rep must be even and positive, got {n_rep}"));
        }
        if kind != LayoutKind::Chain && root_position != RootPosition::Middle {
            return bad(format!("{kind:?} layouts have their root in the middle"));
        }
        let a = &qubit_assignment;
        let (want_a, want_b) = match root_position {
            RootPosition::Edge => (n_rep, 0),
            RootPosition::Middle => (n_rep / 2, n_rep / 2),
        };
        if a.branch_a.len() != want_a || a.branch_b.len() != want_b {
            return bad(format!(
                "expected branches of {want_a} and {want_b} qubits, got {} and {}",
                a.branch_a.len(),
                a.branch_b.len()
            ));
        }
        match (kind, a.flag) {
            (LayoutKind::Circular, None) => return bad("circular layout needs a flag qubit".into()),
            (LayoutKind::Chain | LayoutKind::Split, Some(_)) => {
                return bad(format!("{kind:?} layout cannot have a flag qubit"))
            }
            _ => {}
        }
        let all: Vec<usize> = std::iter::once(a.root)
            .chain(a.branch_a.iter().copied())
            .chain(a.branch_b.iter().copied())
            .chain(a.flag)
            .collect();
        let distinct: BTreeSet<usize> = all.iter().copied().collect();
        if distinct.len() != all.len() {
            return bad("qubit indices must be distinct".into());
        }
        Ok(EncodingLayout {
            kind,
            n_rep,
            root_position,
            qubit_assignment,
        })
    }

    fn compact(kind: LayoutKind, n_rep: usize, position: RootPosition) -> Result<Self> {
        let (la, lb) = match position {
            RootPosition::Edge => (n_rep, 0),
            RootPosition::Middle => (n_rep / 2, n_rep / 2),
        };
        let assignment = QubitAssignment {
            root: 0,
            branch_a: (1..=la).collect(),
            branch_b: (la + 1..=la + lb).collect(),
            flag: (kind == LayoutKind::Circular).then_some(n_rep + 1),
        };
        Self::new(kind, n_rep, position, assignment)
    }

    /// Chain with the root at one end, on qubits `0..=n_rep` (root = 0).
    pub fn chain(n_rep: usize) -> Result<Self> {
        Self::compact(LayoutKind::Chain, n_rep, RootPosition::Edge)
    }

    /// Chain with the root in the middle: one ladder per side, run one after the other.
    pub fn chain_middle(n_rep: usize) -> Result<Self> {
        Self::compact(LayoutKind::Chain, n_rep, RootPosition::Middle)
    }

    pub fn split(n_rep: usize) -> Result<Self> {
        Self::compact(LayoutKind::Split, n_rep, RootPosition::Middle)
    }

    /// Split layout closed onto a flag qubit (index `n_rep + 1`).
    pub fn circular(n_rep: usize) -> Result<Self> {
        Self::compact(LayoutKind::Circular, n_rep, RootPosition::Middle)
    }

    pub fn kind(&self) -> LayoutKind {
        self.kind
    }

    pub fn n_rep(&self) -> usize {
        self.n_rep
    }

    pub fn root_position(&self) -> RootPosition {
        self.root_position
    }

    pub fn assignment(&self) -> &QubitAssignment {
        &self.qubit_assignment
    }

    pub fn root(&self) -> usize {
        self.qubit_assignment.root
    }

    pub fn flag(&self) -> Option<usize> {
        self.qubit_assignment.flag
    }

    /// Root followed by both branches: the bits that take part in the majority vote.
    pub fn data_qubits(&self) -> Vec<usize> {
        let a = &self.qubit_assignment;
        std::iter::once(a.root)
            .chain(a.branch_a.iter().copied())
            .chain(a.branch_b.iter().copied())
            .collect()
    }

    pub fn branch_qubits(&self) -> Vec<usize> {
        let a = &self.qubit_assignment;
        a.branch_a.iter().chain(&a.branch_b).copied().collect()
    }

    /// Every qubit of the block, flag last.
    pub fn qubits(&self) -> Vec<usize> {
        let mut q = self.data_qubits();
        q.extend(self.flag());
        q
    }

    pub fn width(&self) -> usize {
        self.n_rep + 1 + usize::from(self.flag().is_some())
    }

    pub fn max_qubit(&self) -> usize {
        self.qubits().into_iter().max().expect("non-empty")
    }

    /// The same layout with every index moved by `offset`.
    pub fn shifted(&self, offset: usize) -> EncodingLayout {
        let a = &self.qubit_assignment;
        EncodingLayout {
            qubit_assignment: QubitAssignment {
                root: a.root + offset,
                branch_a: a.branch_a.iter().map(|q| q + offset).collect(),
                branch_b: a.branch_b.iter().map(|q| q + offset).collect(),
                flag: a.flag.map(|q| q + offset),
            },
            ..self.clone()
        }
    }

    /// The same layout with every index `q` replaced by `map(q)`.
    pub fn relabeled(&self, map: impl Fn(usize) -> usize) -> Result<EncodingLayout> {
        let a = &self.qubit_assignment;
        Self::new(
            self.kind,
            self.n_rep,
            self.root_position,
            QubitAssignment {
                root: map(a.root),
                branch_a: a.branch_a.iter().map(|&q| map(q)).collect(),
                branch_b: a.branch_b.iter().map(|&q| map(q)).collect(),
                flag: a.flag.map(&map),
            },
        )
    }

    /// Name in the `n_rep + n_phys (+ n_flag)` convention, e.g. `4+1 split`.
    pub fn label(&self) -> String {
        match (self.kind, self.root_position) {
            (LayoutKind::Chain, RootPosition::Edge) => format!("{}+1 chain", self.n_rep),
            (LayoutKind::Chain, RootPosition::Middle) => format!("{}+1 chain-middle", self.n_rep),
            (LayoutKind::Split, _) => format!("{}+1 split", self.n_rep),
            (LayoutKind::Circular, _) => format!("{}+1+1 circular", self.n_rep),
        }
    }

    fn ladder_gates(&self) -> Vec<Gate> {
        let a = &self.qubit_assignment;
        let ladder = |branch: &[usize]| -> Vec<Gate> {
            std::iter::once(a.root)
                .chain(branch.iter().copied())
                .zip(branch.iter().copied())
                .map(|(c, t)| Gate::cnot(c, t))
                .collect()
        };
        match (self.kind, self.root_position) {
            (LayoutKind::Chain, _) => {
                let mut g = ladder(&a.branch_a);
                g.extend(ladder(&a.branch_b));
                g
            }
            _ => {
                // layer by layer: the two branches advance together
                let (la, lb) = (ladder(&a.branch_a), ladder(&a.branch_b));
                la.into_iter().zip(lb).flat_map(|(x, y)| [x, y]).collect()
            }
        }
    }

    /// The CNOT-only encoding fragment on a register of `n_qubits`.
    pub fn encoding_circuit(&self, n_qubits: usize) -> Result<Circuit> {
        let mut gates = self.ladder_gates();
        if let Some(flag) = self.flag() {
            let a = &self.qubit_assignment;
            gates.push(Gate::cnot(*a.branch_a.last().expect("branch"), flag));
            gates.push(Gate::cnot(*a.branch_b.last().expect("branch"), flag));
        }
        Circuit::from_gates(n_qubits, gates)
    }

    /// Unordered CNOT pairs of the encoding fragment.
    pub fn cnot_pairs(&self) -> Vec<(usize, usize)> {
        self.encoding_circuit(self.max_qubit() + 1)
            .expect("layout indices fit")
            .cnot_pairs()
    }

    /// Fault location right after the ladder CNOT that writes `qubit`.
    ///
    /// For the last qubit of a branch this is the end of that branch's ladder,
    /// before any flag CNOT.
    pub fn fault_after_ladder_step(&self, qubit: usize) -> Result<FaultLocation> {
        let gates = self.ladder_gates();
        let idx = gates
            .iter()
            .position(|g| matches!(g, Gate::Cnot { target, .. } if *target == qubit))
            .ok_or_else(|| Error::InvalidArgument(format!("qubit {qubit} is not on a branch")))?;
        Ok(FaultLocation {
            after_gates: idx + 1,
            qubit,
        })
    }

    /// Fault location after the complete branch ladders (before the flag CNOTs).
    pub fn fault_after_ladders(&self, qubit: usize) -> Result<FaultLocation> {
        if !self.branch_qubits().contains(&qubit) {
            return Err(Error::InvalidArgument(format!("qubit {qubit} is not on a branch")));
        }
        Ok(FaultLocation {
            after_gates: self.ladder_gates().len(),
            qubit,
        })
    }
}

impl fmt::Display for EncodingLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Encoding fragment on the smallest register holding the layout.
pub fn build_encoding_circuit(layout: &EncodingLayout) -> Result<Circuit> {
    layout.encoding_circuit(layout.max_qubit() + 1)
}
