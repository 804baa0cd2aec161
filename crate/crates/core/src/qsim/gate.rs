use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Matrix2, C64};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    U3,
    H,
    X,
    Cnot,
    Barrier,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::Rx => "RX",
            GateKind::Ry => "RY",
            GateKind::Rz => "RZ",
            GateKind::U3 => "U3",
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Cnot => "CNOT",
            GateKind::Barrier => "BARRIER",
        }
    }

    fn arity(self) -> (usize, usize) {
        match self {
            GateKind::Rx | GateKind::Ry | GateKind::Rz => (1, 1),
            GateKind::U3 => (3, 1),
            GateKind::H | GateKind::X => (0, 1),
            GateKind::Cnot => (0, 2),
            GateKind::Barrier => (0, 0),
        }
    }
}

/// A gate with its parameters (radians) and qubit operands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    Rx {
        qubit: usize,
        theta: f64,
    },
    Ry {
        qubit: usize,
        theta: f64,
    },
    Rz {
        qubit: usize,
        theta: f64,
    },
    U3 {
        qubit: usize,
        theta: f64,
        phi: f64,
        lambda: f64,
    },
    H(usize),
    X(usize),
    Cnot {
        control: usize,
        target: usize,
    },
    Barrier,
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    /// Build a gate from a kind, a flat parameter list and a qubit list.
    pub fn from_parts(kind: GateKind, params: &[f64], qubits: &[usize]) -> Result<Self> {
        let (n_params, n_qubits) = kind.arity();
        if params.len() != n_params {
            return Err(Error::ParamCount {
                gate: kind.name(),
                expected: n_params,
                got: params.len(),
            });
        }
        if qubits.len() != n_qubits {
            return Err(Error::QubitCount {
                gate: kind.name(),
                expected: n_qubits,
                got: qubits.len(),
            });
        }
        Ok(match kind {
            GateKind::Rx => Gate::Rx {
                qubit: qubits[0],
                theta: params[0],
            },
            GateKind::Ry => Gate::Ry {
                qubit: qubits[0],
                theta: params[0],
            },
            GateKind::Rz => Gate::Rz {
                qubit: qubits[0],
                theta: params[0],
            },
            GateKind::U3 => Gate::U3 {
                qubit: qubits[0],
                theta: params[0],
                phi: params[1],
                lambda: params[2],
            },
            GateKind::H => Gate::H(qubits[0]),
            GateKind::X => Gate::X(qubits[0]),
            GateKind::Cnot => {
                if qubits[0] == qubits[1] {
                    return Err(Error::DuplicateQubit(qubits[0]));
                }
                Gate::cnot(qubits[0], qubits[1])
            }
            GateKind::Barrier => Gate::Barrier,
        })
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::Rx { .. } => GateKind::Rx,
            Gate::Ry { .. } => GateKind::Ry,
            Gate::Rz { .. } => GateKind::Rz,
            Gate::U3 { .. } => GateKind::U3,
            Gate::H(_) => GateKind::H,
            Gate::X(_) => GateKind::X,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Barrier => GateKind::Barrier,
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            Gate::Rx { theta, .. } | Gate::Ry { theta, .. } | Gate::Rz { theta, .. } => vec![theta],
            Gate::U3 { theta, phi, lambda, .. } => vec![theta, phi, lambda],
            _ => Vec::new(),
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Rx { qubit, .. }
            | Gate::Ry { qubit, .. }
            | Gate::Rz { qubit, .. }
            | Gate::U3 { qubit, .. }
            | Gate::H(qubit)
            | Gate::X(qubit) => vec![qubit],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Barrier => Vec::new(),
        }
    }

    /// Check operand indices against a register size.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        for &q in &qubits {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::DuplicateQubit(qubits[0]));
        }
        Ok(())
    }

    /// Same gate with every qubit index passed through `map`.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::Rx { qubit, theta } => Gate::Rx {
                qubit: map(qubit),
                theta,
            },
            Gate::Ry { qubit, theta } => Gate::Ry {
                qubit: map(qubit),
                theta,
            },
            Gate::Rz { qubit, theta } => Gate::Rz {
                qubit: map(qubit),
                theta,
            },
            Gate::U3 {
                qubit,
                theta,
                phi,
                lambda,
            } => Gate::U3 {
                qubit: map(qubit),
                theta,
                phi,
                lambda,
            },
            Gate::H(q) => Gate::H(map(q)),
            Gate::X(q) => Gate::X(map(q)),
            Gate::Cnot { control, target } => Gate::cnot(map(control), map(target)),
            Gate::Barrier => Gate::Barrier,
        }
    }

    /// The 2x2 unitary of a single-qubit gate.
    pub fn single_qubit_matrix(&self) -> Option<Matrix2> {
        let re = |x: f64| C64::new(x, 0.0);
        let cis = |x: f64| C64::from_polar(1.0, x);
        Some(match *self {
            Gate::Rx { theta, .. } => {
                let (s, c) = (theta / 2.0).sin_cos();
                Matrix2::new(re(c), C64::new(0.0, -s), C64::new(0.0, -s), re(c))
            }
            Gate::Ry { theta, .. } => {
                let (s, c) = (theta / 2.0).sin_cos();
                Matrix2::new(re(c), re(-s), re(s), re(c))
            }
            Gate::Rz { theta, .. } => Matrix2::new(cis(-theta / 2.0), re(0.0), re(0.0), cis(theta / 2.0)),
            Gate::U3 { theta, phi, lambda, .. } => {
                let (s, c) = (theta / 2.0).sin_cos();
                Matrix2::new(re(c), -cis(lambda) * s, cis(phi) * s, cis(phi + lambda) * c)
            }
            Gate::H(_) => Matrix2::new(
                re(FRAC_1_SQRT_2),
                re(FRAC_1_SQRT_2),
                re(FRAC_1_SQRT_2),
                re(-FRAC_1_SQRT_2),
            ),
            Gate::X(_) => Matrix2::new(re(0.0), re(1.0), re(1.0), re(0.0)),
            Gate::Cnot { .. } | Gate::Barrier => return None,
        })
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        write!(f, "{}", self.kind().name())?;
        if !params.is_empty() {
            let p: Vec<String> = params.iter().map(|x| format!("{x:.6}")).collect();
            write!(f, "({})", p.join(", "))?;
        }
        for q in self.qubits() {
            write!(f, " q{q}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: &Matrix2, b: &Matrix2) -> bool {
        (a - b).iter().all(|z| z.norm() < 1e-12)
    }

    #[test]
    fn ry_matches_closed_form() {
        let theta = 0.73;
        let m = Gate::Ry { qubit: 0, theta }.single_qubit_matrix().unwrap();
        let (s, c) = (theta / 2.0).sin_cos();
        assert!((m[(0, 0)].re - c).abs() < 1e-15);
        assert!((m[(0, 1)].re + s).abs() < 1e-15);
        assert!((m[(1, 0)].re - s).abs() < 1e-15);
        assert!((m[(1, 1)].re - c).abs() < 1e-15);
    }

    #[test]
    fn u3_special_cases() {
        // U3(theta, 0, 0) = RY(theta); U3(pi, 0, pi) = X.
        let u = Gate::U3 {
            qubit: 0,
            theta: 1.1,
            phi: 0.0,
            lambda: 0.0,
        };
        let ry = Gate::Ry { qubit: 0, theta: 1.1 };
        assert!(close(
            &u.single_qubit_matrix().unwrap(),
            &ry.single_qubit_matrix().unwrap()
        ));
        let x = Gate::U3 {
            qubit: 0,
            theta: PI,
            phi: 0.0,
            lambda: PI,
        };
        assert!(close(
            &x.single_qubit_matrix().unwrap(),
            &Gate::X(0).single_qubit_matrix().unwrap()
        ));
    }

    #[test]
    fn single_qubit_matrices_are_unitary() {
        let gates = [
            Gate::Rx { qubit: 0, theta: 0.3 },
            Gate::Ry { qubit: 0, theta: -1.2 },
            Gate::Rz { qubit: 0, theta: 2.5 },
            Gate::U3 {
                qubit: 0,
                theta: 0.4,
                phi: 1.3,
                lambda: -0.7,
            },
            Gate::H(0),
            Gate::X(0),
        ];
        for g in gates {
            let m = g.single_qubit_matrix().unwrap();
            assert!(close(&(m * m.adjoint()), &Matrix2::identity()), "{g}");
        }
    }

    #[test]
    fn from_parts_checks_arity() {
        assert!(matches!(
            Gate::from_parts(GateKind::U3, &[1.0], &[0]),
            Err(Error::ParamCount {
                expected: 3,
                got: 1,
                ..
            })
        ));
        assert!(matches!(
            Gate::from_parts(GateKind::Cnot, &[], &[1, 1]),
            Err(Error::DuplicateQubit(1))
        ));
        assert!(matches!(
            Gate::from_parts(GateKind::X, &[], &[0, 1]),
            Err(Error::QubitCount { .. })
        ));
        let g = Gate::from_parts(GateKind::Rz, &[0.5], &[2]).unwrap();
        assert_eq!(g.params(), vec![0.5]);
        assert_eq!(g.qubits(), vec![2]);
    }

    #[test]
    fn validate_rejects_out_of_range() {
        assert!(Gate::cnot(0, 3).validate(3).is_err());
        assert!(Gate::cnot(0, 2).validate(3).is_ok());
        assert!(Gate::Barrier.validate(0).is_ok());
    }
}
