use std::f64::consts::PI;

use crate::qsim::{Circuit, Gate, Hamiltonian, Pauli};
use crate::{Error, Result};

/// Single-qubit H2 problem `(h0 - h3) I + (h2 - h1) Z + h4 X`.
pub fn h2_one_qubit(h: [f64; 5]) -> Result<Hamiltonian> {
    let [h0, h1, h2, h3, h4] = h;
    Hamiltonian::from_strs(1, &[(h0 - h3, "I"), (h2 - h1, "Z"), (h4, "X")])
}

/// Two-qubit H2 operator `h0 II + h1 IZ + h2 ZI + h3 ZZ + h4 XX`.
pub fn h2_two_qubit(h: [f64; 5]) -> Result<Hamiltonian> {
    let [h0, h1, h2, h3, h4] = h;
    Hamiltonian::from_strs(2, &[(h0, "II"), (h1, "IZ"), (h2, "ZI"), (h3, "ZZ"), (h4, "XX")])
}

/// Minimiser of `<0| RY(θ)† H RY(θ) |0> = c_I + c_Z cos θ + c_X sin θ`.
///
/// Returns `(θ*, E*)`.
pub fn optimal_ry_theta(h: &Hamiltonian) -> Result<(f64, f64)> {
    if h.n_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: h.n_qubits(),
        });
    }
    let (mut ci, mut cz, mut cx) = (0.0, 0.0, 0.0);
    for (c, p) in h.terms() {
        match p.ops()[0] {
            Pauli::I => ci += c,
            Pauli::Z => cz += c,
            Pauli::X => cx += c,
            Pauli::Y => return Err(Error::UnsupportedTerm(format!("{c} {p}"))),
        }
    }
    // + 0.0 turns a negative zero into +0 so that H = Z gives θ* = π, not -π
    let theta = f64::atan2(-cx + 0.0, -cz + 0.0);
    Ok((theta, ci - (cz * cz + cx * cx).sqrt()))
}

/// HeH+ two-qubit Hamiltonian; `c[k]` multiplies, in order,
/// II, ZI, IZ, ZZ, XI, XZ, IX, ZX, XX (character `i` acts on qubit `i`).
pub fn heh_hamiltonian(c: [f64; 9]) -> Result<Hamiltonian> {
    const STRINGS: [&str; 9] = ["II", "ZI", "IZ", "ZZ", "XI", "XZ", "IX", "ZX", "XX"];
    let terms: Vec<(f64, &str)> = c.iter().copied().zip(STRINGS).collect();
    Hamiltonian::from_strs(2, &terms)
}

/// Two-qubit HeH+ reference-state circuit with variational parameters `a, b, c`.
pub fn heh_circuit(a: f64, b: f64, c: f64) -> Result<Circuit> {
    let u3 = |qubit, theta, phi, lambda| Gate::U3 {
        qubit,
        theta,
        phi,
        lambda,
    };
    Circuit::from_gates(
        2,
        [
            u3(0, PI / 2.0 - 2.0 * a, -PI / 2.0, PI),
            u3(1, PI / 2.0, 2.0 * b - PI / 2.0, PI / 2.0),
            Gate::cnot(0, 1),
            u3(0, c, 0.0, -PI / 2.0),
            u3(1, 0.0, 0.0, c),
            Gate::cnot(0, 1),
            u3(0, PI / 2.0, 0.0, PI),
            u3(1, PI / 2.0, PI / 2.0, -PI / 2.0),
        ],
    )
}
