use nalgebra::DVector;

use super::{CMatrix, Circuit, Gate, Hamiltonian, NoiseModel, C64, MAX_DENSE_QUBITS};
use crate::error::check_probability;
use crate::{Error, Result};

/// Density matrix of an `n`-qubit register (basis index bit `i` = qubit `i`).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    n_qubits: usize,
    matrix: CMatrix,
}

impl DensityState {
    /// The all-zeros state `|0...0><0...0|`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_DENSE_QUBITS {
            return Err(Error::TooManyQubits(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: index,
            });
        }
        let mut matrix = CMatrix::zeros(dim, dim);
        matrix[(index, index)] = C64::new(1.0, 0.0);
        Ok(DensityState { n_qubits, matrix })
    }

    /// `|psi><psi|` for a normalised state vector.
    pub fn from_pure(psi: &[C64]) -> Result<Self> {
        let dim = psi.len();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::DimensionMismatch {
                expected: dim.next_power_of_two().max(2),
                got: dim,
            });
        }
        let n_qubits = dim.trailing_zeros() as usize;
        if n_qubits > MAX_DENSE_QUBITS {
            return Err(Error::TooManyQubits(n_qubits));
        }
        let v = DVector::from_column_slice(psi);
        Ok(DensityState {
            n_qubits,
            matrix: &v * v.adjoint(),
        })
    }

    /// Wrap an explicit matrix after checking it is a valid state.
    pub fn from_matrix(matrix: CMatrix) -> Result<Self> {
        let dim = matrix.nrows();
        if matrix.ncols() != dim || !dim.is_power_of_two() || dim < 2 {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.ncols(),
            });
        }
        let s = DensityState {
            n_qubits: dim.trailing_zeros() as usize,
            matrix,
        };
        s.check_physical()?;
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Computational-basis populations.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// Hermitian within 1e-12, unit trace within 1e-12, eigenvalues >= -1e-10.
    pub fn check_physical(&self) -> Result<()> {
        let herm = (&self.matrix - self.matrix.adjoint()).camax();
        if herm > 1e-12 {
            return Err(Error::NotHermitian(herm));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("trace {tr} is not 1")));
        }
        let min = self
            .matrix
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min < -1e-10 {
            return Err(Error::InvalidArgument(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    /// Apply a gate exactly: `rho -> G rho G^dagger`.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        match *gate {
            Gate::Barrier => {}
            Gate::Cnot { control, target } => self.permute_cnot(control, target),
            _ => self.apply_single(gate.qubits()[0], &gate.single_qubit_matrix().expect("1q gate")),
        }
        Ok(())
    }

    fn apply_single(&mut self, q: usize, u: &super::Matrix2) {
        let dim = self.dim();
        let bit = 1usize << q;
        let m = &mut self.matrix;
        for j in 0..dim {
            for i in (0..dim).filter(|i| i & bit == 0) {
                let (a, b) = (m[(i, j)], m[(i | bit, j)]);
                m[(i, j)] = u[(0, 0)] * a + u[(0, 1)] * b;
                m[(i | bit, j)] = u[(1, 0)] * a + u[(1, 1)] * b;
            }
        }
        for i in 0..dim {
            for j in (0..dim).filter(|j| j & bit == 0) {
                let (a, b) = (m[(i, j)], m[(i, j | bit)]);
                m[(i, j)] = a * u[(0, 0)].conj() + b * u[(0, 1)].conj();
                m[(i, j | bit)] = a * u[(1, 0)].conj() + b * u[(1, 1)].conj();
            }
        }
    }

    fn permute_cnot(&mut self, control: usize, target: usize) {
        let (cb, tb) = (1usize << control, 1usize << target);
        let perm = |i: usize| if i & cb != 0 { i ^ tb } else { i };
        let dim = self.dim();
        let old = self.matrix.clone();
        for i in 0..dim {
            for j in 0..dim {
                self.matrix[(perm(i), perm(j))] = old[(i, j)];
            }
        }
    }

    /// CNOT followed by two-qubit depolarizing noise of strength `p`:
    /// `rho -> (1 - 4p/3) U rho U^dagger + (4p/3) (I/4 (x) Tr_pair rho)`.
    pub fn apply_noisy_cnot(&mut self, control: usize, target: usize, p: f64) -> Result<()> {
        check_probability(|| format!("p_cnot({control},{target})"), p)?;
        Gate::cnot(control, target).validate(self.n_qubits)?;
        self.permute_cnot(control, target);
        if p == 0.0 {
            return Ok(());
        }
        let dim = self.dim();
        let pair = (1usize << control) | (1usize << target);
        let corners = [0, 1usize << control, 1usize << target, pair];
        let keep = 1.0 - 4.0 * p / 3.0;
        let mix = p / 3.0;
        let old = self.matrix.clone();
        for i in 0..dim {
            for j in 0..dim {
                let mut v = old[(i, j)] * keep;
                if i & pair == j & pair {
                    let (ri, rj) = (i & !pair, j & !pair);
                    let reduced: C64 = corners.iter().map(|&k| old[(ri | k, rj | k)]).sum();
                    v += reduced * mix;
                }
                self.matrix[(i, j)] = v;
            }
        }
        Ok(())
    }

    /// Run a circuit; CNOTs pick up depolarizing noise from `noise` when given.
    pub fn run(&mut self, circuit: &Circuit, noise: Option<&NoiseModel>) -> Result<()> {
        if circuit.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                got: circuit.n_qubits(),
            });
        }
        for g in circuit.gates() {
            match (g, noise) {
                (Gate::Cnot { control, target }, Some(model)) => {
                    let p = model.cnot(*control, *target)?;
                    self.apply_noisy_cnot(*control, *target, p)?;
                }
                _ => self.apply_gate(g)?,
            }
        }
        Ok(())
    }

    /// `Tr(rho H)`.
    pub fn expectation(&self, h: &Hamiltonian) -> Result<f64> {
        if h.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                got: h.n_qubits(),
            });
        }
        let hm = h.to_matrix()?;
        let value: C64 = (0..self.dim())
            .flat_map(|i| (0..self.dim()).map(move |j| (i, j)))
            .map(|(i, j)| self.matrix[(i, j)] * hm[(j, i)])
            .sum();
        Ok(value.re)
    }
}

/// `exp(-i H t)` through the eigendecomposition of the Hermitian matrix `h`.
pub fn exact_propagator(h: &CMatrix, t: f64) -> Result<CMatrix> {
    let dim = h.nrows();
    if h.ncols() != dim || !dim.is_power_of_two() {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: h.ncols(),
        });
    }
    if dim > 16 {
        return Err(Error::TooManyQubits(dim.trailing_zeros() as usize));
    }
    let scale = h.camax().max(1.0);
    let herm = (h - h.adjoint()).camax();
    if herm > 1e-12 * scale {
        return Err(Error::NotHermitian(herm));
    }
    let eig = h.clone().symmetric_eigen();
    let phases = CMatrix::from_diagonal(&eig.eigenvalues.map(|l| C64::from_polar(1.0, -l * t)));
    Ok(&eig.eigenvectors * phases * eig.eigenvectors.adjoint())
}
