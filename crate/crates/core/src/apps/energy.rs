use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{decode_counts, decode_distribution, EncodingLayout, ReadoutBlock};
use crate::error::check_probability;
use crate::qsim::classical::pre_readout_distribution;
use crate::qsim::{sample_distribution, Circuit, Gate, Hamiltonian, NoiseModel, Pauli, PauliString, ReadoutError};
use crate::rng::derive_seed;
use crate::{Error, Result};

/// One CNOT error rate for every pair used and one readout pair for every qubit.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct UniformNoise {
    pub p_cnot: f64,
    pub readout: ReadoutError,
}

impl UniformNoise {
    pub fn new(p_cnot: f64, p0r: f64, p1r: f64) -> Result<Self> {
        Ok(UniformNoise {
            p_cnot: check_probability(|| "p_cnot".into(), p_cnot)?,
            readout: ReadoutError::new(p0r, p1r)?,
        })
    }

    pub fn noiseless() -> Self {
        Self::default()
    }

    /// The same model with perfect readout.
    pub fn without_readout(&self) -> Self {
        UniformNoise {
            readout: ReadoutError::default(),
            ..*self
        }
    }

    pub fn model(&self, n_qubits: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<NoiseModel> {
        NoiseModel::uniform(n_qubits, pairs, self.p_cnot, self.readout)
    }
}

/// How expectation values are obtained from the outcome distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Backend {
    /// Infinite-shot limit (exact decoded probabilities).
    Exact,
    Sampled {
        shots: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyEstimate {
    pub energy: f64,
    pub stderr: f64,
    /// Mean fraction of discarded shots over the measurement bases.
    pub discard_fraction: f64,
}

/// Physical register for `n_roots` logical qubits.
///
/// Unencoded, root `k` is qubit `k`. With a layout, block `k` is the compacted
/// layout shifted by `k * width`, and root `k` is that block's root.
#[derive(Debug, Clone, PartialEq)]
pub struct RegisterPlan {
    pub n_qubits: usize,
    pub roots: Vec<usize>,
    pub blocks: Vec<ReadoutBlock>,
    pub encoding: Circuit,
}

impl RegisterPlan {
    pub fn new(n_roots: usize, layout: Option<&EncodingLayout>) -> Result<Self> {
        if n_roots == 0 {
            return Err(Error::InvalidArgument("need at least one root qubit".into()));
        }
        let Some(layout) = layout else {
            return Ok(RegisterPlan {
                n_qubits: n_roots,
                roots: (0..n_roots).collect(),
                blocks: (0..n_roots).map(ReadoutBlock::Bare).collect(),
                encoding: Circuit::new(n_roots)?,
            });
        };
        let (local, _) = layout.compacted();
        let width = local.width();
        let n_qubits = n_roots * width;
        let blocks: Vec<EncodingLayout> = (0..n_roots).map(|k| local.shifted(k * width)).collect();
        let mut encoding = Circuit::new(n_qubits)?;
        for b in &blocks {
            encoding.append(&b.encoding_circuit(n_qubits)?)?;
        }
        Ok(RegisterPlan {
            n_qubits,
            roots: blocks.iter().map(EncodingLayout::root).collect(),
            blocks: blocks.into_iter().map(ReadoutBlock::Encoded).collect(),
            encoding,
        })
    }

    /// `circuit` (on the roots) moved onto the physical register.
    pub fn place(&self, circuit: &Circuit) -> Result<Circuit> {
        if circuit.n_qubits() != self.roots.len() {
            return Err(Error::DimensionMismatch {
                expected: self.roots.len(),
                got: circuit.n_qubits(),
            });
        }
        circuit.remapped(self.n_qubits, |q| self.roots[q])
    }
}

/// Terms sharing one measurement basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementGroup {
    /// Per-qubit basis (`I` where no term of the group acts).
    pub basis: PauliString,
    pub terms: Vec<(f64, PauliString)>,
}

/// Greedy qubit-wise commuting grouping of the non-identity terms, in input order.
pub fn group_terms(h: &Hamiltonian) -> Vec<MeasurementGroup> {
    let mut groups: Vec<MeasurementGroup> = Vec::new();
    for (c, p) in h.terms().iter().filter(|(_, p)| !p.is_identity()) {
        match groups.iter_mut().find(|g| g.basis.qubitwise_commutes(p)) {
            Some(g) => {
                let ops = g
                    .basis
                    .ops()
                    .iter()
                    .zip(p.ops())
                    .map(|(&a, &b)| if a == Pauli::I { b } else { a })
                    .collect();
                g.basis = PauliString::new(ops);
                g.terms.push((*c, p.clone()));
            }
            None => groups.push(MeasurementGroup {
                basis: p.clone(),
                terms: vec![(*c, p.clone())],
            }),
        }
    }
    groups
}

/// Rotation taking the eigenbasis of `p` to the computational basis.
pub(crate) fn basis_change(p: Pauli, qubit: usize) -> Option<Gate> {
    match p {
        Pauli::X => Some(Gate::Ry {
            qubit,
            theta: -FRAC_PI_2,
        }),
        Pauli::Y => Some(Gate::Rx {
            qubit,
            theta: FRAC_PI_2,
        }),
        Pauli::I | Pauli::Z => None,
    }
}

fn support_mask(p: &PauliString) -> u64 {
    p.support().iter().map(|&q| 1u64 << q).sum()
}

/// Value of the group's operator on decoded logical outcome `v`.
fn group_value(terms: &[(f64, u64)], v: u64) -> f64 {
    terms
        .iter()
        .map(|&(c, mask)| {
            if (v & mask).count_ones().is_multiple_of(2) {
                c
            } else {
                -c
            }
        })
        .sum()
}

struct GroupResult {
    mean: f64,
    variance_of_mean: f64,
    discard: f64,
}

/// Estimate `<H>` of the state prepared by `prep` on the root qubits.
///
/// Terms are grouped by qubit-wise commuting basis. For each group the basis
/// rotations act on the roots right after `prep` and before the encoding
/// fragment, so the encoding always copies computational-basis information.
pub fn measure_energy(
    prep: &Circuit,
    h: &Hamiltonian,
    layout: Option<&EncodingLayout>,
    noise: &UniformNoise,
    backend: Backend,
    seed: u64,
) -> Result<EnergyEstimate> {
    if h.n_qubits() != prep.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: prep.n_qubits(),
            got: h.n_qubits(),
        });
    }
    let constant: f64 = h.terms().iter().filter(|(_, p)| p.is_identity()).map(|(c, _)| c).sum();
    let groups = group_terms(h);
    if groups.is_empty() {
        return Ok(EnergyEstimate {
            energy: constant,
            stderr: 0.0,
            discard_fraction: 0.0,
        });
    }
    let plan = RegisterPlan::new(prep.n_qubits(), layout)?;
    let placed = plan.place(prep)?;
    let model = noise.model(
        plan.n_qubits,
        placed.cnot_pairs().into_iter().chain(plan.encoding.cnot_pairs()),
    )?;
    let readout = model.readout_vec(plan.n_qubits)?;

    let results = groups
        .par_iter()
        .enumerate()
        .map(|(g, group)| {
            let mut circuit = placed.clone();
            for (k, &p) in group.basis.ops().iter().enumerate() {
                if let Some(gate) = basis_change(p, plan.roots[k]) {
                    circuit.push(gate)?;
                }
            }
            let terms: Vec<(f64, u64)> = group.terms.iter().map(|(c, p)| (*c, support_mask(p))).collect();
            let mut dist = pre_readout_distribution(&circuit, &plan.encoding, &model)?;
            match backend {
                Backend::Exact => {
                    dist.apply_readout(&readout)?;
                    let d = decode_distribution(&dist, &plan.blocks)?;
                    let kept: f64 = d.kept.iter().sum();
                    if kept <= 0.0 {
                        return Err(Error::InvalidArgument("every outcome is discarded".into()));
                    }
                    let mean = d
                        .kept
                        .iter()
                        .enumerate()
                        .map(|(v, p)| p * group_value(&terms, v as u64))
                        .sum::<f64>()
                        / kept;
                    Ok(GroupResult {
                        mean,
                        variance_of_mean: 0.0,
                        discard: d.discard,
                    })
                }
                Backend::Sampled { shots } => {
                    let counts = sample_distribution(&dist, &readout, shots, derive_seed(seed, g as u64))?;
                    let d = decode_counts(&counts, &plan.blocks)?;
                    let kept = d.kept();
                    if kept == 0 {
                        return Err(Error::InvalidArgument("every shot is discarded".into()));
                    }
                    let n = kept as f64;
                    let values: Vec<(f64, f64)> = d
                        .logical
                        .iter()
                        .map(|(v, c)| (group_value(&terms, v), c as f64))
                        .collect();
                    let mean = values.iter().map(|(f, c)| f * c).sum::<f64>() / n;
                    let var = values.iter().map(|(f, c)| c * (f - mean).powi(2)).sum::<f64>() / n;
                    Ok(GroupResult {
                        mean,
                        variance_of_mean: var / n,
                        discard: d.discard_fraction(),
                    })
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(EnergyEstimate {
        energy: constant + results.iter().map(|r| r.mean).sum::<f64>(),
        stderr: results.iter().map(|r| r.variance_of_mean).sum::<f64>().sqrt(),
        discard_fraction: results.iter().map(|r| r.discard).sum::<f64>() / results.len() as f64,
    })
}
