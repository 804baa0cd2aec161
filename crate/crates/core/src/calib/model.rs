use std::io::Write;

use serde::Serialize;

use super::{find_embeddings, CalibrationSnapshot};
use crate::analytics::{exact_logical_error, fit_gaussian, CnotErrorDistribution};
use crate::apps::UniformNoise;
use crate::codes::EncodingLayout;
use crate::qsim::NoiseModel;
use crate::Result;

/// Noise on the given qubits and CNOT pairs, copied from the snapshot.
pub fn noise_for_qubits(
    snapshot: &CalibrationSnapshot,
    qubits: impl IntoIterator<Item = usize>,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> Result<NoiseModel> {
    let mut m = NoiseModel::new();
    for q in qubits {
        m.set_readout(q, snapshot.readout(q)?)?;
    }
    for (a, b) in pairs {
        m.set_cnot(a, b, snapshot.cnot(a, b)?)?;
    }
    Ok(m)
}

/// Noise model of `layout` (in device indices). Every qubit and CNOT pair of
/// the layout must be calibrated.
pub fn noise_from_snapshot(snapshot: &CalibrationSnapshot, layout: &EncodingLayout) -> Result<NoiseModel> {
    noise_for_qubits(snapshot, layout.qubits(), layout.cnot_pairs())
}

/// Gaussian fit of all edge CNOT errors, ignoring values above `outlier_cutoff`.
pub fn distribution_from_snapshot(
    snapshot: &CalibrationSnapshot,
    outlier_cutoff: Option<f64>,
) -> Result<CnotErrorDistribution> {
    let errors: Vec<f64> = snapshot.edges.iter().map(|e| e.p_cnot).collect();
    let fit = fit_gaussian(&errors, outlier_cutoff)?;
    CnotErrorDistribution::new(fit.mu, fit.sigma)
}

/// Device-averaged uniform noise: mean CNOT error and mean readout flips.
pub fn uniform_from_snapshot(snapshot: &CalibrationSnapshot) -> Result<UniformNoise> {
    let mean = |v: &mut dyn Iterator<Item = f64>| {
        let (s, n) = v.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
        if n == 0 {
            0.0
        } else {
            s / n as f64
        }
    };
    UniformNoise::new(
        mean(&mut snapshot.edges.iter().map(|e| e.p_cnot)),
        mean(&mut snapshot.qubits.iter().map(|q| q.p0r)),
        mean(&mut snapshot.qubits.iter().map(|q| q.p1r)),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymmetryRow {
    pub qubit: usize,
    pub p0r: f64,
    /// `p1r / p0r`; `None` where `p0r = 0`.
    pub ratio: Option<f64>,
}

pub fn asymmetry_report(snapshot: &CalibrationSnapshot) -> Vec<AsymmetryRow> {
    snapshot
        .canonicalized()
        .qubits
        .iter()
        .map(|q| AsymmetryRow {
            qubit: q.index,
            p0r: q.p0r,
            ratio: (q.p0r > 0.0).then(|| q.p1r / q.p0r),
        })
        .collect()
}

/// CSV with header `qubit,p0r,ratio`; the ratio is empty for rows with `p0r = 0`.
pub fn write_asymmetry_csv<W: Write>(out: W, rows: &[AsymmetryRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["qubit", "p0r", "ratio"])?;
    for r in rows {
        w.serialize((r.qubit, r.p0r, r.ratio))?;
    }
    w.flush()?;
    Ok(())
}

/// Exact logical errors of one embedding of a layout on a device.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatterPoint {
    pub root: usize,
    /// Mean of `(p0r + p1r) / 2` over the embedding's qubits.
    pub mean_readout: f64,
    pub logical_error_0: f64,
    pub logical_error_1: f64,
    pub discard_0: f64,
    pub discard_1: f64,
}

/// Per-embedding logical errors for up to `limit` embeddings of `template`.
pub fn scatter_points(
    snapshot: &CalibrationSnapshot,
    template: &EncodingLayout,
    limit: usize,
) -> Result<Vec<ScatterPoint>> {
    find_embeddings(snapshot, template, limit)?
        .iter()
        .map(|l| {
            let noise = noise_from_snapshot(snapshot, l)?;
            let qubits = l.qubits();
            let mean_readout = qubits
                .iter()
                .map(|&q| snapshot.readout(q).map(|r| 0.5 * (r.p0 + r.p1)))
                .sum::<Result<f64>>()?
                / qubits.len() as f64;
            let e0 = exact_logical_error(l, &noise, 0)?;
            let e1 = exact_logical_error(l, &noise, 1)?;
            Ok(ScatterPoint {
                root: l.root(),
                mean_readout,
                logical_error_0: e0.error,
                logical_error_1: e1.error,
                discard_0: e0.discard,
                discard_1: e1.discard,
            })
        })
        .collect()
}
