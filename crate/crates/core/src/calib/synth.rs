use rand::Rng;

use super::{CalibrationSnapshot, EdgeCalibration, QubitCalibration};
use crate::analytics::CnotErrorDistribution;
use crate::rng::substream;
use crate::Result;

/// Parameter distributions of a synthetic snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub cnot: CnotErrorDistribution,
    /// 0→1 readout flip rates: truncated Gaussian on `[0, 1]`.
    pub p0r: CnotErrorDistribution,
    /// `p1r / p0r` is uniform on `ratio ± ratio_spread`.
    pub ratio: f64,
    pub ratio_spread: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            cnot: CnotErrorDistribution {
                mean: 0.01393,
                sigma: 0.0066,
            },
            p0r: CnotErrorDistribution {
                mean: 0.012,
                sigma: 0.005,
            },
            ratio: 2.5,
            ratio_spread: 0.5,
        }
    }
}

const ROWS: [(usize, usize); 5] = [(0, 9), (13, 23), (27, 37), (41, 51), (55, 64)];
const CONNECTORS: [(usize, usize, usize); 12] = [
    (10, 0, 13),
    (11, 4, 17),
    (12, 8, 21),
    (24, 15, 29),
    (25, 19, 33),
    (26, 23, 37),
    (38, 27, 41),
    (39, 31, 45),
    (40, 35, 49),
    (52, 43, 56),
    (53, 47, 60),
    (54, 51, 64),
];

/// Edges of a 65-qubit heavy-hex lattice: five rows joined by twelve connector qubits.
fn heavy_hex_edges() -> Vec<[usize; 2]> {
    let mut edges = Vec::new();
    for (a, b) in ROWS {
        edges.extend((a..b).map(|q| [q, q + 1]));
    }
    for (c, up, down) in CONNECTORS {
        edges.push([up, c]);
        edges.push([c, down]);
    }
    edges
}

/// A synthetic snapshot over the given edges; never real device data.
pub fn synthetic_snapshot(
    device: &str,
    n_qubits: usize,
    edges: &[[usize; 2]],
    cfg: SynthConfig,
    seed: u64,
) -> Result<CalibrationSnapshot> {
    let mut qrng = substream(seed, 0);
    let qubits = (0..n_qubits)
        .map(|index| {
            let p0r = cfg.p0r.sample(&mut qrng);
            let ratio = if cfg.ratio_spread > 0.0 {
                qrng.random_range(cfg.ratio - cfg.ratio_spread..=cfg.ratio + cfg.ratio_spread)
            } else {
                cfg.ratio
            };
            QubitCalibration {
                index,
                p0r,
                p1r: (p0r * ratio).min(1.0),
            }
        })
        .collect();
    let mut erng = substream(seed, 1);
    let edges = edges
        .iter()
        .map(|&pair| EdgeCalibration {
            pair,
            p_cnot: cfg.cnot.sample(&mut erng),
        })
        .collect();
    let s = CalibrationSnapshot {
        device: device.into(),
        qubits,
        edges,
        timestamp: format!("synthetic seed {seed}"),
    }
    .canonicalized();
    s.validate()?;
    Ok(s)
}

/// Synthetic 65-qubit heavy-hex device ("manhattan-like" topology).
pub fn heavy_hex_65(cfg: SynthConfig, seed: u64) -> Result<CalibrationSnapshot> {
    synthetic_snapshot("synthetic-heavy-hex-65", 65, &heavy_hex_edges(), cfg, seed)
}
