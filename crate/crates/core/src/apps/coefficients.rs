use std::io::{Read, Write};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::rng::substream;
use crate::{Error, Result};

/// One row of a coefficient file: `distance, c0, c1, ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub distance: f64,
    pub coeffs: Vec<f64>,
}

/// Read a CSV with header `distance,<p>0,...,<p>{n-1}` (e.g. `h` or `c`).
pub fn load_coefficients<R: Read>(input: R, n_coeffs: usize) -> Result<Vec<CoefficientRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.len() != n_coeffs + 1 || &header[0] != "distance" {
        return Err(Error::InvalidArgument(format!(
            "expected header distance plus {n_coeffs} coefficients, got {:?}",
            header.iter().collect::<Vec<_>>()
        )));
    }
    let mut rows = Vec::new();
    for rec in r.deserialize::<Vec<f64>>() {
        let rec = rec?;
        if rec.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite coefficient in row {}",
                rows.len() + 1
            )));
        }
        rows.push(CoefficientRow {
            distance: rec[0],
            coeffs: rec[1..].to_vec(),
        });
    }
    Ok(rows)
}

pub fn write_coefficients<W: Write>(out: W, prefix: char, rows: &[CoefficientRow]) -> Result<()> {
    let n = rows.first().map_or(0, |r| r.coeffs.len());
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["distance".to_string()];
    header.extend((0..n).map(|i| format!("{prefix}{i}")));
    w.write_record(&header)?;
    for row in rows {
        let mut rec = vec![row.distance];
        rec.extend(&row.coeffs);
        w.serialize(rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Synthetic coefficient sets for tests and demos (not molecular data).
///
/// Distances are spaced on `[0.5, 3.0]`; `c0` is drawn from `[-1.5, -0.5]`,
/// every other coefficient from `[-0.5, 0.5]`.
pub fn synthetic_coefficients(n_points: usize, n_coeffs: usize, seed: u64) -> Vec<CoefficientRow> {
    let mut rng = substream(seed, 0);
    (0..n_points)
        .map(|i| CoefficientRow {
            distance: 0.5 + 2.5 * i as f64 / (n_points.max(2) - 1) as f64,
            coeffs: (0..n_coeffs)
                .map(|k| {
                    if k == 0 {
                        rng.random_range(-1.5..-0.5)
                    } else {
                        rng.random_range(-0.5..0.5)
                    }
                })
                .collect(),
        })
        .collect()
}
