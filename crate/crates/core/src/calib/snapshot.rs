use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::qsim::ReadoutError;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitCalibration {
    pub index: usize,
    pub p0r: f64,
    pub p1r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeCalibration {
    pub pair: [usize; 2],
    pub p_cnot: f64,
}

/// Per-qubit readout flips and per-edge CNOT errors of one device at one time.
///
/// JSON fields: `device`, `qubits` (`index`, `p0r`, `p1r`), `edges` (`pair`,
/// `p_cnot`) and `timestamp`. `p0r` is the 0→1 flip rate, `p1r` the 1→0 rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrationSnapshot {
    pub device: String,
    pub qubits: Vec<QubitCalibration>,
    pub edges: Vec<EdgeCalibration>,
    pub timestamp: String,
}

fn invalid(field: String, msg: impl std::fmt::Display) -> Error {
    Error::Snapshot(format!("{field}: {msg}"))
}

fn probability(field: impl FnOnce() -> String, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(invalid(field(), format_args!("{v} is not a probability in [0, 1]")))
    }
}

impl CalibrationSnapshot {
    /// Parse and validate a JSON document. `origin` names the source in errors.
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let snap: CalibrationSnapshot = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            Error::Parse {
                path: if path == "." {
                    origin.to_string()
                } else {
                    format!("{origin}:{path}")
                },
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        })?;
        snap.validate()?;
        Ok(snap)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text, &path.display().to_string())
    }

    /// Invariants: probabilities in `[0, 1]`, unique qubit indices, edges between
    /// two distinct listed qubits, and no duplicate (unordered) edge.
    pub fn validate(&self) -> Result<()> {
        let mut indices = BTreeSet::new();
        for (i, q) in self.qubits.iter().enumerate() {
            probability(|| format!("qubits[{i}].p0r"), q.p0r)?;
            probability(|| format!("qubits[{i}].p1r"), q.p1r)?;
            if !indices.insert(q.index) {
                return Err(invalid(
                    format!("qubits[{i}].index"),
                    format_args!("duplicate qubit {}", q.index),
                ));
            }
        }
        let mut pairs = BTreeSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            probability(|| format!("edges[{i}].p_cnot"), e.p_cnot)?;
            let [a, b] = e.pair;
            for q in [a, b] {
                if !indices.contains(&q) {
                    return Err(invalid(
                        format!("edges[{i}].pair"),
                        format_args!("qubit {q} is not listed in qubits"),
                    ));
                }
            }
            if a == b {
                return Err(invalid(format!("edges[{i}].pair"), "endpoints must differ"));
            }
            if !pairs.insert((a.min(b), a.max(b))) {
                return Err(invalid(
                    format!("edges[{i}].pair"),
                    format_args!("duplicate edge ({a}, {b})"),
                ));
            }
        }
        Ok(())
    }

    /// Qubits sorted by index, edge pairs as `[min, max]` sorted.
    pub fn canonicalized(&self) -> Self {
        let mut s = self.clone();
        s.qubits.sort_by_key(|q| q.index);
        for e in &mut s.edges {
            e.pair = [e.pair[0].min(e.pair[1]), e.pair[0].max(e.pair[1])];
        }
        s.edges.sort_by_key(|e| e.pair);
        s
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(&self.canonicalized())?;
        s.push('\n');
        Ok(s)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn readout(&self, qubit: usize) -> Result<ReadoutError> {
        let q = self
            .qubits
            .iter()
            .find(|q| q.index == qubit)
            .ok_or(Error::MissingReadout(qubit))?;
        ReadoutError::new(q.p0r, q.p1r)
    }

    pub fn cnot(&self, a: usize, b: usize) -> Result<f64> {
        self.edges
            .iter()
            .find(|e| e.pair == [a, b] || e.pair == [b, a])
            .map(|e| e.p_cnot)
            .ok_or(Error::MissingEdge(a.min(b), a.max(b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
  "device": "toy",
  "qubits": [{"index": 1, "p0r": 0.02, "p1r": 0.05}, {"index": 0, "p0r": 0.01, "p1r": 0.03}],
  "edges": [{"pair": [1, 0], "p_cnot": 0.012}],
  "timestamp": "2021-01-01T00:00:00Z"
}"#;

    #[test]
    fn round_trip_is_byte_stable() {
        let s = CalibrationSnapshot::from_json(MINIMAL, "mem").unwrap();
        let a = s.to_json().unwrap();
        let back = CalibrationSnapshot::from_json(&a, "mem").unwrap();
        assert_eq!(back, s.canonicalized());
        assert_eq!(back.to_json().unwrap(), a);
    }

    #[test]
    fn bad_probability_names_field() {
        let bad = MINIMAL.replace("0.05", "1.2");
        let e = CalibrationSnapshot::from_json(&bad, "mem").unwrap_err().to_string();
        assert!(e.contains("qubits[0].p1r"), "{e}");
    }

    #[test]
    fn missing_endpoint() {
        let bad = MINIMAL.replace("[1, 0]", "[1, 7]");
        let e = CalibrationSnapshot::from_json(&bad, "mem").unwrap_err().to_string();
        assert!(e.contains("edges[0].pair") && e.contains('7'), "{e}");
    }

    #[test]
    fn duplicate_edge() {
        let bad = MINIMAL.replace(
            r#"[{"pair": [1, 0], "p_cnot": 0.012}]"#,
            r#"[{"pair": [1, 0], "p_cnot": 0.012}, {"pair": [0, 1], "p_cnot": 0.02}]"#,
        );
        assert!(CalibrationSnapshot::from_json(&bad, "mem").is_err());
    }

    #[test]
    fn parse_error_has_location() {
        let bad = MINIMAL.replace("\"p_cnot\": 0.012", "\"p_cnot\": \"high\"");
        match CalibrationSnapshot::from_json(&bad, "mem") {
            Err(Error::Parse { path, line, .. }) => {
                assert!(path.contains("edges[0].p_cnot"), "{path}");
                assert_eq!(line, 4);
            }
            other => panic!("{other:?}"),
        }
    }
}
