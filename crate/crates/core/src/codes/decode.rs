use std::collections::BTreeSet;

use super::code422::decode_422_bits;
use super::EncodingLayout;
use crate::qsim::{parse_bits, Counts, Distribution};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decoded {
    Logical(u8),
    Discard,
}

impl EncodingLayout {
    /// Decode one shot given as a register-wide bit pattern (bit `i` = qubit `i`).
    pub fn decode_bits(&self, bits: u64) -> Decoded {
        if self.flag().is_some_and(|f| (bits >> f) & 1 == 1) {
            return Decoded::Discard;
        }
        let data = self.data_qubits();
        let ones = data.iter().filter(|&&q| (bits >> q) & 1 == 1).count();
        Decoded::Logical(u8::from(2 * ones > data.len()))
    }
}

/// Decode a bitstring whose length is the layout's register width.
pub fn decode_shot(bitstring: &str, layout: &EncodingLayout) -> Result<Decoded> {
    let needed = layout.max_qubit() + 1;
    if bitstring.len() != needed {
        return Err(Error::LengthMismatch {
            needed,
            got: bitstring.len(),
        });
    }
    Ok(layout.decode_bits(parse_bits(bitstring)?))
}

/// A group of measured qubits that decodes to one or more logical bits.
#[derive(Debug, Clone, PartialEq)]
pub enum ReadoutBlock {
    /// An unencoded qubit read directly.
    Bare(usize),
    Encoded(EncodingLayout),
    /// A [4,2,2] codeword on four qubits, yielding two logical bits.
    Code422([usize; 4]),
}

impl ReadoutBlock {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            ReadoutBlock::Bare(q) => vec![*q],
            ReadoutBlock::Encoded(l) => l.qubits(),
            ReadoutBlock::Code422(q) => q.to_vec(),
        }
    }

    pub fn logical_width(&self) -> usize {
        match self {
            ReadoutBlock::Code422(_) => 2,
            _ => 1,
        }
    }

    /// Logical bits (low bits first) or `None` for a rejected shot.
    fn decode(&self, bits: u64) -> Option<u64> {
        match self {
            ReadoutBlock::Bare(q) => Some((bits >> q) & 1),
            ReadoutBlock::Encoded(l) => match l.decode_bits(bits) {
                Decoded::Logical(v) => Some(u64::from(v)),
                Decoded::Discard => None,
            },
            ReadoutBlock::Code422(q) => {
                let word = q
                    .iter()
                    .enumerate()
                    .fold(0u8, |w, (i, &qi)| w | ((((bits >> qi) & 1) as u8) << i));
                decode_422_bits(word).map(u64::from)
            }
        }
    }
}

impl From<EncodingLayout> for ReadoutBlock {
    fn from(l: EncodingLayout) -> Self {
        ReadoutBlock::Encoded(l)
    }
}

/// Checks that blocks do not overlap and fit in `n_bits`; returns the logical width.
fn check_blocks(blocks: &[ReadoutBlock], n_bits: usize) -> Result<usize> {
    let mut seen = BTreeSet::new();
    for q in blocks.iter().flat_map(ReadoutBlock::qubits) {
        if q >= n_bits {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                n_qubits: n_bits,
            });
        }
        if !seen.insert(q) {
            return Err(Error::OverlappingLayouts(q));
        }
    }
    let width: usize = blocks.iter().map(ReadoutBlock::logical_width).sum();
    if width == 0 {
        return Err(Error::InvalidArgument("no readout blocks".into()));
    }
    Ok(width)
}

fn decode_register(blocks: &[ReadoutBlock], bits: u64) -> Option<u64> {
    let mut out = 0u64;
    let mut pos = 0;
    for b in blocks {
        out |= b.decode(bits)? << pos;
        pos += b.logical_width();
    }
    Some(out)
}

/// Logical counts plus the number of rejected shots.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodedCounts {
    pub logical: Counts,
    pub discarded: u64,
}

impl DecodedCounts {
    pub fn total(&self) -> u64 {
        self.logical.shots() + self.discarded
    }

    pub fn kept(&self) -> u64 {
        self.logical.shots()
    }

    pub fn discard_fraction(&self) -> f64 {
        if self.total() == 0 {
            0.0
        } else {
            self.discarded as f64 / self.total() as f64
        }
    }
}

/// Decode every shot block by block. Logical bit `k` comes from the `k`-th
/// logical output in block order; a discard in any block drops the whole shot.
pub fn decode_counts(counts: &Counts, blocks: &[ReadoutBlock]) -> Result<DecodedCounts> {
    let width = check_blocks(blocks, counts.n_bits())?;
    let mut logical = Counts::new(width)?;
    let mut discarded = 0;
    for (bits, n) in counts.iter() {
        match decode_register(blocks, bits) {
            Some(v) => logical.add(v, n)?,
            None => discarded += n,
        }
    }
    Ok(DecodedCounts { logical, discarded })
}

/// Exact decoded probabilities: `kept[v]` is the joint probability of keeping
/// the shot and decoding logical value `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodedDistribution {
    pub n_logical: usize,
    pub kept: Vec<f64>,
    pub discard: f64,
}

impl DecodedDistribution {
    /// Probability of `v` conditional on the shot being kept.
    pub fn conditional(&self, v: usize) -> f64 {
        let total: f64 = self.kept.iter().sum();
        if total > 0.0 {
            self.kept[v] / total
        } else {
            0.0
        }
    }
}

pub fn decode_distribution(dist: &Distribution, blocks: &[ReadoutBlock]) -> Result<DecodedDistribution> {
    let width = check_blocks(blocks, dist.n_bits)?;
    let mut kept = vec![0.0; 1 << width];
    let mut discard = 0.0;
    for (x, &p) in dist.probs.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        match decode_register(blocks, x as u64) {
            Some(v) => kept[v as usize] += p,
            None => discard += p,
        }
    }
    Ok(DecodedDistribution {
        n_logical: width,
        kept,
        discard,
    })
}
