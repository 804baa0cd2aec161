use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Render the low `n` bits of `x`; character `i` is bit `i` (qubit `i`).
pub fn format_bits(x: u64, n: usize) -> String {
    (0..n).map(|i| if (x >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Inverse of [`format_bits`].
pub fn parse_bits(s: &str) -> Result<u64> {
    if s.is_empty() || s.len() > 64 {
        return Err(Error::InvalidBitstring(s.into()));
    }
    s.chars().enumerate().try_fold(0u64, |acc, (i, ch)| match ch {
        '0' => Ok(acc),
        '1' => Ok(acc | (1 << i)),
        _ => Err(Error::InvalidBitstring(s.into())),
    })
}

/// A multiset of measured bitstrings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counts {
    n_bits: usize,
    counts: BTreeMap<u64, u64>,
    shots: u64,
}

impl Counts {
    pub fn new(n_bits: usize) -> Result<Self> {
        if n_bits == 0 || n_bits > 64 {
            return Err(Error::InvalidArgument(format!("counts need 1..=64 bits, got {n_bits}")));
        }
        Ok(Counts {
            n_bits,
            counts: BTreeMap::new(),
            shots: 0,
        })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn add(&mut self, bits: u64, count: u64) -> Result<()> {
        if self.n_bits < 64 && bits >> self.n_bits != 0 {
            return Err(Error::InvalidBitstring(format!("{bits:#b}")));
        }
        if count > 0 {
            *self.counts.entry(bits).or_default() += count;
            self.shots += count;
        }
        Ok(())
    }

    pub fn add_str(&mut self, bits: &str, count: u64) -> Result<()> {
        if bits.len() != self.n_bits {
            return Err(Error::LengthMismatch {
                needed: self.n_bits,
                got: bits.len(),
            });
        }
        self.add(parse_bits(bits)?, count)
    }

    pub fn from_pairs<'a>(n_bits: usize, pairs: impl IntoIterator<Item = (&'a str, u64)>) -> Result<Self> {
        let mut c = Counts::new(n_bits)?;
        for (s, k) in pairs {
            c.add_str(s, k)?;
        }
        Ok(c)
    }

    pub fn get(&self, bits: u64) -> u64 {
        self.counts.get(&bits).copied().unwrap_or(0)
    }

    pub fn get_str(&self, bits: &str) -> u64 {
        parse_bits(bits).map(|b| self.get(b)).unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(k, v)| (*k, *v))
    }

    pub fn merge(&mut self, other: &Counts) -> Result<()> {
        if other.n_bits != self.n_bits {
            return Err(Error::LengthMismatch {
                needed: self.n_bits,
                got: other.n_bits,
            });
        }
        for (k, v) in other.iter() {
            self.add(k, v)?;
        }
        Ok(())
    }

    pub fn frequency(&self, bits: u64) -> f64 {
        if self.shots == 0 {
            0.0
        } else {
            self.get(bits) as f64 / self.shots as f64
        }
    }

    /// Counts keyed by rendered bitstrings.
    pub fn to_string_map(&self) -> BTreeMap<String, u64> {
        self.iter().map(|(k, v)| (format_bits(k, self.n_bits), v)).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct CountsDoc {
    n_bits: usize,
    counts: BTreeMap<String, u64>,
}

impl Serialize for Counts {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CountsDoc {
            n_bits: self.n_bits,
            counts: self.to_string_map(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Counts {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = CountsDoc::deserialize(d)?;
        let mut c = Counts::new(doc.n_bits).map_err(serde::de::Error::custom)?;
        for (k, v) in doc.counts {
            c.add_str(&k, v).map_err(serde::de::Error::custom)?;
        }
        Ok(c)
    }
}
