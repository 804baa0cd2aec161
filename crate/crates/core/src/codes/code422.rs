//! The [4,2,2] error-detecting code, read out by post-selection.
//!
//! Codeword bits `b0 b1 b2 b3` carry the logical pair `(b0 ^ b1, b0 ^ b2)`.
//! Every even-weight string is a valid outcome; odd weight is discarded.

use super::{decode_counts, Decoded, DecodedCounts, ReadoutBlock};
use crate::qsim::{format_bits, parse_bits, Counts};
use crate::{Error, Result};

/// Codeword for logical bits `l0` (bit 0) and `l1` (bit 1).
pub fn encode_422_bits(logical: u8) -> u8 {
    let (l0, l1) = (logical & 1, (logical >> 1) & 1);
    (l0 << 1) | (l1 << 2) | ((l0 ^ l1) << 3)
}

pub fn decode_422_bits(word: u8) -> Option<u8> {
    if (word & 0xF).count_ones() % 2 == 1 {
        return None;
    }
    let b = |i: u8| (word >> i) & 1;
    Some((b(0) ^ b(1)) | ((b(0) ^ b(2)) << 1))
}

/// `"l0l1"` to a 4-character codeword.
pub fn encode_422(logical: &str) -> Result<String> {
    if logical.len() != 2 {
        return Err(Error::InvalidBitstring(logical.into()));
    }
    Ok(format_bits(u64::from(encode_422_bits(parse_bits(logical)? as u8)), 4))
}

/// Decode a 4-character outcome; `Discard` outside the codespace.
pub fn decode_422(bitstring: &str) -> Result<Option<String>> {
    if bitstring.len() != 4 {
        return Err(Error::LengthMismatch {
            needed: 4,
            got: bitstring.len(),
        });
    }
    Ok(decode_422_bits(parse_bits(bitstring)? as u8).map(|l| format_bits(u64::from(l), 2)))
}

/// Same as [`decode_422`] but in the shared decoder vocabulary, one logical bit at a time.
pub fn decode_422_logical(bitstring: &str, which: usize) -> Result<Decoded> {
    Ok(match decode_422(bitstring)? {
        Some(l) => Decoded::Logical(u8::from(l.as_bytes()[which.min(1)] == b'1')),
        None => Decoded::Discard,
    })
}

/// Post-select and decode counts of a single codeword on `qubits`.
pub fn decode_counts_422(counts: &Counts, qubits: [usize; 4]) -> Result<DecodedCounts> {
    decode_counts(counts, &[ReadoutBlock::Code422(qubits)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(decode_422("0000").unwrap().as_deref(), Some("00"));
        assert_eq!(decode_422("0001").unwrap(), None);
        assert_eq!(decode_422("1111").unwrap().as_deref(), Some("00"));
    }

    #[test]
    fn round_trip_and_codespace() {
        for l in ["00", "01", "10", "11"] {
            let w = encode_422(l).unwrap();
            assert_eq!(w.matches('1').count() % 2, 0);
            assert_eq!(decode_422(&w).unwrap().as_deref(), Some(l));
        }
        let odd = (0..16u64).filter(|w| w.count_ones() % 2 == 1).count();
        assert_eq!(odd, 8);
        for w in 0..16u8 {
            assert_eq!(decode_422_bits(w).is_none(), w.count_ones() % 2 == 1);
        }
    }

    #[test]
    fn counts_post_selection() {
        let c = Counts::from_pairs(4, [("0110", 7), ("0100", 3), ("1111", 2)]).unwrap();
        let d = decode_counts_422(&c, [0, 1, 2, 3]).unwrap();
        assert_eq!(d.discarded, 3);
        assert_eq!(d.logical.get_str("11"), 7);
        assert_eq!(d.logical.get_str("00"), 2);
    }
}
