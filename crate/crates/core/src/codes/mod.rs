//! Repetition layouts, their encoding circuits and decoders.

pub mod code422;
mod decode;
mod experiment;
mod layout;

pub use decode::{
    decode_counts, decode_distribution, decode_shot, Decoded, DecodedCounts, DecodedDistribution, ReadoutBlock,
};
pub use experiment::{encoded_shots, logical_error_experiment, ExperimentOutcome};
pub use layout::{build_encoding_circuit, EncodingLayout, LayoutKind, QubitAssignment, RootPosition};
