use thiserror::Error;

/// Errors reported by the simulation and algebra layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A reference noise system needs at least one noise-bit.
    #[error("bit count must be at least 1")]
    InvalidBitCount,

    /// A rail was addressed outside the configured noise-bit range.
    #[error("bit index {bit_index} out of range 1..={m}")]
    BitIndexOutOfRange { bit_index: u32, m: u32 },

    /// Operands of a position-wise operation have different lengths.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A number does not fit in the requested bit width.
    #[error("number {n} does not fit in {m} bits")]
    NumberOutOfRange { n: u64, m: usize },

    /// Symbolic expansion would produce more terms than the configured cap.
    #[error("expansion of {required} candidate terms exceeds cap {cap}")]
    ExpansionCapExceeded { required: u128, cap: usize },

    /// A serialized product string or state could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
