use thiserror::Error;

/// Errors surfaced by cube primitives, constructions, and file parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {n} out of range (need 1 <= n <= 63)")]
    DimensionOutOfRange { n: u32 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: u32, got: u32 },

    #[error("value 0x{bits:x} does not fit in {n} bits")]
    BitsOutOfRange { bits: u64, n: u32 },

    #[error("coordinate {coord} out of range for dimension {n}")]
    CoordOutOfRange { coord: u32, n: u32 },

    #[error("edge base 0x{base:x} has its free coordinate {coord} set (not canonical)")]
    NotCanonical { base: u64, coord: u32 },

    #[error("fixed bits 0x{fixed:x} overlap star mask 0x{stars:x}")]
    FixedOverlapsStars { fixed: u64, stars: u64 },

    #[error("vertices differ in {count} coordinates, not exactly one")]
    NotAdjacent { count: u32 },

    #[error("bin sizes sum to {sum}, expected {expected}")]
    BadBinSizes { sum: u32, expected: u32 },

    #[error("bin index {bin} out of range ({bins} bins)")]
    BinOutOfRange { bin: u32, bins: u32 },

    #[error("glue takes at most one edge part, got {count}")]
    MultipleEdgeParts { count: u32 },

    #[error("edges {first} and {second} share vertex {vertex} (not a matching)")]
    NotAMatching {
        first: String,
        second: String,
        vertex: String,
    },

    #[error("strategy fails coverage at k={k}: subcube {witness} contains no edge")]
    CoverageFailed { k: u32, witness: String },

    #[error("vertex {vertex} has the wrong parity for this partition")]
    WrongParity { vertex: String },

    #[error("pool strategies do not cover all edges: {witness} is missing")]
    PoolsDoNotCoverEdges { witness: String },

    #[error("partition misses cell {cell} on subcube {witness} at dimension {dimension}")]
    HitPropertyFailed {
        witness: String,
        cell: u32,
        dimension: u32,
    },

    #[error("rotation scheme mismatch: {reason}")]
    BadRotationScheme { reason: String },

    #[error("k={k} out of range for dimension {n}")]
    BlockDimensionOutOfRange { k: u32, n: u32 },

    #[error("would materialize about {estimated} edges (limit {limit})")]
    TooLargeToMaterialize { estimated: u128, limit: u64 },

    #[error("search budget exceeded: {reason}")]
    BudgetExceeded { reason: String },

    #[error("parse error: {reason}")]
    Parse { reason: String },

    #[error("illegal move: {reason}")]
    IllegalMove { reason: String },

    #[error("board is full")]
    BoardFull,
}

pub type Result<T> = std::result::Result<T, Error>;
