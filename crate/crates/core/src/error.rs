use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid arc ratio {num}/{den}: must lie strictly between 0 and 1")]
    InvalidArc { num: u128, den: u128 },

    #[error("invalid length: {0}")]
    InvalidLength(String),

    #[error("genus must be at least {min}, got {genus}")]
    GenusTooSmall { genus: usize, min: usize },

    #[error("torsion profile of genus {genus} needs {expected} entries, got {got}")]
    ProfileLength { genus: usize, expected: usize, got: usize },

    #[error("torsion entry m_{index} = 1 is not allowed")]
    TorsionOne { index: usize },

    #[error("truncation height {h} outside 1..={genus}")]
    TruncateRange { h: usize, genus: usize },

    #[error("tableau grid is empty")]
    EmptyGrid,

    #[error("tableau rows have unequal lengths (row {row} has {got} entries, expected {expected})")]
    Ragged { row: usize, got: usize, expected: usize },

    #[error("entry {value} at ({x}, {y}) outside 1..={genus}")]
    EntryRange {
        x: usize,
        y: usize,
        value: u32,
        genus: usize,
    },

    #[error("entries not strictly increasing at ({x}, {y})")]
    NotIncreasing { x: usize, y: usize },

    #[error("genus mismatch: tableau has genus {tableau}, profile has genus {profile}")]
    GenusMismatch { tableau: usize, profile: usize },

    #[error("requested {rows}x{cols} restriction of a {max_rows}x{max_cols} tableau")]
    RestrictRange {
        rows: usize,
        cols: usize,
        max_rows: usize,
        max_cols: usize,
    },

    #[error("operation needs a two-column tableau, got {cols} columns")]
    NotTwoColumns { cols: usize },

    #[error("shape needs at least {min} columns, got {cols}")]
    TooFewColumns { cols: usize, min: usize },

    #[error("shape needs at least {min} rows, got {rows}")]
    TooFewRows { rows: usize, min: usize },

    #[error("rank must be at least 1, got {0}")]
    RankTooSmall(i64),

    #[error("degenerate {rows}x{cols} shape has no tableau representation")]
    DegenerateShape { rows: usize, cols: usize },

    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },

    #[error("tableau is not valid for the given profile")]
    InvalidTableau,

    #[error("staircase with {rows} rows does not fit genus {genus}")]
    StaircaseShape { rows: usize, genus: usize },

    #[error("invalid sweep configuration: {0}")]
    Config(String),

    #[error("{field}: {message}")]
    Document { field: String, message: String },

    #[error("internal error: {0}")]
    Internal(String),
}
