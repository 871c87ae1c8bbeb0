use thiserror::Error;

/// Errors produced by the automata and linear-algebra routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid measurement family: {0}")]
    Measurement(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),

    #[error("unknown state {0:?}")]
    UnknownState(String),

    #[error("alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch { left: String, right: String },

    #[error("malformed machine: {0}")]
    Malformed(String),

    #[error("no unitary supplied for window {0:?}")]
    MissingWindow(String),

    #[error(
        "classical part is not reversible: states {first:?} and {second:?} both move to {target:?} on {symbol:?}"
    )]
    NotReversible {
        first: String,
        second: String,
        symbol: char,
        target: String,
    },

    #[error("no certified multiplier set for p = {p}, epsilon = {epsilon} (best certificate {best})")]
    SearchExhausted { p: u64, epsilon: f64, best: f64 },

    #[error("cannot parse machine document: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;
