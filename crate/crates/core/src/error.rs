use thiserror::Error;

/// Errors produced by the symmetry, grid and canonicalization APIs.
#[derive(Clone, Debug, Eq, PartialEq, Error)]
pub enum Error {
    #[error("unsupported box size {0} (supported: 2 and 3)")]
    UnsupportedBoxSize(usize),
    #[error("box size mismatch: {left} vs {right}")]
    BoxMismatch { left: usize, right: usize },
    #[error("expected {expected} images, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("image {0} is out of range")]
    OutOfRange(usize),
    #[error("not a bijection: {0} appears more than once")]
    NotABijection(usize),
    #[error("not band-structured: band {band} maps onto {images:?}")]
    NotBandStructured { band: usize, images: Vec<usize> },
    #[error("bad grid length: expected {expected} cells, got {actual}")]
    BadLength { expected: usize, actual: usize },
    #[error("bad character {ch:?} at position {position}")]
    BadCharacter { ch: char, position: usize },
    #[error("malformed grid JSON: {0}")]
    BadJson(String),
    #[error("grid is not a valid Sudoku grid")]
    InvalidGrid,
    #[error("grid is not complete")]
    IncompleteGrid,
    #[error("expression error at position {position}: {message}")]
    Expr { position: usize, message: String },
    #[error("{0} requires box size 3")]
    NamedNeedsSudoku(&'static str),
    #[error("generator set is empty")]
    EmptyGenerators,
    #[error("row permutation {row} and column permutation {col} do not commute")]
    Prop1Violation { row: String, col: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
