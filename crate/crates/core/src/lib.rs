//! The symmetry group of the Sudoku grid.
//!
//! Geometric symmetries are band-structured row permutations, the matching
//! column permutations, and transposition; together they form a group of
//! order `2·6⁸ = 3,359,232` for 9×9 grids. Digit relabelings commute with all
//! of them. On top of the group algebra this crate provides grid I/O,
//! canonical forms, equivalence testing, stabilizers, and an exhaustive 4×4
//! census used as a brute-force cross-check.

pub mod audit;
pub mod canonical;
pub mod census;
mod error;
pub mod expr;
pub mod grid;
mod par;
pub mod perm;
pub mod symmetry;

pub use canonical::{
    are_equivalent, canonicalize, stabilizer, CanonicalForm, Mode, StabilizerReport,
};
pub use error::{Error, Result};
pub use expr::parse_expr;
pub use grid::{DigitPermutation, Grid, GridFormat};
pub use par::default_workers;
pub use perm::{BandPermutation, BoxSize};
pub use symmetry::{GridSymmetry, NamedSymmetry, SymmetryClass};
