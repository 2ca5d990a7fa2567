//! Partial latin squares, latin bitrades, and their canonical groups.
//!
//! A partial latin square is a set of `(row, column, symbol)` triples in
//! which any two distinct triples agree in at most one coordinate.  A latin
//! bitrade is an ordered pair of such squares occupying the same cells,
//! disagreeing in every cell, and using the same symbols line by line; it
//! records the difference of two latin squares.
//!
//! The module computes the combinatorial invariants of a bitrade (line
//! permutations, separation, connectedness, genus), the canonical group of
//! either half, main-class transformations, embeddings of a half into a
//! finite abelian group, and an exhaustive enumeration of spherical bitrades
//! up to relabeling.

mod bitrade;
mod embed;
mod enumerate;
mod square;

pub use bitrade::{validate_bitrade, LatinBitrade, SeparationReport};
pub use embed::{embed_search, Embedding};
pub use enumerate::{enumerate_spherical_bitrades, EnumerationOptions, EnumerationSummary};
pub use square::{
    apply_main_class, canonical_group, GroupPresentation, PartialLatinSquare, RelabelMaps, Role,
    Triple,
};

use std::error::Error;
use std::fmt;

use crate::zlinalg::MatrixError;

/// Errors raised by latin-square and bitrade operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatinError {
    /// An operation that needs at least one triple received an empty square.
    EmptySquare,
    /// Two triples agree in two or more coordinates. Boxed to keep the
    /// error (and every enum wrapping it) small on the `Result` fast path.
    LatinViolation(Box<Triple>, Box<Triple>),
    /// A cell is occupied in exactly one half of a would-be bitrade.
    CellMismatch { row: String, col: String },
    /// Both halves place the same symbol in the same cell.
    CellNotDisjoint { row: String, col: String, sym: String },
    /// A row uses different symbol sets in the two halves.
    RowSymbolMismatch { row: String },
    /// A column uses different symbol sets in the two halves.
    ColSymbolMismatch { col: String },
    /// The bitrade splits into more than one component.
    NotConnected,
    /// Some line permutation has more than one cycle.
    NotSeparated,
    /// The three roles of a main-class map do not form a permutation.
    RolesNotAPermutation,
    /// A relabeling map lacks an entry for a used label.
    RelabelMissing { role: Role, label: String },
    /// A relabeling map sends two labels to the same image.
    RelabelNotInjective { role: Role, label: String },
    /// The target of an embedding has positive free rank.
    InfiniteEmbeddingTarget,
    /// The requested enumeration size exceeds the configured cap.
    EnumerationBoundExceeded { requested: usize, cap: usize },
    /// An underlying matrix computation failed.
    Matrix(MatrixError),
}

impl fmt::Display for LatinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatinError::EmptySquare => write!(f, "partial latin square has no triples"),
            LatinError::LatinViolation(a, b) => {
                write!(f, "triples {a} and {b} agree in more than one coordinate")
            }
            LatinError::CellMismatch { row, col } => {
                write!(f, "cell ({row}, {col}) is occupied in only one half")
            }
            LatinError::CellNotDisjoint { row, col, sym } => {
                write!(f, "cell ({row}, {col}) holds {sym} in both halves")
            }
            LatinError::RowSymbolMismatch { row } => {
                write!(f, "row {row} uses different symbol sets in the two halves")
            }
            LatinError::ColSymbolMismatch { col } => {
                write!(f, "column {col} uses different symbol sets in the two halves")
            }
            LatinError::NotConnected => write!(f, "bitrade is not connected"),
            LatinError::NotSeparated => write!(f, "bitrade is not separated"),
            LatinError::RolesNotAPermutation => {
                write!(f, "role list must mention row, column, and symbol exactly once")
            }
            LatinError::RelabelMissing { role, label } => {
                write!(f, "relabeling for {role:?} has no entry for {label}")
            }
            LatinError::RelabelNotInjective { role, label } => {
                write!(f, "relabeling for {role:?} maps two labels to {label}")
            }
            LatinError::InfiniteEmbeddingTarget => {
                write!(f, "embedding target must be a finite group")
            }
            LatinError::EnumerationBoundExceeded { requested, cap } => {
                write!(f, "enumeration size {requested} exceeds the configured cap {cap}")
            }
            LatinError::Matrix(e) => write!(f, "matrix computation failed: {e}"),
        }
    }
}

impl Error for LatinError {}

impl From<MatrixError> for LatinError {
    fn from(e: MatrixError) -> Self {
        LatinError::Matrix(e)
    }
}
