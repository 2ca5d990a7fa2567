//! Digraphs embedded in orientable surfaces.
//!
//! An embedding is a rotation system: a cyclic order of arc ends around each
//! vertex. Tracing faces through the rotation recovers the surface genus.
//! The module also handles the two-way traffic between embedded digraphs and
//! properly two-colored triangulations of tripartite graphs: a spherical,
//! directed embedding unfolds into a triangulation (and, when simple, a
//! latin bitrade), and a triangulation folds back into one digraph per
//! vertex class.

use std::fmt;

use crate::digraph::{ArcId, DigraphError};
use crate::latin::LatinError;

mod embedding;
mod search;
mod triangulation;

pub use embedding::{Dart, Dir, EmbeddedDigraph, End, FaceReport};
pub use search::{find_spherical_rotation, DEFAULT_MAX_SEARCH_ARCS};
pub use triangulation::{
    bitrade_from_embedding, triangulation_from_bitrade, tutte_digraph, Triangulation,
};

/// Errors from embedding validation, face tracing, rotation search, and
/// triangulation conversions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    /// A rotation entry names a vertex the digraph does not have.
    UnknownVertex(String),
    /// A rotation entry names an arc the digraph does not have.
    UnknownArc { vertex: String, arc: ArcId },
    /// An arc end is listed at a vertex that is not its endpoint for that
    /// direction.
    MisplacedEnd { vertex: String, arc: ArcId, dir: Dir },
    /// An arc end appears in more than one rotation slot.
    DuplicateEnd { arc: ArcId, dir: Dir },
    /// An arc end appears in no rotation slot.
    MissingEnd { arc: ArcId, dir: Dir },
    /// The operation needs a connected digraph.
    NotConnected,
    /// The embedding is not on the sphere.
    NonSpherical { genus: i64 },
    /// Some face mixes forward and backward darts.
    NotAllDirected,
    /// The digraph exceeds the rotation-search budget.
    SearchBudgetExceeded { arcs: usize, max_arcs: usize },
    /// A triangle's coordinates stray outside the declared classes.
    TriangleOutsideClasses { triangle: [String; 3] },
    /// White and black halves have different sizes.
    HalvesUnequal { white: usize, black: usize },
    /// A declared class label appears in no triangle.
    UnusedClassLabel { label: String },
    /// A cross-class label pair lies in one color but not the other.
    PairUnmatched { labels: (String, String) },
    /// A cross-class label pair lies in two triangles of one color.
    PairAmbiguous { labels: (String, String) },
    /// The faces around a vertex do not close into a single wheel.
    CornerNotAWheel { label: String },
    /// A class index outside 0..3.
    ClassOutOfRange { index: usize },
    Digraph(DigraphError),
    Latin(LatinError),
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::UnknownVertex(l) => write!(f, "rotation names unknown vertex {l:?}"),
            SurfaceError::UnknownArc { vertex, arc } => {
                write!(f, "rotation at {vertex:?} names unknown arc {arc}")
            }
            SurfaceError::MisplacedEnd { vertex, arc, dir } => {
                write!(f, "end ({arc}, {dir}) does not belong at vertex {vertex:?}")
            }
            SurfaceError::DuplicateEnd { arc, dir } => {
                write!(f, "end ({arc}, {dir}) appears more than once")
            }
            SurfaceError::MissingEnd { arc, dir } => {
                write!(f, "end ({arc}, {dir}) appears in no rotation")
            }
            SurfaceError::NotConnected => write!(f, "digraph is not connected"),
            SurfaceError::NonSpherical { genus } => {
                write!(f, "embedding has genus {genus}, expected 0")
            }
            SurfaceError::NotAllDirected => {
                write!(f, "some face mixes forward and backward darts")
            }
            SurfaceError::SearchBudgetExceeded { arcs, max_arcs } => {
                write!(f, "rotation search over {arcs} arcs exceeds the budget of {max_arcs}")
            }
            SurfaceError::TriangleOutsideClasses { triangle } => {
                write!(f, "triangle {triangle:?} has a coordinate outside its class")
            }
            SurfaceError::HalvesUnequal { white, black } => {
                write!(f, "{white} white vs {black} black triangles")
            }
            SurfaceError::UnusedClassLabel { label } => {
                write!(f, "class label {label:?} appears in no triangle")
            }
            SurfaceError::PairUnmatched { labels } => {
                write!(f, "pair ({:?}, {:?}) is not matched across the two colors", labels.0, labels.1)
            }
            SurfaceError::PairAmbiguous { labels } => {
                write!(f, "pair ({:?}, {:?}) lies in two triangles of one color", labels.0, labels.1)
            }
            SurfaceError::CornerNotAWheel { label } => {
                write!(f, "faces around {label:?} do not form a single wheel")
            }
            SurfaceError::ClassOutOfRange { index } => {
                write!(f, "class index {index} is not 0, 1, or 2")
            }
            SurfaceError::Digraph(e) => write!(f, "digraph error: {e}"),
            SurfaceError::Latin(e) => write!(f, "latin error: {e}"),
        }
    }
}

impl std::error::Error for SurfaceError {}

impl From<DigraphError> for SurfaceError {
    fn from(e: DigraphError) -> Self {
        SurfaceError::Digraph(e)
    }
}

impl From<LatinError> for SurfaceError {
    fn from(e: LatinError) -> Self {
        SurfaceError::Latin(e)
    }
}
