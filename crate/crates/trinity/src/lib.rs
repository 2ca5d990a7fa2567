//! Sandpile groups of connected Eulerian digraphs, spherical latin bitrades,
//! and the face-coloured triangulation constructions that connect them.
//!
//! The crate is organized bottom-up:
//!
//! * [`zlinalg`] — exact integer matrices, Smith normal form with unimodular
//!   transforms, finitely generated abelian groups in canonical form.
//! * [`digraph`] — multidigraphs with arc identities, Laplacians, sandpile
//!   groups, and the connectivity audit used to screen construction inputs.
//! * [`latin`] — partial latin squares, latin bitrades, separation and
//!   connectedness, canonical groups, group embeddings, and exhaustive
//!   enumeration of small spherical bitrades.
//! * [`surface`] — rotation-system embeddings, face tracing, the spherical
//!   embedding search, and the two directions of the bitrade ↔ embedded
//!   digraph correspondence.
//! * [`families`] — explicitly embedded digraph families realizing prescribed
//!   sandpile groups, reduction fixtures, and the planner that picks a
//!   construction for a requested group.

pub mod digraph;
pub mod families;
pub mod latin;
pub mod surface;
pub mod zlinalg;
