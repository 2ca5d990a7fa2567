//! Exact linear algebra over the integers.
//!
//! Everything here runs on arbitrary-precision integers: the matrices we
//! reduce come from Laplacians and relation systems whose intermediate
//! entries routinely overflow machine words once parameters grow.

mod group;
mod matrix;
mod snf;

pub use group::{group_from_cyclic_orders, groups_isomorphic, AbelianGroup, GroupError};
pub use matrix::{IntMatrix, MatrixError};
pub use snf::{cokernel, snf, snf_diagonal, SnfResult};
