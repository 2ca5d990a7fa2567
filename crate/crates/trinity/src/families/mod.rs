//! Digraph families with prescribed sandpile groups.
//!
//! Each builder in this module produces a [`FamilyInstance`]: a connected
//! Eulerian multidigraph together with a rotation system embedding it in the
//! sphere with every face directed, and the abelian group its construction is
//! designed to realise.  The families cover:
//!
//! * cyclic groups, via fat dipoles ([`build_cyclic_dipole`]);
//! * direct sums `⊕ᵢ Z/(m·aᵢ)` with `m, aᵢ ≥ 2`, via chains of bundles
//!   ([`build_composites`]);
//! * `Z/pⁿ ⊕ ⊕ᵢ Z/(p·aᵢ)` for prime `p`, via local rewirings of the chain
//!   ([`build_primes`]);
//! * `Z/t ⊕ Z/t` for `t = ab + ac + bc + 1`, via a three-legged star
//!   ([`build_abc`]);
//! * `Z/(3m+1) ⊕ Z/(3m+1)` and `Z/(6m+5) ⊕ Z/(6m+5)`, via two fixed-shape
//!   hub graphs ([`build_hub_triangle`], [`build_hub_pentagon`]).
//!
//! [`plan_group`] searches this toolbox for a given finite abelian group and
//! reports a buildable recipe, a proof of impossibility, or an honest
//! "unknown".  [`build_reduction_fixture`] produces pinned matrix pairs whose
//! Smith normal forms must agree; they encode the row–column cancellations
//! the chain constructions rely on.

mod abc;
mod bundle;
mod composites;
mod figures;
mod fixtures;
mod planner;
mod primes;

pub use abc::build_abc;
pub use composites::build_composites;
pub use figures::{build_cyclic_dipole, build_hub_pentagon, build_hub_triangle};
pub use fixtures::{build_reduction_fixture, PinnedReduction, ReductionFixture};
pub use planner::{plan_group, represent_abc, Plan, PlanVerdict, Recipe};
pub use primes::build_primes;

use crate::digraph::{DigraphError, MultiDigraph};
use crate::surface::{EmbeddedDigraph, SurfaceError};
use crate::zlinalg::{AbelianGroup, GroupError, MatrixError};
use std::error::Error;
use std::fmt;

/// Errors produced by family builders and the planner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    /// A builder parameter is outside the family's domain.
    InvalidParameter {
        name: &'static str,
        value: String,
        requirement: &'static str,
    },
    /// The prime-power family needs a prime modulus.
    NotPrime(u64),
    /// The requested number of extra `Z/p` summands exceeds what the
    /// rewiring slots of the given chain can host.
    LevelOutOfRange { requested: usize, maximum: usize },
    /// The planner only handles finite groups.
    InfiniteGroup,
    /// The planner only handles nontrivial groups.
    TrivialGroup,
    /// A built instance does not have the group its recipe promised.
    PlanVerificationFailed { expected: String, built: String },
    /// An underlying digraph operation failed.
    Digraph(DigraphError),
    /// An underlying embedding operation failed.
    Surface(SurfaceError),
    /// An underlying matrix operation failed.
    Matrix(MatrixError),
    /// An underlying group computation failed.
    Group(GroupError),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::InvalidParameter { name, value, requirement } => {
                write!(f, "parameter {name} = {value} is invalid: {requirement}")
            }
            FamilyError::NotPrime(p) => write!(f, "{p} is not prime"),
            FamilyError::LevelOutOfRange { requested, maximum } => write!(
                f,
                "{requested} extra prime summands requested but the chain supports at most {maximum}"
            ),
            FamilyError::InfiniteGroup => {
                write!(f, "the group has positive free rank; only finite groups are supported")
            }
            FamilyError::TrivialGroup => write!(f, "the trivial group needs no construction"),
            FamilyError::PlanVerificationFailed { expected, built } => {
                write!(f, "planned construction realises {built} instead of {expected}")
            }
            FamilyError::Digraph(e) => write!(f, "digraph error: {e}"),
            FamilyError::Surface(e) => write!(f, "embedding error: {e}"),
            FamilyError::Matrix(e) => write!(f, "matrix error: {e}"),
            FamilyError::Group(e) => write!(f, "group error: {e}"),
        }
    }
}

impl Error for FamilyError {}

impl From<DigraphError> for FamilyError {
    fn from(e: DigraphError) -> Self {
        FamilyError::Digraph(e)
    }
}

impl From<SurfaceError> for FamilyError {
    fn from(e: SurfaceError) -> Self {
        FamilyError::Surface(e)
    }
}

impl From<MatrixError> for FamilyError {
    fn from(e: MatrixError) -> Self {
        FamilyError::Matrix(e)
    }
}

impl From<GroupError> for FamilyError {
    fn from(e: GroupError) -> Self {
        FamilyError::Group(e)
    }
}

/// A built family member: an embedded digraph plus the group the
/// construction is designed to realise.
///
/// The sink vertex (the one the sandpile computation removes) is always the
/// last declared vertex of the digraph.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    name: String,
    embedding: EmbeddedDigraph,
    expected_group: AbelianGroup,
}

impl FamilyInstance {
    pub(crate) fn new(
        name: String,
        embedding: EmbeddedDigraph,
        expected_group: AbelianGroup,
    ) -> Self {
        FamilyInstance { name, embedding, expected_group }
    }

    /// Human-readable description of the instance, e.g. `"composites m=2 a=[2, 3]"`.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The digraph together with its spherical rotation system.
    pub fn embedding(&self) -> &EmbeddedDigraph {
        &self.embedding
    }

    /// The underlying multidigraph.
    pub fn digraph(&self) -> &MultiDigraph {
        self.embedding.digraph()
    }

    /// The group this construction is designed to realise.
    pub fn expected_group(&self) -> &AbelianGroup {
        &self.expected_group
    }

    /// Recomputes the sandpile group and checks it against the design target.
    pub fn check(&self) -> Result<(), FamilyError> {
        let built = self.digraph().sandpile_group()?;
        if built == self.expected_group {
            Ok(())
        } else {
            Err(FamilyError::PlanVerificationFailed {
                expected: self.expected_group.to_string(),
                built: built.to_string(),
            })
        }
    }
}
