//! Combinatorial descriptors of 4-manifolds fibering as surface bundles
//! over surfaces in several ways: section sums over labeled bipartite
//! graphs and their covering-map variants, enumeration of the distinct
//! fiberings with machine-checkable certificates, homological monodromy,
//! and exact bounds on how many fiberings an Euler characteristic allows.
//!
//! Everything is exact integer arithmetic; there is no floating point in
//! the crate. All types are immutable values after construction and every
//! operation is a pure function, so concurrent use needs no coordination.

pub mod bounds;
pub mod construction;
pub mod covers;
pub mod error;
pub mod fibering;
pub mod group;
pub mod matrix;
pub mod monodromy;
pub mod perm;
pub mod sampling;
pub mod surfaces;

pub use construction::{GraphOfGroupsSkeleton, LabeledGraph, SectionSumBundle};
pub use covers::{CoverHomology, CoveringMap, Letter};
pub use error::{Error, GraphViolation, Result};
pub use fibering::{
    Construction, CoverConstruction, DistinctnessCertificate, FiberingAssignment,
    FiberingDescriptor, FiberingKind,
};
pub use group::FiniteGroup;
pub use matrix::IntMat;
pub use monodromy::{H1Action, LagrangianSubspace, SymplecticSpace};
pub use perm::Perm;
pub use surfaces::{ClosedSurface, FreeActionData};
