//! Cluster groups of mutation-Dynkin type A.
//!
//! The crate builds the cluster group presentation of a quiver, realises
//! type-A cluster groups as Young subgroups of symmetric groups through the
//! braid graph of a polygon triangulation, and checks the lattice and
//! parabolic-subgroup statements about them by exhaustive computation.

pub mod braid;
pub mod error;
pub mod groups;
pub mod presentation;
pub mod quiver;
pub mod theorems;
pub mod triangulation;

pub use braid::BraidGraph;
pub use error::{Error, Result};
pub use groups::{GeneratorImages, Permutation, SetPartition, Word, YoungSubgroup};
pub use presentation::{CosetTable, Presentation};
pub use quiver::{MutationTypeA, Quiver};
pub use theorems::{Caps, VerificationReport};
pub use triangulation::{Diagonal, MultiTriangulation, Triangulation};
