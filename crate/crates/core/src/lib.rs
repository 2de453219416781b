//! Intersection graphs of finite groups.
//!
//! The vertices of `Γ(G)` are the proper non-trivial subgroups of a finite
//! group `G`, with an edge whenever two subgroups meet beyond the identity.
//! This crate builds groups concretely (tables, permutations, presentations),
//! enumerates subgroup lattices, computes the vertex connectivity `κ(G)` of
//! `Γ(G)`, and checks the classification of groups with small connectivity
//! against those computations.

pub mod arith;
pub mod bitset;
pub mod catalog;
pub mod classify;
pub mod error;
pub mod graph;
pub mod group;
pub mod lattice;
pub mod limits;
pub mod presentation;

pub use bitset::BitSet;
pub use classify::{audit, ClassificationReport};
pub use error::{Error, Result};
pub use graph::{GroupAnalysis, IntersectionGraph, Kappa};
pub use group::{Element, FiniteGroup, Permutation};
pub use lattice::{all_subgroups, Subgroup, SubgroupLattice};
pub use limits::Limits;
