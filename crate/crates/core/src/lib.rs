//! Exact block-transposition and prefix-transposition distances on
//! permutations, the generating sets of the distance balls `B_k` around the
//! identity, and the bases of those balls as permutation classes.
//!
//! Permutations use 1-based one-line notation throughout; see [`Permutation`].

pub mod basis;
pub mod distance;
pub mod enumerate;
pub mod genset;
pub mod error;
pub mod inflation;
pub mod model;
pub mod pattern;
pub mod perm;
pub mod permset;

pub use distance::{ball, distance, pairwise_distance, DistanceEngine, DistanceTable};
pub use enumerate::{enumerate_plus_irreducible, plus_irreducible_count, Limits};
pub use error::{Error, Result};
pub use inflation::{mi_member, mi_members, monotone_inflate, InflationVector};
pub use model::{apply_transposition, neighbors, Model, TranspositionIndices};
pub use pattern::{
    breakpoint_count, contains_pattern, is_plus_irreducible, one_point_deletions, reduce, strips,
    Strip,
};
pub use perm::{permutations, Permutation};
pub use permset::PermSet;
pub use genset::{
    generating_set, generating_set_constructive, generating_set_direct, mi_plus_one,
    mi_union_member, ptd_inflate, ptd_parent, td_inflate, GeneratingSetReport, IndexMultiset,
    Method, PtdCase,
};
pub use basis::{basis, basis_via_poset_descent, verify_class_closure, BasisReport, Probe};
