//! Decide whether a finite group is *filled*: whether every locally maximal
//! product-free subset S covers the whole group in the sense G* ⊆ S ∪ SS.
//!
//! The crate provides:
//!
//! - construction recipes for the group families of interest (cyclic,
//!   dihedral, dicyclic, elementary abelian 2-groups, extraspecial 2-groups,
//!   and direct/central products), realized as multiplication tables;
//! - the product-free set algebra (products, inverses, square roots, local
//!   maximality, filling) over bitset element sets;
//! - randomized and exhaustive searches for non-filling locally maximal
//!   product-free sets, with automorphism-orbit symmetry breaking;
//! - a classifier combining a lookup for orders up to 32, structural
//!   shortcuts, normal-subgroup recursion, and search escalation;
//! - closed-form witness constructions for dihedral and extraspecial
//!   families, each re-verified before it is returned.

pub mod classifier;
pub mod error;
pub mod group;
pub mod pfs;
pub mod search;
pub mod witnesses;

pub use classifier::{classify_filled, known_filled_members, known_filled_table, ClassifierFlags};
pub use error::{ClassifierError, GroupError, ParseError, PfsError, SearchError, WitnessError};
pub use group::{build_group, build_group_with_cap, Built, FiniteGroup, GroupSpec};
pub use pfs::ElemSet;
pub use search::{
    exhaustive_filled_check, random_nonfilling_lmpfs, verify_witness, FilledStatus, SearchConfig,
    SearchStats, Verdict, WitnessReport,
};
pub use witnesses::{
    central_c4_witness, d44_witness, dihedral_witness, extraspecial_witness, CentralC4Witness,
    D44Witness, DihedralWitness, DihedralWitnessPlan, ExtraspecialWitness, WitnessFamily,
};
