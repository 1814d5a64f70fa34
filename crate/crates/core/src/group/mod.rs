//! Finite groups as complete multiplication tables, built from construction
//! recipes, plus the structural queries the rest of the crate needs.

pub mod analysis;
pub mod automorphism;
pub mod build;
pub mod spec;
pub mod table;

pub use automorphism::{automorphism_group, Automorphisms, DEFAULT_AUT_CAP};
pub use build::{
    build_group, build_group_with_cap, central_product, direct_product, Built, ExtraspecialFrame,
    FrameWord, KKind, DEFAULT_ORDER_CAP,
};
pub use spec::GroupSpec;
pub use table::FiniteGroup;
