//! Finite-instance machinery for coding graphs into groups: the structured
//! groups `G_Γ × C₂^I`, their complete inverse systems
//! as first-order structures, GF(2) vertex-width algebra, a formula language
//! over those systems, and exhaustive verifiers for the finite lemmas that
//! hold in them.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, timing and the
//! command-line driver live in the companion `cdm` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod automorphism;
pub mod bounding;
pub mod codec;
mod error;
pub mod gf2;
pub mod group;
pub mod groups;
pub mod lemmas;
pub mod logic;
pub mod subgroups;
pub mod system;
pub mod width;

pub use codec::Graph;
pub use error::{Error, Result};
pub use group::{FiniteGroup, Hom, TableGroup};
pub use groups::{DpElement, Params, StructuredElement, StructuredGroup, WElement};
pub use subgroups::{IsoTag, NormalSubgroup, QuotientGroup};
pub use system::{Subsystem, System, SystemElement};
