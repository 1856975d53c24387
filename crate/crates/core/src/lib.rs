//! Core engines for one-sided quasi-normalizers.
//!
//! Two independent halves share this crate:
//!
//! * [`group`], [`stallings`] and [`engine`] work with inclusions `H <= G` of
//!   discrete groups: exact normal forms, subgroup membership, coset orbits,
//!   certificates `Hg ⊆ g_1H ∪ ... ∪ g_nH`, and the conditions that separate
//!   singular from Cartan behaviour.
//! * [`vn`] realizes finite-dimensional tracial algebras `B ⊆ N ⊆ M`, their
//!   conditional expectations, the basic construction `<M, e_B>` with its
//!   trace and pull-down map, module bases over `B`, and the numerical gap
//!   for the relative weak asymptotic homomorphism property.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod engine;
pub mod error;
pub mod group;
pub mod stallings;
pub mod vn;

pub use error::{EngineError, GroupError, VnError};
pub use group::{GroupDescriptor, GroupElement, Letter, SubgroupSpec, Truth, Word};
