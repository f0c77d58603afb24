//! Finite groups, homomorphisms, and actions by automorphisms.
//!
//! # Conventions
//!
//! Permutations compose as functions: `g·h` applies `h` first, then `g`, so
//! the natural action of a permutation group on points is a left action.
//!
//! An action of `Γ` on a group `A` is written exponentially, `a ↦ a^γ`, and
//! satisfies `(a^γ)^δ = a^(δγ)`. With this convention the cocycle identity
//! `α(hg) = α(h)·α(g)^h` and the coboundaries `a⁻¹·a^g` are consistent, which
//! is what [`crate::cohomology`] relies on. Every composition-order choice in
//! the crate follows this paragraph.

mod action;
mod finite;
mod hom;
mod orbits;
mod perm;

use std::borrow::Cow;

pub use action::GroupAction;
pub use finite::{FiniteGroup, Subgroup, DEFAULT_CLOSURE_BOUND};
pub use hom::{all_homs, conjugacy_merge, GroupHom, DEFAULT_HOM_BOUND};
pub use orbits::{orbits_and_stabilizer, SetAction};
pub use perm::Perm;

/// An element of a finite group, as an opaque code. For [`FiniteGroup`] it is
/// the element's index; matrix groups use an encoding of the entries.
pub type Elem = u32;

/// A finite group with enumerable elements.
pub trait Group: Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> Elem;
    fn mul(&self, a: Elem, b: Elem) -> Elem;
    fn inv(&self, a: Elem) -> Elem;
    /// Exclusive upper bound on element codes.
    fn code_bound(&self) -> u64;
    /// All elements in increasing code order.
    fn elements(&self) -> Cow<'_, [Elem]>;
    /// Human-readable rendering used in reports.
    fn describe(&self, a: Elem) -> String;
}

/// An action of the finite group [`Action::actor`] on [`Action::coefficient`]
/// by automorphisms, following the left-action convention of this module.
pub trait Action: Sync {
    type Coefficient: Group;
    fn actor(&self) -> &FiniteGroup;
    fn coefficient(&self) -> &Self::Coefficient;
    /// `a^γ`.
    fn act(&self, gamma: Elem, a: Elem) -> Elem;
}
