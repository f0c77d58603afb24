//! Exact computation of first Galois cohomology sets of finite groups, and the
//! classifications of lattices, tensor forms, ideals and étale algebras that
//! they parametrize.
//!
//! Every group in this crate is finite and fully enumerated (or, for the unit
//! groups of real quadratic fields, finitely presented), so every bijection the
//! library claims can be verified element by element.
//!
//! Module map:
//! - [`groups`]: permutation groups, homomorphisms, actions by automorphisms.
//! - [`cohomology`]: cocycles, `H¹` class sets, induced maps, exact sequences, `H²`.
//! - [`tensorforms`]: finite-field towers, matrix groups with Frobenius, forms.
//! - [`quadfields`]: quadratic fields, ideals, class groups, units.
//! - [`lattices`]: Galois-stable lattices over norm-Euclidean imaginary fields.
//! - [`etale`]: étale algebras as forms of `kⁿ`.

pub mod cohomology;
pub mod error;
pub mod etale;
pub mod groups;
pub mod lattices;
pub mod par;
pub mod quadfields;
pub mod tensorforms;

mod zlattice;

pub use error::{Error, Result};
