//! Galois-stable `O_K`-lattices in `Kⁿ` for a quadratic field `K` with
//! `Γ = Gal(K/ℚ) = {1, σ}`, and the cocycles `a_σ = σ(φ)·φ⁻¹` they define.
//!
//! Canonical forms need a Euclidean `O_K`, so rank above one is limited to
//! `d ∈ {−1, −2, −3, −7, −11}`. A cocycle is the single matrix `a = a_σ`,
//! with `a·σ(a) = 1`; `a` and `a'` are cohomologous when `a' = c⁻¹·a·σ(c)`.
//!
//! Heights: bounded searches enumerate integer coefficient vectors with
//! entries in `[-B, B]`, either over an LLL-reduced basis of a solution
//! lattice or, for orthogonal transports, over the integral-basis
//! coordinates of the matrix entries.

mod cocycle;
mod lattice;
mod predicates;
mod ring;
mod search;

pub use cocycle::{
    cocycle_from_lattice, det_class, det_class_product, diagonal, preserves, DetClass, GroupTag, LatticeCocycle,
};
pub use lattice::{is_galois_stable, OKLattice};
pub use predicates::{
    classify_predicates, find_cohomology_witness, find_rational_isomorphism, hilbert90_splitting,
    is_defined_over_k, isomorphism_from_witness, lattice_invariants, representative_lattice,
    witness_from_isomorphism, Decision, LatticeInvariants, Predicates, RationalPoints,
};
pub use ring::{
    det, describe_matrix, direct_sum, height, identity, inverse, is_euclidean, is_rational_matrix, mat_conj,
    mat_mul, KMatrix, EUCLIDEAN_D,
};
