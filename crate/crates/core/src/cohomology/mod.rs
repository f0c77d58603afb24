//! First (nonabelian) and second (abelian) cohomology of finite groups.
//!
//! A cocycle is a map `α: Γ → A` with `α(hg) = α(h)·α(g)^h`; two cocycles are
//! equivalent when `α(g) = a⁻¹·β(g)·a^g` for some `a ∈ A`. Cocycles are stored
//! as full value tables indexed by the actor's element indices, and every
//! equivalence the module reports carries the element `a` that witnesses it.

mod cocycle;
mod h2;
mod maps;
mod sequences;

pub use cocycle::{cohomologous, enumerate_h1, Classification, Cocycle, H1Set, DEFAULT_H1_BOUND};
pub use h2::{central_connecting, h2_abelian, CentralConnecting, H2Group, TwoCocycle, DEFAULT_H2_BOUND};
pub use maps::{genus_kernel, induced_map, CoefficientMap, ElemMap, GenusKernel, InducedMap, LocalMap};
pub use sequences::{classifier_orbits, connecting_invariants, ClassifierOrbits, ConnectingMap};
