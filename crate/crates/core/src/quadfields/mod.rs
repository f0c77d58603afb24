//! Quadratic fields `ℚ(√d)`: exact arithmetic, ideals, class groups, units,
//! and the cohomology of the unit group under `Gal(K/ℚ)`.
//!
//! Elements are `a + b·ω` with rational `a`, `b`, where `ω = √d` for
//! `d ≡ 2, 3 (mod 4)` and `ω = (1 + √d)/2` for `d ≡ 1 (mod 4)`. Ideal classes
//! come from reduction of ideals `[a, (b + √D)/2]`, each step tracking its
//! multiplier, so principal ideals are reported with a generator.

mod ambiguous;
mod field;
mod forms;
mod ideal;
mod units;

pub use ambiguous::{
    ambiguous_principal_classes, invariant_ideal_decomposition, invariant_ideals, is_extended_from_base,
    units_exact_sequence_report, AmbiguousClass, AmbiguousClasses, Decomposition, UnitsSequence, FACTOR_BOUND,
};
pub use field::{QFElement, QuadField, MAX_ABS_D};
pub use forms::reduced_forms_class_number;
pub use ideal::{ClassGroup, OKIdeal};
pub use units::{h1_units, UnitGroup, UnitLog, UnitsH1};
