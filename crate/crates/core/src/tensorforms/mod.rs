//! Forms of tensor families over finite fields.
//!
//! `K = F_{q^m}` over `k = F_q` has cyclic Galois group generated by
//! Frobenius, and `GL_n(K)` is finite, so the correspondence between
//! `k`-forms of a family and `H¹(Γ, Stab(fam))` can be checked by listing
//! both sides.

mod field;
mod forms;
mod matrix;
mod tensor;

pub use field::{GaloisFieldTower, MAX_FIELD_ORDER};
pub use forms::{
    classify_forms, hilbert90_check, quadratic_form_oracle, FormBucket, FormClassification, FormOrbit, Hilbert90,
    QuadraticFormTable,
};
pub use matrix::{Entries, FrobeniusAction, MatrixGroupK, DEFAULT_MATRIX_BOUND, MAX_DIM};
pub use tensor::{act_on_family, fixes_family, stabilizer_of_family, Tensor, TensorFamily};
