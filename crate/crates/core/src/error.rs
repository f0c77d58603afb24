use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group closure exceeded {bound} elements")]
    ClosureBoundExceeded { bound: usize },
    #[error("enumeration of {what} needs {needed} candidates, bound is {bound}")]
    EnumerationBoundExceeded {
        what: &'static str,
        needed: u128,
        bound: u128,
    },
    #[error("homomorphisms do not share source and target")]
    MismatchedHoms,
    #[error("inconsistent action: {0}")]
    InconsistentAction(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("cocycles belong to different actions")]
    ActionMismatch,
    #[error("coefficient map is not equivariant: {0}")]
    EquivarianceViolation(String),
    #[error("subgroup is not stable under the action")]
    NotStable,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("coefficient group is not abelian")]
    NotAbelian,
    #[error("subgroup is not central")]
    NotCentral,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("ideal is not invariant under the Galois involution")]
    NotInvariant,
    #[error("factorization bound exceeded for {0}")]
    FactorBoundExceeded(String),
    #[error("ramified prime {0} missing from the prime list")]
    MissingRamifiedPrime(u64),
    #[error("field Q(sqrt({0})) is not one of the supported norm-Euclidean imaginary fields")]
    NonEuclideanField(i64),
    #[error("lattice is not of full rank")]
    NotFullRank,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no isomorphism found: {0}")]
    NoIsomorphismFound(String),
    #[error("sublattice is not closed under coordinatewise multiplication")]
    NotMultiplicativelyClosed,
    #[error("invalid field tower: {0}")]
    InvalidTower(String),
    #[error("tensor entry {0} does not lie in the base field")]
    NotDefinedOverBase(u32),
    #[error("reference lattice is not defined over the rationals")]
    NotDefinedOverRationals,
    #[error("undecided: no witness within search bound {0}")]
    Undecided(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
