use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quadfields::{QFElement, QuadField};
use crate::zlattice::{hnf, left_kernel};

use super::cocycle::{abs_norm, det_class, preserves, rational_basis, GroupTag, LatticeCocycle};
use super::lattice::{is_galois_stable, OKLattice};
use super::ring::{det, identity, inverse, is_rational_matrix, mat_conj, mat_mul, rational_matrix, transpose, KMatrix};
use super::search::{combine, is_unit, shell_search, twisted_fixed_lattice};

/// `L ∩ ℚⁿ` and whether `L = O_K·(L ∩ ℚⁿ)`.
#[derive(Clone, Debug)]
pub struct RationalPoints {
    pub stable: bool,
    pub defined: bool,
    /// A ℤ-basis of `L ∩ ℚⁿ` in Hermite form.
    pub rational_points: Vec<Vec<BigRational>>,
}

/// Computes `L ∩ ℚⁿ` exactly as the integer kernel of the `ω`-coordinates
/// of a ℤ-basis of `L`, then compares `O_K·(L ∩ ℚⁿ)` with `L`.
pub fn is_defined_over_k(l: &OKLattice) -> Result<RationalPoints> {
    let zb = l.zbasis();
    let den = zb
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.a.denom()).lcm(x.b.denom()));
    let dq = BigRational::from_integer(den.clone());
    let scaled = |q: &BigRational| (q * &dq).to_integer();
    let omega_part: Vec<Vec<BigInt>> = zb.iter().map(|v| v.iter().map(|x| scaled(&x.b)).collect()).collect();
    let kernel = left_kernel(&omega_part);
    let points: Vec<Vec<BigInt>> = kernel
        .iter()
        .map(|x| {
            (0..l.dim())
                .map(|j| x.iter().zip(&zb).map(|(c, v)| c * scaled(&v[j].a)).sum())
                .collect()
        })
        .collect();
    let rational_points: Vec<Vec<BigRational>> = hnf(points)
        .into_iter()
        .map(|r| r.into_iter().map(|x| BigRational::new(x, den.clone())).collect())
        .collect();
    let stable = is_galois_stable(l)?;
    let defined = stable && OKLattice::from_rational(l.field(), l.dim(), &rational_points)? == *l;
    Ok(RationalPoints {
        stable,
        defined,
        rational_points,
    })
}

/// Three-valued outcome of a bounded decision procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    /// No witness within the bound and no certificate of absence.
    Undecided { bound: u64 },
}

impl Decision {
    fn from_bool(b: bool) -> Decision {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Decision::Yes => "true",
            Decision::No => "false",
            Decision::Undecided { .. } => "undecided",
        }
    }
}

/// Membership of a cocycle class in the kernels of the maps induced by
/// `G_K^Λ ⊆ G_K` and `G_K^Λ ⊆ GL(Λ_K)`, and whether its lattice is defined
/// over `ℚ`.
#[derive(Clone, Debug)]
pub struct Predicates {
    /// Class is trivial in `H¹(Γ, G_K)`.
    pub in_v: Decision,
    /// Class is trivial in `H¹(Γ, GL(Λ_K))`.
    pub k_free: Decision,
    pub k_defined: Decision,
    /// `b ∈ G_K` with `a = b⁻¹·σ(b)`.
    pub in_v_witness: Option<KMatrix>,
    /// `b ∈ GL(Λ_K)` with `a = b⁻¹·σ(b)`.
    pub k_free_witness: Option<KMatrix>,
    /// A lattice whose cocycle is `a`.
    pub representative: OKLattice,
}

const SPLITTING_TRIES: i64 = 64;

/// `x ∈ GL_n(K)` with `x = a·σ(x)`, so that `a = x·σ(x)⁻¹`. Uses
/// `x = C + a·σ(C)` for a fixed sequence of matrices `C`.
pub fn hilbert90_splitting(field: &QuadField, a: &KMatrix) -> Result<KMatrix> {
    let n = a.len();
    let w = field.omega();
    for t in 0..SPLITTING_TRIES {
        let c: KMatrix = match t {
            0 => identity(n),
            1 => identity(n).into_iter().map(|r| r.iter().map(|e| field.mul(e, &w)).collect()).collect(),
            _ => (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let (i, j) = (i as i64, j as i64);
                            QFElement::from_ints((7 * i + 3 * j + t) % 5 - 2, (2 * i + 5 * j + 3 * t) % 7 - 3)
                        })
                        .collect()
                })
                .collect(),
        };
        let ac = mat_mul(field, a, &mat_conj(field, &c));
        let x: KMatrix = c.iter().zip(&ac).map(|(r, s)| r.iter().zip(s).map(|(p, q)| p.add(q)).collect()).collect();
        if !det(field, &x).is_zero() {
            return Ok(x);
        }
    }
    Err(Error::Unsupported("no splitting matrix found in the fixed candidate list".into()))
}

fn coboundary_of(field: &QuadField, b: &KMatrix) -> KMatrix {
    mat_mul(field, &inverse(field, b).expect("invertible"), &mat_conj(field, b))
}

/// `b ∈ G(K)` with `a = b⁻¹·σ(b)`: from `φ` when known, by Hilbert 90 for
/// `GL` and `SL`, and by bounded search over integral `b` for `O`.
fn split_in_group(c: &LatticeCocycle, bound: u64) -> Result<Option<KMatrix>> {
    let field = c.field();
    if let Some(phi) = &c.phi {
        return Ok(Some(inverse(field, &mat_conj(field, phi)).expect("invertible")));
    }
    match &c.tag {
        GroupTag::GL => Ok(Some(inverse(field, &hilbert90_splitting(field, &c.value)?).expect("invertible"))),
        GroupTag::SL => {
            let x = hilbert90_splitting(field, &c.value)?;
            let delta = det(field, &x);
            debug_assert!(delta.b.is_zero());
            let mut x1 = x;
            let s = delta.a.recip();
            for r in x1.iter_mut() {
                r[0] = r[0].scale(&s);
            }
            Ok(Some(inverse(field, &x1).expect("invertible")))
        }
        GroupTag::O(_) => {
            // σ(b) = b·a
            let basis = twisted_fixed_lattice(field, &identity(c.dim()), &c.value);
            let found = shell_search(basis.len(), bound, |v| {
                let b = combine(&basis, v);
                (!det(field, &b).is_zero() && c.tag.contains(field, &b)).then_some(b)
            })?;
            Ok(found.map(|(_, b)| b))
        }
    }
}

/// A Galois-stable lattice `L` with cocycle `a`: `φ⁻¹(Λ)` with `φ = σ(x)` for
/// a splitting `x` of `a` (or the recorded `φ`).
pub fn representative_lattice(c: &LatticeCocycle) -> Result<(OKLattice, KMatrix)> {
    let field = c.field();
    let phi = match &c.phi {
        Some(p) => p.clone(),
        None => mat_conj(field, &hilbert90_splitting(field, &c.value)?),
    };
    let l = c.lambda.apply(&inverse(field, &phi).expect("invertible"))?;
    Ok((l, phi))
}

pub fn classify_predicates(c: &LatticeCocycle, bound: u64) -> Result<Predicates> {
    let field = c.field();
    let in_v_witness = split_in_group(c, bound)?;
    if let Some(b) = &in_v_witness {
        if coboundary_of(field, b) != c.value || !c.tag.contains(field, b) {
            return Err(Error::InconsistentAction("splitting witness failed verification".into()));
        }
    }
    let in_v = match &in_v_witness {
        Some(_) => Decision::Yes,
        None => Decision::Undecided { bound },
    };
    let (representative, phi) = representative_lattice(c)?;
    let points = is_defined_over_k(&representative)?;
    let k_defined = Decision::from_bool(points.defined);
    // Over ℚ every ℤ-lattice is free, so a defined lattice gives a rational
    // φ' = B_Λ·R⁻¹ and b = σ(φ'·φ⁻¹) ∈ GL(Λ) splits a.
    let k_free_witness = if points.defined {
        let b_lambda = rational_basis(&c.lambda)?.ok_or(Error::NotDefinedOverRationals)?;
        let r = transpose(&rational_matrix(&points.rational_points));
        let phi2 = mat_mul(field, &b_lambda, &inverse(field, &r).ok_or(Error::NotFullRank)?);
        let h = mat_mul(field, &phi2, &inverse(field, &phi).expect("invertible"));
        let b = mat_conj(field, &h);
        if coboundary_of(field, &b) != c.value || !preserves(&c.lambda, &b)? || !is_unit(field, &det(field, &b)) {
            return Err(Error::InconsistentAction("rational structure gave an invalid witness".into()));
        }
        Some(b)
    } else {
        None
    };
    Ok(Predicates {
        in_v,
        k_free: Decision::from_bool(k_free_witness.is_some()),
        k_defined,
        in_v_witness,
        k_free_witness,
        representative,
    })
}

/// `g ∈ GL_n(ℚ)` with `g(l2) = l1`, searched as `g = B₁·U·B₂⁻¹` where `U`
/// ranges over the bounded part of `{U ∈ M_n(O_K) : g rational}` with
/// `det U` a unit.
pub fn find_rational_isomorphism(l1: &OKLattice, l2: &OKLattice, bound: u64) -> Result<Option<KMatrix>> {
    let field = l1.field();
    let (b1, b2) = (l1.basis_matrix()?, l2.basis_matrix()?);
    let b2i = inverse(field, &b2).ok_or(Error::NotFullRank)?;
    let p = mat_mul(field, &inverse(field, &mat_conj(field, &b1)).ok_or(Error::NotFullRank)?, &b1);
    let q = mat_mul(field, &b2i, &mat_conj(field, &b2));
    let basis = twisted_fixed_lattice(field, &p, &q);
    let found = shell_search(basis.len(), bound, |v| {
        let u = combine(&basis, v);
        is_unit(field, &det(field, &u)).then(|| mat_mul(field, &mat_mul(field, &b1, &u), &b2i))
    })?;
    Ok(found.map(|(_, g)| g))
}

/// `c ∈ GL(Λ)` with `a₂ = c⁻¹·a₁·σ(c)`, searched as `c = B_Λ·C·B_Λ⁻¹` over the
/// bounded part of the solution lattice of `σ(c) = a₁⁻¹·c·a₂`.
pub fn find_cohomology_witness(a1: &LatticeCocycle, a2: &LatticeCocycle, bound: u64) -> Result<Option<KMatrix>> {
    let field = a1.field();
    if a1.lambda != a2.lambda {
        return Err(Error::ActionMismatch);
    }
    let bl = rational_basis(&a1.lambda)?.ok_or(Error::NotDefinedOverRationals)?;
    let bli = inverse(field, &bl).expect("basis");
    // B_Λ is rational, so σ(C) = (B⁻¹·a₁⁻¹·B)·C·(B⁻¹·a₂·B)
    let a1i = inverse(field, &a1.value).expect("invertible");
    let p = mat_mul(field, &mat_mul(field, &bli, &a1i), &bl);
    let q = mat_mul(field, &mat_mul(field, &bli, &a2.value), &bl);
    let basis = twisted_fixed_lattice(field, &p, &q);
    let found = shell_search(basis.len(), bound, |v| {
        let u = combine(&basis, v);
        is_unit(field, &det(field, &u)).then(|| mat_mul(field, &mat_mul(field, &bl, &u), &bli))
    })?;
    Ok(found.map(|(_, c)| c))
}

/// `g = φ₁⁻¹·σ(c)·φ₂`, the rational isomorphism `l2 → l1` carried by a
/// cohomology witness.
pub fn isomorphism_from_witness(a1: &LatticeCocycle, a2: &LatticeCocycle, c: &KMatrix) -> Option<KMatrix> {
    let field = a1.field();
    let (p1, p2) = (a1.phi.as_ref()?, a2.phi.as_ref()?);
    let g = mat_mul(field, &mat_mul(field, &inverse(field, p1)?, &mat_conj(field, c)), p2);
    is_rational_matrix(&g).then_some(g)
}

/// `c = σ(φ₁)·g·σ(φ₂)⁻¹`, the cohomology witness carried by `g(l2) = l1`.
pub fn witness_from_isomorphism(a1: &LatticeCocycle, a2: &LatticeCocycle, g: &KMatrix) -> Option<KMatrix> {
    let field = a1.field();
    let (p1, p2) = (a1.phi.as_ref()?, a2.phi.as_ref()?);
    Some(mat_mul(field, &mat_mul(field, &mat_conj(field, p1), g), &inverse(field, &mat_conj(field, p2))?))
}

/// Invariants of a Galois-stable lattice under `GL_n(ℚ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInvariants {
    pub defined: bool,
    /// `[L : O_K·(L ∩ ℚⁿ)]`.
    pub index: BigRational,
    /// Class of `det(a)` in `H¹(Γ, U_K)` for the cocycle against `O_Kⁿ`.
    pub det_class: usize,
}

pub fn lattice_invariants(l: &OKLattice) -> Result<LatticeInvariants> {
    let field = l.field();
    let points = is_defined_over_k(l)?;
    let inner = OKLattice::from_rational(field, l.dim(), &points.rational_points)?;
    let ratio = field
        .div(&det(field, &inner.basis_matrix()?), &det(field, &l.basis_matrix()?))
        .ok_or(Error::NotFullRank)?;
    let lambda = OKLattice::standard(field, l.dim())?;
    let c = super::cocycle::cocycle_from_lattice(&lambda, l, GroupTag::GL, 0)?;
    Ok(LatticeInvariants {
        defined: points.defined,
        index: abs_norm(field, &ratio),
        det_class: det_class(&c)?.class,
    })
}
