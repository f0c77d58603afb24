use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::field::{factor, QFElement, QuadField};
use super::ideal::OKIdeal;
use super::units::{h1_units, UnitLog, UnitsH1};

/// Trial-division bound used when factoring ideal norms.
pub const FACTOR_BOUND: u64 = 1_000_000;

/// A principal `Γ`-invariant ideal `∏_{p∈S} P_p = (g)` and the class of
/// `σ ↦ g⁻¹·σ(g)` in `H¹(Γ, U_K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguousClass {
    pub primes: Vec<u64>,
    pub ideal: OKIdeal,
    pub generator: QFElement,
    pub cocycle: UnitLog,
    pub class: usize,
}

/// `P_K^Γ / α(P_ℚ)` as the principal products of ramified primes, matched
/// with `H¹(Γ, U_K)`.
#[derive(Clone, Debug)]
pub struct AmbiguousClasses {
    pub ramified: Vec<u64>,
    pub classes: Vec<AmbiguousClass>,
    /// Products of ramified primes that are not principal, with their ideal class.
    pub non_principal: Vec<(Vec<u64>, usize)>,
    pub h1: UnitsH1,
    /// Whether `classes` maps one to one onto the classes of `h1`.
    pub bijective: bool,
}

impl AmbiguousClasses {
    pub fn order(&self) -> usize {
        self.classes.len()
    }
}

impl QuadField {
    /// Rational primes dividing the discriminant, in increasing order.
    pub fn ramified_primes(&self) -> Vec<u64> {
        factor(&BigInt::from(self.discriminant()), FACTOR_BOUND)
            .expect("discriminants are small")
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    }

    /// `e_p`: 2 if `p` ramifies, 1 otherwise.
    pub fn ramification_index(&self, p: u64) -> u32 {
        if self.is_ramified(p) {
            2
        } else {
            1
        }
    }

    fn product_of_primes(&self, primes: &[u64]) -> OKIdeal {
        primes.iter().fold(self.unit_ideal(), |acc, &p| {
            self.ideal_mul(&acc, &self.prime_above(p).expect("ramified primes have a prime above"))
        })
    }
}

pub fn ambiguous_principal_classes(field: &QuadField) -> Result<AmbiguousClasses> {
    let h1 = h1_units(field)?;
    let class_group = field.class_group()?;
    let ramified = field.ramified_primes();
    let mut classes = Vec::new();
    let mut non_principal = Vec::new();
    for mask in 0u32..1 << ramified.len() {
        let primes: Vec<u64> = (0..ramified.len()).filter(|i| mask >> i & 1 == 1).map(|i| ramified[i]).collect();
        let ideal = field.product_of_primes(&primes);
        match field.principal_generator(&ideal) {
            Some(g) => {
                let u = field.div(&field.conj(&g), &g).expect("generator is nonzero");
                let cocycle = field
                    .unit_log(&u)?
                    .ok_or_else(|| Error::NotInvariant)?;
                let (class, _) = h1
                    .classify(cocycle)
                    .ok_or_else(|| Error::EquivarianceViolation("g⁻¹σ(g) is not a cocycle".into()))?;
                classes.push(AmbiguousClass {
                    primes,
                    ideal,
                    generator: g,
                    cocycle,
                    class,
                });
            }
            None => {
                let c = class_group.class_of(field, &ideal);
                non_principal.push((primes, c));
            }
        }
    }
    let hit: BTreeSet<usize> = classes.iter().map(|c| c.class).collect();
    let bijective = hit.len() == classes.len() && hit.len() == h1.len();
    Ok(AmbiguousClasses {
        ramified,
        classes,
        non_principal,
        h1,
        bijective,
    })
}

/// Factorization of an invariant ideal as `∏_p (∏_{P|p} P)^{β(p)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub beta: BTreeMap<u64, i64>,
    pub ramification: BTreeMap<u64, u32>,
    /// `e_p | β(p)` for every `p`, i.e. the ideal comes from `ℚ`.
    pub extended: bool,
    /// Whether multiplying the factors back gives the ideal.
    pub reassembles: bool,
}

pub fn invariant_ideal_decomposition(field: &QuadField, ideal: &OKIdeal) -> Result<Decomposition> {
    if !field.is_invariant(ideal) {
        return Err(Error::NotInvariant);
    }
    let norm = field.ideal_norm(ideal);
    let mut valuations: BTreeMap<u64, i64> = BTreeMap::new();
    for (part, sign) in [(norm.numer(), 1i64), (norm.denom(), -1i64)] {
        let f = factor(part, FACTOR_BOUND)
            .ok_or_else(|| Error::FactorBoundExceeded(format!("{part} has a factor beyond {FACTOR_BOUND}")))?;
        for (p, e) in f {
            *valuations.entry(p).or_insert(0) += sign * e as i64;
        }
    }
    let mut beta = BTreeMap::new();
    let mut ramification = BTreeMap::new();
    for (&p, &v) in &valuations {
        let e = field.ramification_index(p);
        let b = if e == 2 {
            v
        } else if v % 2 == 0 {
            v / 2
        } else {
            return Err(Error::NotInvariant);
        };
        beta.insert(p, b);
        ramification.insert(p, e);
    }
    let extended = beta.iter().all(|(p, b)| b % ramification[p] as i64 == 0);
    let rebuilt = beta.iter().fold(field.unit_ideal(), |acc, (&p, &b)| {
        let factor = if ramification[&p] == 2 {
            field.ideal_pow(&field.prime_above(p).expect("ramified"), b)
        } else {
            let pb = BigRational::from_integer(BigInt::from(p)).pow(b as i32);
            field.principal_ideal(&QFElement::rational(pb)).expect("nonzero")
        };
        field.ideal_mul(&acc, &factor)
    });
    Ok(Decomposition {
        beta,
        ramification,
        extended,
        reassembles: rebuilt == *ideal,
    })
}

/// Every integral `Γ`-invariant ideal of norm at most `max_norm`.
pub fn invariant_ideals(field: &QuadField, max_norm: u64) -> Vec<OKIdeal> {
    let (tr, nm) = (field.omega_trace(), field.omega_norm());
    let mut out = Vec::new();
    for a in 1..=max_norm as i64 {
        let candidates: Vec<i64> = if a % 2 == 1 {
            vec![(-tr * (a + 1) / 2).rem_euclid(a)]
        } else if tr == 0 {
            vec![0, a / 2]
        } else {
            vec![]
        };
        for b in candidates {
            if (b * b + b * tr + nm).rem_euclid(a) != 0 {
                continue;
            }
            let prim = OKIdeal {
                den: BigInt::one(),
                a: a.into(),
                b: b.into(),
                c: BigInt::one(),
            };
            let mut r = 1i64;
            while (r * r) as u64 * a as u64 <= max_norm {
                let scale = QFElement::from_ints(r, 0);
                let basis: Vec<QFElement> = field.zbasis(&prim).iter().map(|x| field.mul(x, &scale)).collect();
                out.push(field.ideal_from_zbasis(&basis).expect("scaled ideal"));
                r += 1;
            }
        }
    }
    out
}

/// The sequence `0 → ker α' → P_K^Γ/α(P_ℚ) → ∏_p ℤ/e_p` over `k = ℚ`.
#[derive(Clone, Debug)]
pub struct UnitsSequence {
    /// `(p, e_p)` for the requested primes.
    pub coordinates: Vec<(u64, u32)>,
    /// Order of `ker α'`, which is trivial because `ℚ` has class number one.
    pub kernel_order: usize,
    pub middle: AmbiguousClasses,
    /// Image of each middle element in `∏ℤ/e_p`.
    pub image: Vec<Vec<u32>>,
    /// Every `v ∈ ∏ℤ/e_p` with `∏ P_p^{v_p}` principal.
    pub principal_vectors: Vec<Vec<u32>>,
    pub exact: bool,
}

pub fn units_exact_sequence_report(field: &QuadField, primes: &[u64]) -> Result<UnitsSequence> {
    let mut primes: Vec<u64> = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    for p in field.ramified_primes() {
        if !primes.contains(&p) {
            return Err(Error::MissingRamifiedPrime(p));
        }
    }
    for &p in &primes {
        if factor(&BigInt::from(p), FACTOR_BOUND).is_none_or(|f| f != vec![(p, 1)]) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
    }
    let coordinates: Vec<(u64, u32)> = primes.iter().map(|&p| (p, field.ramification_index(p))).collect();
    let middle = ambiguous_principal_classes(field)?;
    let image: Vec<Vec<u32>> = middle
        .classes
        .iter()
        .map(|c| coordinates.iter().map(|(p, _)| u32::from(c.primes.contains(p))).collect())
        .collect();

    let mut principal_vectors = Vec::new();
    let total: usize = coordinates.iter().map(|&(_, e)| e as usize).product();
    for mut idx in 0..total {
        let mut v = Vec::with_capacity(coordinates.len());
        let mut chosen = Vec::new();
        for &(p, e) in &coordinates {
            let x = (idx % e as usize) as u32;
            idx /= e as usize;
            if x == 1 {
                chosen.push(p);
            }
            v.push(x);
        }
        if field.principal_generator(&field.product_of_primes(&chosen)).is_some() {
            principal_vectors.push(v);
        }
    }

    let image_set: BTreeSet<&Vec<u32>> = image.iter().collect();
    let principal_set: BTreeSet<&Vec<u32>> = principal_vectors.iter().collect();
    let exact = image_set.len() == image.len() && image_set == principal_set && image.len() == middle.h1.len();
    Ok(UnitsSequence {
        coordinates,
        kernel_order: 1,
        middle,
        image,
        principal_vectors,
        exact,
    })
}

/// Whether an ideal is `n·O_K` for a rational `n`, read off the canonical form.
pub fn is_extended_from_base(ideal: &OKIdeal) -> bool {
    !ideal.a.is_zero() && ideal.a == ideal.c && ideal.b.is_zero() && !ideal.c.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss() -> QuadField {
        QuadField::new(-1).unwrap()
    }

    #[test]
    fn gaussian_decompositions() {
        let k = gauss();
        let cases = [((1, 1), 2u64, 1i64, 2u32, false), ((3, 0), 3, 1, 1, true), ((5, 0), 5, 1, 1, true)];
        for ((a, b), p, beta, e, flag) in cases {
            let i = k.principal_ideal(&QFElement::from_ints(a, b)).unwrap();
            let dec = invariant_ideal_decomposition(&k, &i).unwrap();
            assert_eq!(dec.beta[&p], beta);
            assert_eq!(dec.ramification[&p], e);
            assert_eq!(dec.extended, flag);
            assert!(dec.reassembles);
        }
        let p5 = k.prime_above(5).unwrap();
        assert!(matches!(invariant_ideal_decomposition(&k, &p5), Err(Error::NotInvariant)));
    }

    #[test]
    fn ambiguous_examples() {
        let k = gauss();
        let r = ambiguous_principal_classes(&k).unwrap();
        assert_eq!(r.order(), 2);
        assert!(r.bijective);
        assert_eq!(r.classes[1].primes, vec![2]);

        let k = QuadField::new(-5).unwrap();
        let r = ambiguous_principal_classes(&k).unwrap();
        assert_eq!(r.order(), 2);
        assert_eq!(r.classes[1].primes, vec![5]);
        assert!(r.non_principal.iter().any(|(s, _)| s == &vec![2]));
        assert!(r.bijective);
    }

    #[test]
    fn sequence_examples() {
        let k = gauss();
        let s = units_exact_sequence_report(&k, &[2]).unwrap();
        assert!(s.exact);
        assert_eq!(s.image, vec![vec![0], vec![1]]);

        let k = QuadField::new(-5).unwrap();
        let s = units_exact_sequence_report(&k, &[2, 5, 7]).unwrap();
        assert!(s.exact);
        assert_eq!(s.coordinates, vec![(2, 2), (5, 2), (7, 1)]);
        assert_eq!(s.image, vec![vec![0, 0, 0], vec![0, 1, 0]]);
        assert!(matches!(units_exact_sequence_report(&k, &[5]), Err(Error::MissingRamifiedPrime(2))));
    }

    #[test]
    fn invariant_ideal_enumeration() {
        let k = QuadField::new(-5).unwrap();
        let all = invariant_ideals(&k, 100);
        for i in &all {
            assert!(k.is_invariant(i));
            let dec = invariant_ideal_decomposition(&k, i).unwrap();
            assert!(dec.reassembles);
            assert_eq!(dec.extended, is_extended_from_base(i));
        }
        // (1), P2, P5, P2P5 up to content: norms 1, 2, 5, 10 scaled by squares
        assert_eq!(all.iter().filter(|i| k.ideal_norm(i) == BigRational::from_integer(10.into())).count(), 1);
        assert_eq!(all.iter().filter(|i| k.ideal_norm(i) == BigRational::from_integer(4.into())).count(), 1);
    }
}
