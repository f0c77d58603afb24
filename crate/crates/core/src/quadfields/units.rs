use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::cohomology::{enumerate_h1, H1Set, DEFAULT_H1_BOUND};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupAction};

use super::field::{isqrt_i64, QFElement, QuadField};

/// Cap on continued-fraction steps when searching for the fundamental unit.
const MAX_CF_STEPS: usize = 1_000_000;

/// `U_K = μ_w × ε^ℤ`, with `ε` present only for real fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroup {
    pub torsion_order: u32,
    /// A generator `ζ` of the roots of unity.
    pub torsion_generator: QFElement,
    /// The fundamental unit `ε > 1`.
    pub fundamental: Option<QFElement>,
    pub fundamental_norm: Option<i32>,
    /// Continued-fraction steps taken to find `ε`.
    pub cf_steps: usize,
}

/// A unit written as `ζ^torsion · ε^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitLog {
    pub torsion: u32,
    pub exp: i64,
}

impl UnitLog {
    pub const ONE: UnitLog = UnitLog { torsion: 0, exp: 0 };
}

fn floor_quadratic(p: i64, q: i64, s: i64) -> i64 {
    // ⌊(p + √d)/q⌋ with s = ⌊√d⌋ and d not a square
    if q > 0 {
        Integer::div_floor(&(p + s), &q)
    } else {
        -Integer::div_floor(&(p + s), &-q) - 1
    }
}

impl UnitGroup {
    pub(crate) fn compute(field: &QuadField) -> Result<UnitGroup> {
        field.check_bound()?;
        let d = field.d();
        if d < 0 {
            let (w, z) = match d {
                -1 => (4, field.omega()),
                -3 => (6, field.omega()),
                _ => (2, QFElement::from_ints(-1, 0)),
            };
            return Ok(UnitGroup {
                torsion_order: w,
                torsion_generator: z,
                fundamental: None,
                fundamental_norm: None,
                cf_steps: 0,
            });
        }
        // continued fraction of ω = (P + √d)/Q
        let s = isqrt_i64(d);
        let (mut p, mut q) = if field.omega_trace() == 1 { (1i64, 2i64) } else { (0, 1) };
        let (mut h1, mut h2) = (BigInt::one(), BigInt::from(0));
        let (mut k1, mut k2) = (BigInt::from(0), BigInt::one());
        for step in 0..MAX_CF_STEPS {
            let a = floor_quadratic(p, q, s);
            let h = &h1 * a + &h2;
            let k = &k1 * a + &k2;
            let small = QFElement::from_big(h.clone(), -k.clone());
            let n = field.norm(&small);
            if n.abs().is_one() {
                let eps = field.conj(&small);
                debug_assert_eq!(field.sign(&eps.sub(&QFElement::one())), Ordering::Greater);
                return Ok(UnitGroup {
                    torsion_order: 2,
                    torsion_generator: QFElement::from_ints(-1, 0),
                    fundamental: Some(eps),
                    fundamental_norm: Some(if n.is_positive() { 1 } else { -1 }),
                    cf_steps: step + 1,
                });
            }
            (h2, h1) = (h1, h);
            (k2, k1) = (k1, k);
            p = a * q - p;
            q = (d - p * p) / q;
        }
        Err(Error::BoundExceeded(format!(
            "no fundamental unit within {MAX_CF_STEPS} continued-fraction steps"
        )))
    }

    pub fn is_real(&self) -> bool {
        self.fundamental.is_some()
    }
}

impl QuadField {
    pub fn unit_from_log(&self, l: UnitLog) -> Result<QFElement> {
        let u = self.unit_group()?;
        let z = self.pow(&u.torsion_generator, l.torsion as i64).expect("unit");
        Ok(match &u.fundamental {
            Some(eps) => self.mul(&z, &self.pow(eps, l.exp).expect("unit")),
            None => z,
        })
    }

    /// Writes a unit as `ζ^t·ε^k`; `None` if `x` is not a unit.
    pub fn unit_log(&self, x: &QFElement) -> Result<Option<UnitLog>> {
        let u = self.unit_group()?;
        if !x.is_integral() || !self.norm(x).abs().is_one() {
            return Ok(None);
        }
        let Some(eps) = &u.fundamental else {
            let mut z = QFElement::one();
            for t in 0..u.torsion_order {
                if z == *x {
                    return Ok(Some(UnitLog { torsion: t, exp: 0 }));
                }
                z = self.mul(&z, &u.torsion_generator);
            }
            return Ok(None);
        };
        let (mut v, torsion) = if self.sign(x) == Ordering::Less { (x.neg(), 1) } else { (x.clone(), 0) };
        let eps_inv = self.inv(eps).expect("unit");
        let one = QFElement::one();
        let mut exp = 0i64;
        loop {
            match self.cmp_abs(&v, &one) {
                Ordering::Equal => break,
                Ordering::Greater => {
                    v = self.mul(&v, &eps_inv);
                    exp += 1;
                }
                Ordering::Less => {
                    v = self.mul(&v, eps);
                    exp -= 1;
                }
            }
        }
        Ok((v == one).then_some(UnitLog { torsion, exp }))
    }

    /// `σ` in logarithmic coordinates.
    pub fn conj_log(&self, l: UnitLog) -> Result<UnitLog> {
        let u = self.unit_group()?;
        let w = u.torsion_order;
        Ok(match u.fundamental_norm {
            None => UnitLog {
                torsion: (w - l.torsion % w) % w,
                exp: 0,
            },
            Some(n) => {
                let flip = if n == -1 { l.exp.rem_euclid(2) as u32 } else { 0 };
                UnitLog {
                    torsion: (l.torsion + flip) % 2,
                    exp: -l.exp,
                }
            }
        })
    }
}

/// `H¹(Γ, U_K)` for `Γ = Gal(K/ℚ)`, described by the value `α(σ)` of a
/// representative cocycle per class. Real fields are handled in the
/// coordinates `(−1)^s·ε^k`, which is exact although `U_K` is infinite.
#[derive(Clone, Debug)]
pub struct UnitsH1 {
    torsion_order: u32,
    fundamental_norm: Option<i32>,
    reps: Vec<UnitLog>,
    /// For imaginary fields, the same set computed by cocycle enumeration on `μ_w`.
    pub enumerated: Option<H1Set>,
}

impl UnitsH1 {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn base_point(&self) -> usize {
        0
    }

    pub fn representative(&self, class: usize) -> UnitLog {
        self.reps[class]
    }

    /// Whether `u = α(σ)` defines a cocycle, i.e. `u·σ(u) = 1`.
    pub fn is_cocycle(&self, u: UnitLog) -> bool {
        match self.fundamental_norm {
            Some(-1) => u.exp % 2 == 0,
            _ => true,
        }
    }

    /// Class of the cocycle with `α(σ) = u`, and `a` with `u = a⁻¹·rep·σ(a)`.
    pub fn classify(&self, u: UnitLog) -> Option<(usize, UnitLog)> {
        if !self.is_cocycle(u) {
            return None;
        }
        let w = self.torsion_order as i64;
        Some(match self.fundamental_norm {
            None => {
                let k = u.torsion as i64;
                let k0 = k % 2;
                let j = ((k0 - k) / 2).rem_euclid(w);
                (k0 as usize, UnitLog { torsion: j as u32, exp: 0 })
            }
            Some(1) => {
                let k0 = u.exp.rem_euclid(2);
                let class = u.torsion as usize + 2 * k0 as usize;
                (class, UnitLog { torsion: 0, exp: (k0 - u.exp) / 2 })
            }
            Some(_) => {
                let m = u.exp / 2;
                let s0 = (u.torsion as i64 + m).rem_euclid(2);
                (s0 as usize, UnitLog { torsion: 0, exp: -m })
            }
        })
    }
}

impl UnitsH1 {
    /// Class of the product of representatives of `x` and `y`.
    pub fn mul_classes(&self, field: &QuadField, x: usize, y: usize) -> Result<usize> {
        let p = field.mul(&field.unit_from_log(self.reps[x])?, &field.unit_from_log(self.reps[y])?);
        let l = field.unit_log(&p)?.expect("product of units");
        Ok(self.classify(l).expect("product of cocycles").0)
    }
}

pub fn h1_units(field: &QuadField) -> Result<UnitsH1> {
    let u = field.unit_group()?;
    let w = u.torsion_order;
    let (reps, enumerated) = match u.fundamental_norm {
        None => {
            let mu = FiniteGroup::cyclic(w as usize);
            let gen = mu.element(mu.generators()[0]).clone();
            let action = GroupAction::from_generator_images(FiniteGroup::cyclic(2), mu, &[vec![gen.inverse()]])?;
            let h1 = enumerate_h1(&action, DEFAULT_H1_BOUND)?;
            (vec![UnitLog::ONE, UnitLog { torsion: 1, exp: 0 }], Some(h1))
        }
        Some(1) => (
            vec![
                UnitLog::ONE,
                UnitLog { torsion: 1, exp: 0 },
                UnitLog { torsion: 0, exp: 1 },
                UnitLog { torsion: 1, exp: 1 },
            ],
            None,
        ),
        Some(_) => (vec![UnitLog::ONE, UnitLog { torsion: 1, exp: 0 }], None),
    };
    if let Some(h1) = &enumerated {
        if h1.len() != reps.len() {
            return Err(Error::EquivarianceViolation(format!(
                "enumeration on μ_{w} found {} classes, expected {}",
                h1.len(),
                reps.len()
            )));
        }
    }
    Ok(UnitsH1 {
        torsion_order: w,
        fundamental_norm: u.fundamental_norm,
        reps,
        enumerated,
    })
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    #[test]
    fn torsion() {
        assert_eq!(QuadField::new(-1).unwrap().unit_group().unwrap().torsion_order, 4);
        assert_eq!(QuadField::new(-3).unwrap().unit_group().unwrap().torsion_order, 6);
        assert_eq!(QuadField::new(-7).unwrap().unit_group().unwrap().torsion_order, 2);
    }

    #[test]
    fn fundamental_units() {
        let cases = [(2, (1, 1), -1), (3, (2, 1), 1), (5, (0, 1), -1), (7, (8, 3), 1), (13, (1, 1), -1), (46, (24335, 3588), 1)];
        for (d, (a, b), n) in cases {
            let k = QuadField::new(d).unwrap();
            let u = k.unit_group().unwrap();
            assert_eq!(u.fundamental, Some(QFElement::from_ints(a, b)), "d = {d}");
            assert_eq!(u.fundamental_norm, Some(n));
        }
    }

    /// No unit `x + yω` with `0 < y < q` where `ε = p + qω`.
    #[test]
    fn fundamental_unit_is_minimal() {
        for d in (2..=50).filter(|&d| QuadField::new(d).is_ok()) {
            let k = QuadField::new(d).unwrap();
            let eps = k.unit_group().unwrap().fundamental.clone().unwrap();
            let q: i64 = eps.b.to_integer().try_into().unwrap();
            let (tr, nm) = (k.omega_trace(), k.omega_norm());
            for y in 1..q {
                for t in [-1i64, 1] {
                    // x² + tr·y·x + nm·y² − t = 0
                    let disc = (tr * y).pow(2) - 4 * (nm * y * y - t);
                    if disc >= 0 {
                        let r = isqrt_i64(disc);
                        assert!(r * r != disc || (-tr * y + r) % 2 != 0, "d = {d}, y = {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn logs_round_trip() {
        for d in [-3, -1, -5, 2, 3, 6, 13] {
            let k = QuadField::new(d).unwrap();
            for l in [UnitLog::ONE, UnitLog { torsion: 1, exp: 3 }, UnitLog { torsion: 0, exp: -2 }] {
                let l = if d < 0 { UnitLog { exp: 0, ..l } } else { l };
                let x = k.unit_from_log(l).unwrap();
                assert_eq!(k.unit_log(&x).unwrap(), Some(l));
                let c = k.conj(&x);
                assert_eq!(k.unit_log(&c).unwrap(), Some(k.conj_log(l).unwrap()));
            }
            assert_eq!(k.unit_log(&QFElement::from_ints(2, 0)).unwrap(), None);
        }
    }

    #[test]
    fn h1_of_units() {
        for (d, n) in [(-1, 2), (-3, 2), (-5, 2), (2, 2), (3, 4), (5, 2), (6, 4)] {
            let k = QuadField::new(d).unwrap();
            let h = h1_units(&k).unwrap();
            assert_eq!(h.len(), n, "d = {d}");
            for c in 0..h.len() {
                assert_eq!(h.classify(h.representative(c)).unwrap().0, c);
            }
        }
    }

    #[test]
    fn classification_witnesses() {
        for d in [-3, -1, 2, 3, 7] {
            let k = QuadField::new(d).unwrap();
            let h = h1_units(&k).unwrap();
            let range: Vec<i64> = if d < 0 { vec![0] } else { (-3..=3).collect() };
            for t in 0..k.unit_group().unwrap().torsion_order {
                for &e in &range {
                    let u = UnitLog { torsion: t, exp: e };
                    let Some((class, a)) = h.classify(u) else { continue };
                    let ue = k.unit_from_log(u).unwrap();
                    assert_eq!(k.norm(&ue).abs(), BigRational::one());
                    let ae = k.unit_from_log(a).unwrap();
                    let rep = k.unit_from_log(h.representative(class)).unwrap();
                    let twisted = k.mul(&k.mul(&k.inv(&ae).unwrap(), &rep), &k.conj(&ae));
                    assert_eq!(twisted, ue, "d = {d}, u = {u:?}");
                }
            }
        }
    }
}
