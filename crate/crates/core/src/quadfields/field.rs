use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::ideal::ClassGroup;
use super::units::UnitGroup;

/// Largest `|d|` accepted for class group and unit computations.
pub const MAX_ABS_D: i64 = 10_000;

/// `a + b·ω` with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QFElement {
    pub a: BigRational,
    pub b: BigRational,
}

impl QFElement {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QFElement { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QFElement {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
        }
    }

    pub fn from_big(a: BigInt, b: BigInt) -> Self {
        QFElement {
            a: BigRational::from_integer(a),
            b: BigRational::from_integer(b),
        }
    }

    pub fn rational(q: BigRational) -> Self {
        QFElement { a: q, b: BigRational::zero() }
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Whether both coordinates are integers, i.e. the element lies in `O_K`.
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        QFElement {
            a: &self.a * q,
            b: &self.b * q,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        QFElement {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        QFElement {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
        }
    }

    pub fn neg(&self) -> Self {
        QFElement {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

/// The quadratic field `ℚ(√d)` with ring of integers `ℤ[ω]`.
#[derive(Debug)]
pub struct QuadField {
    d: i64,
    disc: i64,
    /// `Tr(ω)`, 0 or 1.
    tr: i64,
    /// `N(ω)`.
    nm: i64,
    class_group: OnceLock<std::result::Result<ClassGroup, Error>>,
    units: OnceLock<std::result::Result<UnitGroup, Error>>,
}

impl Clone for QuadField {
    fn clone(&self) -> Self {
        QuadField::new(self.d).expect("already validated")
    }
}

impl PartialEq for QuadField {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
    }
}

impl Eq for QuadField {}

fn is_squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::InvalidField(format!("d = {d} must be squarefree and different from 0 and 1")));
        }
        if d.unsigned_abs() > 1 << 40 {
            return Err(Error::BoundExceeded(format!("|d| = {} is too large", d.unsigned_abs())));
        }
        let (disc, tr, nm) = if d.rem_euclid(4) == 1 { (d, 1, (1 - d) / 4) } else { (4 * d, 0, -d) };
        Ok(QuadField {
            d,
            disc,
            tr,
            nm,
            class_group: OnceLock::new(),
            units: OnceLock::new(),
        })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn discriminant(&self) -> i64 {
        self.disc
    }

    pub fn is_real(&self) -> bool {
        self.d > 0
    }

    /// `Tr(ω)`.
    pub fn omega_trace(&self) -> i64 {
        self.tr
    }

    /// `N(ω)`.
    pub fn omega_norm(&self) -> i64 {
        self.nm
    }

    pub(crate) fn check_bound(&self) -> Result<()> {
        if self.d.abs() > MAX_ABS_D {
            return Err(Error::BoundExceeded(format!("|d| = {} exceeds {MAX_ABS_D}", self.d.abs())));
        }
        Ok(())
    }

    pub fn class_group(&self) -> Result<&ClassGroup> {
        self.class_group
            .get_or_init(|| ClassGroup::compute(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn unit_group(&self) -> Result<&UnitGroup> {
        self.units
            .get_or_init(|| UnitGroup::compute(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn omega(&self) -> QFElement {
        QFElement::from_ints(0, 1)
    }

    /// `√D` for the discriminant `D`, which is `2ω − Tr(ω)`.
    pub fn sqrt_disc(&self) -> QFElement {
        QFElement::from_ints(-self.tr, 2)
    }

    pub fn mul(&self, x: &QFElement, y: &QFElement) -> QFElement {
        let be = &x.b * &y.b;
        QFElement {
            a: &x.a * &y.a - &be * BigInt::from(self.nm),
            b: &x.a * &y.b + &x.b * &y.a + be * BigInt::from(self.tr),
        }
    }

    /// The Galois conjugate `σ(x)`; `σ(ω) = Tr(ω) − ω`.
    pub fn conj(&self, x: &QFElement) -> QFElement {
        QFElement {
            a: &x.a + &x.b * BigInt::from(self.tr),
            b: -&x.b,
        }
    }

    pub fn norm(&self, x: &QFElement) -> BigRational {
        &x.a * &x.a + &x.a * &x.b * BigInt::from(self.tr) + &x.b * &x.b * BigInt::from(self.nm)
    }

    pub fn trace(&self, x: &QFElement) -> BigRational {
        &x.a * BigInt::from(2) + &x.b * BigInt::from(self.tr)
    }

    pub fn inv(&self, x: &QFElement) -> Option<QFElement> {
        let n = self.norm(x);
        if n.is_zero() {
            return None;
        }
        Some(self.conj(x).scale(&n.recip()))
    }

    pub fn div(&self, x: &QFElement, y: &QFElement) -> Option<QFElement> {
        self.inv(y).map(|yi| self.mul(x, &yi))
    }

    pub fn pow(&self, x: &QFElement, e: i64) -> Option<QFElement> {
        let mut base = if e < 0 { self.inv(x)? } else { x.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = QFElement::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Some(acc)
    }

    /// Sign of `x` under the embedding with `√d > 0` (real fields only).
    pub fn sign(&self, x: &QFElement) -> Ordering {
        assert!(self.is_real(), "sign is defined for real fields");
        // x = (2a + b·tr)/2 + (b/2)·√D
        let r = &x.a * BigInt::from(2) + &x.b * BigInt::from(self.tr);
        let s = x.b.clone();
        let rs = r.cmp(&BigRational::zero());
        let ss = s.cmp(&BigRational::zero());
        if rs == ss || ss == Ordering::Equal {
            return rs;
        }
        if rs == Ordering::Equal {
            return ss;
        }
        // opposite signs: compare r² with s²·D
        let lhs = &r * &r;
        let rhs = &s * &s * BigInt::from(self.disc);
        match lhs.cmp(&rhs) {
            Ordering::Greater => rs,
            Ordering::Less => ss,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Compares `|x|` with `|y|` in the real embedding.
    pub fn cmp_abs(&self, x: &QFElement, y: &QFElement) -> Ordering {
        let ax = if self.sign(x) == Ordering::Less { x.neg() } else { x.clone() };
        let ay = if self.sign(y) == Ordering::Less { y.neg() } else { y.clone() };
        self.sign(&ax.sub(&ay))
    }

    pub fn describe(&self, x: &QFElement) -> String {
        let w = if self.tr == 0 { format!("√{}", self.d) } else { format!("(1+√{})/2", self.d) };
        match (x.a.is_zero(), x.b.is_zero()) {
            (_, true) => x.a.to_string(),
            (true, false) => format!("{}·{w}", x.b),
            _ => format!("{} + {}·{w}", x.a, x.b),
        }
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(√{})", self.d)
    }
}

pub(crate) fn isqrt_i64(n: i64) -> i64 {
    n.sqrt()
}

/// Trial-division factorization; `None` if a cofactor above `bound²` remains.
pub(crate) fn factor(n: &BigInt, bound: u64) -> Option<Vec<(u64, u32)>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= bound && BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n).is_multiple_of(&bp) {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        if BigInt::from(p) * BigInt::from(p) <= n {
            return None;
        }
        out.push((u64::try_from(&n).ok()?, 1));
        out.sort();
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rejects_bad_d() {
        for d in [0, 1, 4, -4, 12, 18] {
            assert!(QuadField::new(d).is_err(), "{d}");
        }
        assert_eq!(QuadField::new(-3).unwrap().discriminant(), -3);
        assert_eq!(QuadField::new(2).unwrap().discriminant(), 8);
        assert_eq!(QuadField::new(-1).unwrap().discriminant(), -4);
    }

    #[test]
    fn norm_is_multiplicative_and_conj_is_involution() {
        for d in [-7, -5, -1, 2, 5, 13, 15] {
            let k = QuadField::new(d).unwrap();
            let xs = [
                QFElement::new(q(1, 2), q(-3, 5)),
                QFElement::new(q(7, 1), q(2, 3)),
                QFElement::new(q(-4, 9), q(0, 1)),
                k.omega(),
            ];
            for x in &xs {
                assert_eq!(k.conj(&k.conj(x)), *x);
                for y in &xs {
                    assert_eq!(k.norm(&k.mul(x, y)), k.norm(x) * k.norm(y));
                    assert_eq!(k.conj(&k.mul(x, y)), k.mul(&k.conj(x), &k.conj(y)));
                    assert_eq!(k.conj(&x.add(y)), k.conj(x).add(&k.conj(y)));
                }
                assert_eq!(k.mul(x, &k.inv(x).unwrap()), QFElement::one());
            }
            let r = QFElement::rational(q(5, 7));
            assert_eq!(k.conj(&r), r);
            assert_eq!(k.mul(&k.sqrt_disc(), &k.sqrt_disc()), QFElement::from_ints(k.discriminant(), 0));
        }
    }

    #[test]
    fn real_sign() {
        let k = QuadField::new(2).unwrap();
        assert_eq!(k.sign(&QFElement::from_ints(-1, 1)), Ordering::Greater);
        assert_eq!(k.sign(&QFElement::from_ints(1, -1)), Ordering::Less);
        assert_eq!(k.sign(&QFElement::from_ints(-3, 2)), Ordering::Less);
        let k5 = QuadField::new(5).unwrap();
        // ω − 2 < 0 for ω = 1.618…
        assert_eq!(k5.sign(&QFElement::from_ints(-2, 1)), Ordering::Less);
        assert_eq!(k5.sign(&QFElement::from_ints(-1, 1)), Ordering::Greater);
    }

    #[test]
    fn trial_division() {
        assert_eq!(factor(&BigInt::from(360), 100).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor(&BigInt::from(1), 100).unwrap(), vec![]);
        assert_eq!(factor(&BigInt::from(101 * 103), 10), None);
    }
}
