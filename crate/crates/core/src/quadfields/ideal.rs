use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::field::{isqrt_i64, QFElement, QuadField};

/// A nonzero fractional ideal `(1/den)·(a·ℤ + (b + c·ω)·ℤ)` in canonical form:
/// `den > 0`, `c > 0`, `c | a`, `c | b`, `0 ≤ b < a` and `gcd(den, c) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OKIdeal {
    pub den: BigInt,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

/// Hermite form of the ℤ-span of integer vectors `u + v·ω`: `(a, b, c)` with
/// basis `a`, `b + c·ω`, or `None` if the span is not of full rank.
fn hnf2(vectors: &[(BigInt, BigInt)]) -> Option<(BigInt, BigInt, BigInt)> {
    let mut a = BigInt::zero();
    let mut w: Option<(BigInt, BigInt)> = None;
    for (u, v) in vectors {
        if v.is_zero() {
            a = a.gcd(u);
            continue;
        }
        match w.take() {
            None => {
                w = Some(if v.is_negative() { (-u, -v) } else { (u.clone(), v.clone()) });
            }
            Some((wu, wv)) => {
                let e = wv.extended_gcd(v);
                let g = e.gcd.clone();
                let nu = &e.x * &wu + &e.y * u;
                let (xq, wq) = (v / &g, &wv / &g);
                let zero_u = &xq * &wu - &wq * u;
                a = a.gcd(&zero_u);
                w = Some(if g.is_negative() { (-nu, -g) } else { (nu, g) });
            }
        }
    }
    let (wu, c) = w?;
    if a.is_zero() {
        return None;
    }
    let b = wu.mod_floor(&a);
    Some((a, b, c))
}

fn lcm_den(q: &[&BigRational]) -> BigInt {
    q.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// A primitive integral ideal `[a, (b + √D)/2]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Prim {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadField {
    /// The ideal with the given ℤ-basis, after checking `O_K`-stability.
    pub fn ideal_from_zbasis(&self, basis: &[QFElement]) -> Result<OKIdeal> {
        let all: Vec<&BigRational> = basis.iter().flat_map(|x| [&x.a, &x.b]).collect();
        let l = lcm_den(&all);
        let lq = BigRational::from_integer(l.clone());
        let vecs: Vec<(BigInt, BigInt)> = basis
            .iter()
            .map(|x| ((&x.a * &lq).to_integer(), (&x.b * &lq).to_integer()))
            .collect();
        let (a, b, c) = hnf2(&vecs).ok_or_else(|| Error::NotAnIdeal("the module is not of full rank".into()))?;
        if !(&a).is_multiple_of(&c) || !(&b).is_multiple_of(&c) {
            return Err(Error::NotAnIdeal("the module is not stable under ω".into()));
        }
        let ideal = Self::canonical(l, a, b, c);
        let omega = self.omega();
        for x in basis {
            if !self.contains(&ideal, &self.mul(x, &omega)) {
                return Err(Error::NotAnIdeal("the module is not stable under ω".into()));
            }
        }
        Ok(ideal)
    }

    fn canonical(den: BigInt, a: BigInt, b: BigInt, c: BigInt) -> OKIdeal {
        let (ap, bp) = (&a / &c, &b / &c);
        let g = den.gcd(&c);
        let (den, c) = (den / &g, c / &g);
        OKIdeal {
            a: ap * &c,
            b: bp * &c,
            c,
            den,
        }
    }

    /// The ideal generated over `O_K` by the given elements.
    pub fn ideal(&self, gens: &[QFElement]) -> Result<OKIdeal> {
        let omega = self.omega();
        let basis: Vec<QFElement> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .flat_map(|g| [g.clone(), self.mul(g, &omega)])
            .collect();
        if basis.is_empty() {
            return Err(Error::NotAnIdeal("the zero ideal is not invertible".into()));
        }
        self.ideal_from_zbasis(&basis)
    }

    pub fn principal_ideal(&self, g: &QFElement) -> Result<OKIdeal> {
        self.ideal(std::slice::from_ref(g))
    }

    pub fn unit_ideal(&self) -> OKIdeal {
        OKIdeal {
            den: BigInt::one(),
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::one(),
        }
    }

    /// The ℤ-basis `a/den`, `(b + c·ω)/den`.
    pub fn zbasis(&self, i: &OKIdeal) -> [QFElement; 2] {
        let d = BigRational::from_integer(i.den.clone()).recip();
        [
            QFElement::from_big(i.a.clone(), BigInt::zero()).scale(&d),
            QFElement::from_big(i.b.clone(), i.c.clone()).scale(&d),
        ]
    }

    pub fn contains(&self, i: &OKIdeal, x: &QFElement) -> bool {
        let den = BigRational::from_integer(i.den.clone());
        let (u, v) = (&x.a * &den, &x.b * &den);
        if !u.is_integer() || !v.is_integer() {
            return false;
        }
        let (u, v) = (u.to_integer(), v.to_integer());
        if !(&v).is_multiple_of(&i.c) {
            return false;
        }
        let rest = u - (&v / &i.c) * &i.b;
        rest.is_multiple_of(&i.a)
    }

    pub fn ideal_mul(&self, x: &OKIdeal, y: &OKIdeal) -> OKIdeal {
        let (bx, by) = (self.zbasis(x), self.zbasis(y));
        let prods: Vec<QFElement> = bx.iter().flat_map(|p| by.iter().map(move |q| (p, q))).map(|(p, q)| self.mul(p, q)).collect();
        self.ideal_from_zbasis(&prods).expect("products of ideals are ideals")
    }

    pub fn ideal_pow(&self, x: &OKIdeal, e: i64) -> OKIdeal {
        let base = if e < 0 { self.ideal_inv(x) } else { x.clone() };
        (0..e.unsigned_abs()).fold(self.unit_ideal(), |acc, _| self.ideal_mul(&acc, &base))
    }

    /// `I⁻¹ = σ(I)/N(I)`.
    pub fn ideal_inv(&self, x: &OKIdeal) -> OKIdeal {
        let n = self.ideal_norm(x).recip();
        let basis: Vec<QFElement> = self.zbasis(&self.ideal_conj(x)).iter().map(|e| e.scale(&n)).collect();
        self.ideal_from_zbasis(&basis).expect("inverse of an ideal is an ideal")
    }

    pub fn ideal_conj(&self, x: &OKIdeal) -> OKIdeal {
        let basis: Vec<QFElement> = self.zbasis(x).iter().map(|e| self.conj(e)).collect();
        self.ideal_from_zbasis(&basis).expect("conjugate of an ideal is an ideal")
    }

    pub fn ideal_norm(&self, x: &OKIdeal) -> BigRational {
        BigRational::new(&x.a * &x.c, &x.den * &x.den)
    }

    pub fn is_invariant(&self, x: &OKIdeal) -> bool {
        self.ideal_conj(x) == *x
    }

    pub fn is_integral(&self, x: &OKIdeal) -> bool {
        x.den.is_one()
    }

    /// `x = r·P` with `r ∈ ℚ_{>0}` and `P` primitive integral.
    pub(crate) fn split_content(&self, x: &OKIdeal) -> (BigRational, Prim) {
        let r = BigRational::new(x.c.clone(), x.den.clone());
        let a = &x.a / &x.c;
        let bp = &x.b / &x.c;
        (r, Prim { a, b: bp * 2 + self.omega_trace() })
    }

    pub(crate) fn prim_to_ideal(&self, p: &Prim) -> OKIdeal {
        let b: BigInt = (&p.b - self.omega_trace()) / 2;
        Self::canonical(BigInt::one(), p.a.clone(), b.mod_floor(&p.a), BigInt::one())
    }

    /// `θ = (b + √D)/2` of a primitive ideal.
    fn theta(&self, p: &Prim) -> QFElement {
        QFElement::from_big((&p.b - self.omega_trace()) / 2, BigInt::one())
    }

    /// Translate `b` into the standard range modulo `2a`.
    fn normalize(&self, p: &Prim) -> Prim {
        let two_a = &p.a * 2;
        let d = self.discriminant();
        let s = if d > 0 { BigInt::from(isqrt_i64(d)) } else { BigInt::zero() };
        let b = if d > 0 && p.a <= s {
            // s − 2a < b ≤ s
            let lo: BigInt = &s - &two_a + 1;
            &lo + (&p.b - &lo).mod_floor(&two_a)
        } else {
            // −a < b ≤ a
            let r = p.b.mod_floor(&two_a);
            if r > p.a {
                r - &two_a
            } else {
                r
            }
        };
        Prim { a: p.a.clone(), b }
    }

    /// `ρ(I) = μ·I` with `μ = σ(θ)/a`; returns the new ideal and `μ`.
    fn rho(&self, p: &Prim) -> (Prim, QFElement) {
        let d = BigInt::from(self.discriminant());
        let c: BigInt = (&p.b * &p.b - &d) / (&p.a * 4);
        let mu = self
            .conj(&self.theta(p))
            .scale(&BigRational::from_integer(p.a.clone()).recip());
        let next = self.normalize(&Prim { a: c.abs(), b: -&p.b });
        (next, mu)
    }

    pub(crate) fn is_reduced(&self, p: &Prim) -> bool {
        let d = self.discriminant();
        let bd = BigInt::from(d);
        if d < 0 {
            let c = (&p.b * &p.b - &bd) / (&p.a * 4);
            let b_abs = p.b.abs();
            b_abs <= p.a && p.a <= c && !((b_abs == p.a || p.a == c) && p.b.is_negative())
        } else {
            // |√D − 2a| < b < √D
            let below_sqrt = |x: &BigInt| !x.is_positive() || x * x < bd;
            let above_sqrt = |x: &BigInt| x.is_positive() && x * x > bd;
            let two_a = &p.a * 2;
            p.b.is_positive() && below_sqrt(&p.b) && below_sqrt(&(&two_a - &p.b)) && above_sqrt(&(&two_a + &p.b))
        }
    }

    /// A reduced ideal `J` and `μ` with `J = μ·P`.
    pub(crate) fn reduce(&self, p: &Prim) -> (Prim, QFElement) {
        let mut cur = self.normalize(p);
        let mut mu = QFElement::one();
        while !self.is_reduced(&cur) {
            let (next, m) = self.rho(&cur);
            mu = self.mul(&mu, &m);
            cur = next;
        }
        (cur, mu)
    }

    /// The reduced ideals `ρ^k(J)` of the cycle through a reduced `J`, with
    /// `ρ^k(J) = μ_k·J`. Imaginary fields have cycles of length one.
    pub(crate) fn cycle(&self, start: &Prim) -> Vec<(Prim, QFElement)> {
        let mut out = vec![(start.clone(), QFElement::one())];
        if self.discriminant() < 0 {
            return out;
        }
        let mut cur = start.clone();
        let mut mu = QFElement::one();
        loop {
            let (next, m) = self.rho(&cur);
            mu = self.mul(&mu, &m);
            if next == *start {
                return out;
            }
            out.push((next.clone(), mu.clone()));
            cur = next;
        }
    }

    /// A generator of `x` if it is principal. The generator is verified to lie
    /// in `x` with `|N(g)| = N(x)`, so `(g) = x`.
    pub fn principal_generator(&self, x: &OKIdeal) -> Option<QFElement> {
        let (r, prim) = self.split_content(x);
        let (red, mu) = self.reduce(&prim);
        let found = self.cycle(&red).into_iter().find(|(p, _)| p.a.is_one())?;
        // O_K = μ_k·μ·P, so P = (1/(μ_k·μ))
        let m = self.mul(&found.1, &mu);
        let g = self.inv(&m)?.scale(&r);
        debug_assert!(self.contains(x, &g) && self.norm(&g).abs() == self.ideal_norm(x));
        (self.contains(x, &g) && self.norm(&g).abs() == self.ideal_norm(x)).then_some(g)
    }

    /// A prime ideal of norm `p` above the rational prime `p`, if `p` splits or ramifies.
    pub fn prime_above(&self, p: u64) -> Option<OKIdeal> {
        let d = BigInt::from(self.discriminant());
        let four_p = BigInt::from(4 * p);
        (0..2 * p)
            .map(BigInt::from)
            .find(|b| (b - &d).is_even() && (b * b - &d).is_multiple_of(&four_p))
            .map(|b| self.prim_to_ideal(&Prim { a: BigInt::from(p), b }))
    }

    pub fn is_ramified(&self, p: u64) -> bool {
        self.discriminant() % p as i64 == 0
    }

    pub fn describe_ideal(&self, x: &OKIdeal) -> String {
        let [g1, g2] = self.zbasis(x);
        format!("[{}, {}]", self.describe(&g1), self.describe(&g2))
    }
}

impl fmt::Display for OKIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "[{}, {} + {}ω]", self.a, self.b, self.c)
        } else {
            write!(f, "[{}, {} + {}ω]/{}", self.a, self.b, self.c, self.den)
        }
    }
}

/// The ideal class group, one class per cycle of reduced ideals.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    /// Canonical reduced ideal of every class; class 0 is principal.
    reps: Vec<Prim>,
    index: HashMap<Prim, usize>,
}

impl ClassGroup {
    pub(crate) fn compute(field: &QuadField) -> Result<ClassGroup> {
        field.check_bound()?;
        let d = field.discriminant();
        let mut reduced: Vec<Prim> = Vec::new();
        if d < 0 {
            let amax = isqrt_i64(-d / 3) + 1;
            for a in 1..=amax {
                for b in -a + 1..=a {
                    let num = b * b - d;
                    if num % (4 * a) == 0 {
                        let p = Prim { a: a.into(), b: b.into() };
                        if field.is_reduced(&p) {
                            reduced.push(p);
                        }
                    }
                }
            }
        } else {
            let s = isqrt_i64(d);
            for b in 1..=s {
                if (b - d) % 2 != 0 {
                    continue;
                }
                let m = (d - b * b) / 4;
                for a in 1..=m {
                    if m % a == 0 {
                        let p = Prim { a: a.into(), b: b.into() };
                        if field.is_reduced(&p) {
                            reduced.push(p);
                        }
                    }
                }
            }
        }
        reduced.sort();
        let mut index = HashMap::new();
        let mut reps: Vec<Prim> = Vec::new();
        let unit = field.reduce(&field.split_content(&field.unit_ideal()).1).0;
        let mut ordered = vec![unit];
        ordered.extend(reduced);
        for p in ordered {
            if index.contains_key(&p) {
                continue;
            }
            let cls = reps.len();
            let members = field.cycle(&p);
            let canon = members.iter().map(|(q, _)| q).min().expect("nonempty").clone();
            for (q, _) in members {
                index.insert(q, cls);
            }
            reps.push(canon);
        }
        Ok(ClassGroup { reps, index })
    }

    /// The class number.
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Class index of a fractional ideal; 0 is the principal class.
    pub fn class_of(&self, field: &QuadField, x: &OKIdeal) -> usize {
        let (_, prim) = field.split_content(x);
        let (red, _) = field.reduce(&prim);
        self.index[&red]
    }

    /// A reduced integral ideal in the given class.
    pub fn representative(&self, field: &QuadField, class: usize) -> OKIdeal {
        field.prim_to_ideal(&self.reps[class])
    }

    pub fn mul_classes(&self, field: &QuadField, x: usize, y: usize) -> usize {
        let p = field.ideal_mul(&self.representative(field, x), &self.representative(field, y));
        self.class_of(field, &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms_and_arithmetic() {
        let k = QuadField::new(-5).unwrap();
        let two = QFElement::from_ints(2, 0);
        let p2 = k.ideal(&[two.clone(), QFElement::from_ints(1, 1)]).unwrap();
        assert_eq!(k.ideal_norm(&p2), BigRational::from_integer(2.into()));
        assert!(k.is_invariant(&p2));
        assert_eq!(k.ideal_mul(&p2, &p2), k.principal_ideal(&two).unwrap());
        let p3 = k.prime_above(3).unwrap();
        let p3b = k.ideal_conj(&p3);
        assert_ne!(p3, p3b);
        assert_eq!(k.ideal_mul(&p3, &p3b), k.principal_ideal(&QFElement::from_ints(3, 0)).unwrap());
        // commutativity and associativity on representations
        let x = k.ideal_mul(&k.ideal_mul(&p2, &p3), &p3b);
        let y = k.ideal_mul(&p2, &k.ideal_mul(&p3b, &p3));
        assert_eq!(x, y);
        assert_eq!(k.ideal_mul(&p3, &p2), k.ideal_mul(&p2, &p3));
        assert_eq!(k.ideal_mul(&p2, &k.ideal_inv(&p2)), k.unit_ideal());
    }

    #[test]
    fn fractional_ideals() {
        let k = QuadField::new(3).unwrap();
        let half = QFElement::new(BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 2.into()));
        let i = k.principal_ideal(&half).unwrap();
        assert!(!k.is_integral(&i));
        assert!(k.contains(&i, &half));
        assert_eq!(k.ideal_norm(&i), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn rejects_non_ideals() {
        let k = QuadField::new(-1).unwrap();
        // 2ℤ + ωℤ is not ω-stable in ℤ[i]
        let m = k.ideal_from_zbasis(&[QFElement::from_ints(2, 0), QFElement::from_ints(0, 1)]);
        assert!(matches!(m, Err(Error::NotAnIdeal(_))));
        assert!(k.ideal(&[QFElement::zero()]).is_err());
    }

    #[test]
    fn principal_generators() {
        for d in [-1, -2, -3, -5, -7, -23, 2, 3, 5, 6, 7, 10, 15, 79] {
            let k = QuadField::new(d).unwrap();
            assert_eq!(k.principal_generator(&k.unit_ideal()), Some(QFElement::one()));
            for g in [QFElement::from_ints(3, 1), QFElement::from_ints(-7, 4), QFElement::from_ints(11, -5)] {
                let i = k.principal_ideal(&g).unwrap();
                let h = k.principal_generator(&i).expect("principal");
                assert_eq!(k.principal_ideal(&h).unwrap(), i);
            }
        }
    }

    #[test]
    fn class_numbers() {
        for (d, h) in [(-1, 1), (-5, 2), (-23, 3), (-14, 4), (-47, 5), (10, 2), (79, 3), (3, 1), (-163, 1), (15, 2), (229, 3)] {
            let k = QuadField::new(d).unwrap();
            assert_eq!(k.class_group().unwrap().order(), h, "d = {d}");
        }
        let k = QuadField::new(-5).unwrap();
        let p2 = k.prime_above(2).unwrap();
        assert_eq!(k.principal_generator(&p2), None);
        assert_eq!(k.class_group().unwrap().class_of(&k, &p2), 1);
    }
}
