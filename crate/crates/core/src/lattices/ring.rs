//! Integral arithmetic in `O_K` for the Euclidean echelon form, and square
//! matrices over `K`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::quadfields::{QFElement, QuadField};
use crate::zlattice::{echelon, Euclid};

/// Imaginary quadratic fields whose ring of integers is norm-Euclidean.
pub const EUCLIDEAN_D: [i64; 5] = [-1, -2, -3, -7, -11];

pub fn is_euclidean(field: &QuadField) -> bool {
    EUCLIDEAN_D.contains(&field.d())
}

/// `a + b·ω ∈ O_K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct OkInt {
    pub a: BigInt,
    pub b: BigInt,
}

pub(crate) struct OkCtx {
    tr: BigInt,
    nm: BigInt,
    units: Vec<OkInt>,
}

impl OkCtx {
    pub fn new(field: &QuadField) -> OkCtx {
        let (tr, nm) = (BigInt::from(field.omega_trace()), BigInt::from(field.omega_norm()));
        let mut units = Vec::new();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                let u = OkInt { a: a.into(), b: b.into() };
                if u.size_with(&tr, &nm).is_one() {
                    units.push(u);
                }
            }
        }
        OkCtx { tr, nm, units }
    }
}

impl OkInt {
    fn size_with(&self, tr: &BigInt, nm: &BigInt) -> BigInt {
        &self.a * &self.a + &self.a * &self.b * tr + &self.b * &self.b * nm
    }

    fn conj(&self, ctx: &OkCtx) -> OkInt {
        OkInt { a: &self.a + &self.b * &ctx.tr, b: -&self.b }
    }

    /// Exact quotient; `self` must be a multiple of `d`.
    fn exact_div(&self, d: &OkInt, ctx: &OkCtx) -> OkInt {
        let n = d.size(ctx);
        let p = self.mul(&d.conj(ctx), ctx);
        debug_assert!(p.a.is_multiple_of(&n) && p.b.is_multiple_of(&n));
        OkInt { a: p.a / &n, b: p.b / n }
    }

    pub fn to_element(&self) -> QFElement {
        QFElement::from_big(self.a.clone(), self.b.clone())
    }
}

impl Euclid for OkInt {
    type Ctx = OkCtx;
    fn vanishes(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn sub(&self, o: &Self, _: &OkCtx) -> Self {
        OkInt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
    fn mul(&self, o: &Self, ctx: &OkCtx) -> Self {
        let bb = &self.b * &o.b;
        OkInt {
            a: &self.a * &o.a - &bb * &ctx.nm,
            b: &self.a * &o.b + &self.b * &o.a + bb * &ctx.tr,
        }
    }
    fn size(&self, ctx: &OkCtx) -> BigInt {
        self.size_with(&ctx.tr, &ctx.nm)
    }
    fn quotient(&self, d: &Self, ctx: &OkCtx) -> Self {
        let n = d.size(ctx);
        let p = self.mul(&d.conj(ctx), ctx);
        let (fa, fb) = (p.a.div_floor(&n), p.b.div_floor(&n));
        let mut best: Option<(BigInt, OkInt)> = None;
        for da in -1i64..=2 {
            for db in -1i64..=2 {
                let q = OkInt { a: &fa + da, b: &fb + db };
                let r = self.sub(&q.mul(d, ctx), ctx).size(ctx);
                if best.as_ref().is_none_or(|(s, _)| r < *s) {
                    best = Some((r, q));
                }
            }
        }
        best.expect("nonempty neighbourhood").1
    }
    fn normalizer(&self, ctx: &OkCtx) -> Self {
        ctx.units
            .iter()
            .max_by(|u, v| {
                let (x, y) = (u.mul(self, ctx), v.mul(self, ctx));
                (&x.a, &x.b).cmp(&(&y.a, &y.b))
            })
            .expect("units include 1")
            .clone()
    }
    fn residue_quotient(&self, m: &Self, ctx: &OkCtx) -> Self {
        // ℤ-basis (B + C·ω, A) of m·O_K, written in (ω, 1) coordinates
        let mw = m.mul(&OkInt { a: BigInt::zero(), b: BigInt::one() }, ctx);
        let (e, _) = echelon(vec![vec![m.b.clone(), m.a.clone()], vec![mw.b, mw.a]], 2, &());
        let (c, b, a) = (&e.rows[0][0], &e.rows[0][1], &e.rows[1][1]);
        let k1 = self.b.div_floor(c);
        let u = &self.a - &k1 * b;
        let k2 = u.div_floor(a);
        let residue = OkInt { a: u - k2 * a, b: &self.b - k1 * c };
        self.sub(&residue, ctx).exact_div(m, ctx)
    }
}

/// Canonical echelon basis of the `O_K`-span of integral row vectors.
pub(crate) fn ok_echelon(rows: Vec<Vec<OkInt>>, ctx: &OkCtx) -> Vec<Vec<OkInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    echelon(rows, cols, ctx).0.rows
}

/// A square matrix over `K`, stored by rows.
pub type KMatrix = Vec<Vec<QFElement>>;

pub fn identity(n: usize) -> KMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { QFElement::one() } else { QFElement::zero() }).collect())
        .collect()
}

pub fn mat_mul(field: &QuadField, x: &KMatrix, y: &KMatrix) -> KMatrix {
    let (n, m, k) = (x.len(), y.first().map_or(0, Vec::len), y.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(QFElement::zero(), |acc, t| acc.add(&field.mul(&x[i][t], &y[t][j]))))
                .collect()
        })
        .collect()
}

pub fn mat_vec(field: &QuadField, x: &KMatrix, v: &[QFElement]) -> Vec<QFElement> {
    x.iter()
        .map(|row| row.iter().zip(v).fold(QFElement::zero(), |acc, (a, b)| acc.add(&field.mul(a, b))))
        .collect()
}

pub fn mat_conj(field: &QuadField, x: &KMatrix) -> KMatrix {
    x.iter().map(|r| r.iter().map(|e| field.conj(e)).collect()).collect()
}

pub fn transpose(x: &KMatrix) -> KMatrix {
    let m = x.first().map_or(0, Vec::len);
    (0..m).map(|j| x.iter().map(|r| r[j].clone()).collect()).collect()
}

fn minor(x: &KMatrix, row: usize, col: usize) -> KMatrix {
    x.iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, e)| e.clone()).collect())
        .collect()
}

/// Determinant by cofactor expansion; the matrices here have `n ≤ 6`.
pub fn det(field: &QuadField, x: &KMatrix) -> QFElement {
    match x.len() {
        0 => QFElement::one(),
        1 => x[0][0].clone(),
        n => (0..n).fold(QFElement::zero(), |acc, j| {
            if x[0][j].is_zero() {
                return acc;
            }
            let t = field.mul(&x[0][j], &det(field, &minor(x, 0, j)));
            if j % 2 == 0 {
                acc.add(&t)
            } else {
                acc.sub(&t)
            }
        }),
    }
}

/// Inverse by Gauss–Jordan elimination, `None` if singular.
pub fn inverse(field: &QuadField, x: &KMatrix) -> Option<KMatrix> {
    let n = x.len();
    let mut a: Vec<Vec<QFElement>> = x
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = field.inv(&a[col][col])?;
        a[col] = a[col].iter().map(|e| field.mul(e, &inv)).collect();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (t, s) in a[r].iter_mut().zip(&pivot) {
                    *t = t.sub(&field.mul(&f, s));
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `max |numerator|, |denominator|` over the coordinates of the entries.
pub fn height(x: &KMatrix) -> BigInt {
    x.iter()
        .flatten()
        .flat_map(|e| [&e.a, &e.b])
        .flat_map(|q| [q.numer().abs(), q.denom().abs()])
        .max()
        .unwrap_or_else(BigInt::one)
}

pub fn rational_matrix(rows: &[Vec<BigRational>]) -> KMatrix {
    rows.iter().map(|r| r.iter().map(|q| QFElement::rational(q.clone())).collect()).collect()
}

pub fn is_rational_matrix(x: &KMatrix) -> bool {
    x.iter().flatten().all(|e| e.b.is_zero())
}

/// Block diagonal matrix `x ⊕ y`.
pub fn direct_sum(x: &KMatrix, y: &KMatrix) -> KMatrix {
    let (n, m) = (x.len(), y.len());
    let mut out = vec![vec![QFElement::zero(); n + m]; n + m];
    for i in 0..n {
        out[i][..n].clone_from_slice(&x[i]);
    }
    for i in 0..m {
        out[n + i][n..].clone_from_slice(&y[i]);
    }
    out
}

pub fn describe_matrix(field: &QuadField, x: &KMatrix) -> String {
    let rows: Vec<String> = x
        .iter()
        .map(|r| r.iter().map(|e| field.describe(e)).collect::<Vec<_>>().join(", "))
        .collect();
    format!("[{}]", rows.join("; "))
}
