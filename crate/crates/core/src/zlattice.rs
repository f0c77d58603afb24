//! Echelon forms over Euclidean rings with canonical residues, shared by the
//! integer computations (kernels, sublattices of ℤⁿ) and by lattices over the
//! norm-Euclidean imaginary quadratic rings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A Euclidean ring with a canonical associate for each element and a
/// canonical residue system modulo each nonzero element.
pub(crate) trait Euclid: Clone + PartialEq {
    type Ctx;
    fn vanishes(&self) -> bool;
    fn sub(&self, other: &Self, ctx: &Self::Ctx) -> Self;
    fn mul(&self, other: &Self, ctx: &Self::Ctx) -> Self;
    /// Euclidean size, strictly decreasing along remainders.
    fn size(&self, ctx: &Self::Ctx) -> BigInt;
    /// `q` with `size(self − q·d) < size(d)`.
    fn quotient(&self, d: &Self, ctx: &Self::Ctx) -> Self;
    /// A unit `u` such that `u·self` is the canonical associate.
    fn normalizer(&self, ctx: &Self::Ctx) -> Self;
    /// `q` such that `self − q·m` is the canonical residue modulo `m`.
    fn residue_quotient(&self, m: &Self, ctx: &Self::Ctx) -> Self;
}

impl Euclid for BigInt {
    type Ctx = ();
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub(&self, other: &Self, _: &()) -> Self {
        self - other
    }
    fn mul(&self, other: &Self, _: &()) -> Self {
        self * other
    }
    fn size(&self, _: &()) -> BigInt {
        self.abs()
    }
    fn quotient(&self, d: &Self, _: &()) -> Self {
        self.div_floor(d)
    }
    fn normalizer(&self, _: &()) -> Self {
        if self.is_negative() {
            -<BigInt as One>::one()
        } else {
            <BigInt as One>::one()
        }
    }
    fn residue_quotient(&self, m: &Self, _: &()) -> Self {
        self.div_floor(&m.abs()) * m.signum()
    }
}

/// The nonzero rows of an echelon form produced by [`echelon`].
pub(crate) struct Echelon<R> {
    pub rows: Vec<Vec<R>>,
}

fn sub_multiple<R: Euclid>(target: &mut [R], q: &R, source: &[R], ctx: &R::Ctx) {
    if q.vanishes() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        if !s.vanishes() {
            *t = t.sub(&q.mul(s, ctx), ctx);
        }
    }
}

/// Row echelon form of the row span, eliminating only in the first
/// `reduce_cols` columns. Rows whose leading `reduce_cols` entries all vanish
/// are kept after the pivot rows, unreduced. Within the reduced block the form
/// is canonical: pivots are canonical associates and entries above a pivot are
/// canonical residues modulo it.
pub(crate) fn echelon<R: Euclid>(mut rows: Vec<Vec<R>>, reduce_cols: usize, ctx: &R::Ctx) -> (Echelon<R>, Vec<Vec<R>>) {
    let mut top = 0;
    for col in 0..reduce_cols {
        loop {
            let best = (top..rows.len())
                .filter(|&r| !rows[r][col].vanishes())
                .min_by_key(|&r| rows[r][col].size(ctx));
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][col].vanishes() {
                    continue;
                }
                let q = rows[r][col].quotient(&rows[top][col], ctx);
                let (head, tail) = rows.split_at_mut(r);
                sub_multiple(&mut tail[0], &q, &head[top], ctx);
                if !rows[r][col].vanishes() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < rows.len() && !rows[top][col].vanishes() {
            let u = rows[top][col].normalizer(ctx);
            for x in rows[top].iter_mut() {
                *x = u.mul(x, ctx);
            }
            for r in 0..top {
                let q = rows[r][col].residue_quotient(&rows[top][col], ctx);
                let (head, tail) = rows.split_at_mut(top);
                sub_multiple(&mut head[r], &q, &tail[0], ctx);
            }
            top += 1;
        }
    }
    let rest = rows.split_off(top);
    let rest = rest
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.vanishes()))
        .collect();
    (Echelon { rows }, rest)
}

/// Canonical Hermite basis of the ℤ-span of integer rows.
pub(crate) fn hnf(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    echelon(rows, cols, &()).0.rows
}

/// A ℤ-basis, in Hermite form, of `{x ∈ ℤ^m : x·A = 0}` for an integer
/// `m × k` matrix `A` given by rows.
pub(crate) fn left_kernel(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = a.len();
    let k = a.first().map_or(0, Vec::len);
    let augmented: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..m).map(|j| BigInt::from((i == j) as u8)));
            r
        })
        .collect();
    let (_, rest) = echelon(augmented, k, &());
    hnf(rest.into_iter().map(|r| r[k..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hermite_form_is_canonical() {
        let a = hnf(big(&[&[2, 4], &[3, 5]]));
        let b = hnf(big(&[&[5, 9], &[-3, -5], &[8, 14]]));
        assert_eq!(a, big(&[&[1, 1], &[0, 2]]));
        assert_eq!(a, b);
    }

    #[test]
    fn kernel_of_integer_matrix() {
        let a = big(&[&[1, 1], &[-1, 1], &[2, 0]]);
        let k = left_kernel(&a);
        assert_eq!(k.len(), 1);
        for row in &k {
            for c in 0..2 {
                let s: BigInt = row.iter().zip(&a).map(|(x, r)| x * &r[c]).sum();
                assert!(Zero::is_zero(&s));
            }
        }
        assert_eq!(k, big(&[&[1, -1, -1]]));
    }

    #[test]
    fn kernel_detects_full_rank() {
        assert!(left_kernel(&big(&[&[1, 0], &[0, 3]])).is_empty());
    }
}
