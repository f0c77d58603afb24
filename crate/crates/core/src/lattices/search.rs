//! Bounded searches over ℤ-lattices of matrices.
//!
//! A search bound `B` means: the witness is `Σ cᵢ·vᵢ` over an LLL-reduced
//! basis `vᵢ` of the solution lattice, with every `|cᵢ| ≤ B`. Candidates are
//! visited by increasing `max |cᵢ|`, then lexicographically, so the first
//! witness found is the same for any worker count.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::par;
use crate::quadfields::{QFElement, QuadField};
use crate::zlattice::left_kernel;

use super::ring::{mat_conj, mat_mul, KMatrix};

/// Largest number of candidates visited in one shell.
pub const MAX_SHELL: u128 = 1 << 24;

fn dot(x: &[BigRational], y: &[BigRational]) -> BigRational {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn round(q: &BigRational) -> BigInt {
    (q + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// LLL reduction with `δ = 3/4`, in exact arithmetic.
pub(crate) fn lll(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut b = rows;
    let k_max = b.len();
    if k_max < 2 {
        return b;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let gram_schmidt = |b: &[Vec<BigInt>]| {
        let q: Vec<Vec<BigRational>> = b.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
        let mut star: Vec<Vec<BigRational>> = Vec::new();
        let mut norms: Vec<BigRational> = Vec::new();
        let mut mu = vec![vec![BigRational::zero(); q.len()]; q.len()];
        for i in 0..q.len() {
            let mut v = q[i].clone();
            for j in 0..i {
                mu[i][j] = dot(&q[i], &star[j]) / &norms[j];
                for (x, s) in v.iter_mut().zip(&star[j]) {
                    *x -= &mu[i][j] * s;
                }
            }
            norms.push(dot(&v, &v));
            star.push(v);
        }
        (mu, norms)
    };
    let (mut mu, mut norms) = gram_schmidt(&b);
    let mut k = 1;
    while k < k_max {
        for j in (0..k).rev() {
            let q = round(&mu[k][j]);
            if q.is_zero() {
                continue;
            }
            let bj = b[j].clone();
            for (x, y) in b[k].iter_mut().zip(&bj) {
                *x -= &q * y;
            }
            let qr = BigRational::from_integer(q);
            for i in 0..j {
                let t = &qr * &mu[j][i];
                mu[k][i] -= t;
            }
            mu[k][j] -= &qr;
        }
        let lhs = norms[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            (mu, norms) = gram_schmidt(&b);
            k = (k - 1).max(1);
        }
    }
    b
}

fn coordinates(x: &KMatrix) -> Vec<BigRational> {
    x.iter().flatten().flat_map(|e| [e.a.clone(), e.b.clone()]).collect()
}

fn basis_matrix(n: usize, t: usize) -> KMatrix {
    let mut m = vec![vec![QFElement::zero(); n]; n];
    let cell = t / 2;
    m[cell / n][cell % n] = if t % 2 == 0 { QFElement::one() } else { QFElement::from_ints(0, 1) };
    m
}

/// An LLL-reduced ℤ-basis of `{X ∈ M_n(O_K) : σ(X) = P·X·Q}`.
pub(crate) fn twisted_fixed_lattice(field: &QuadField, p: &KMatrix, q: &KMatrix) -> Vec<KMatrix> {
    let n = p.len();
    let dim = 2 * n * n;
    let images: Vec<Vec<BigRational>> = (0..dim)
        .map(|t| {
            let x = basis_matrix(n, t);
            let lhs = mat_conj(field, &x);
            let rhs = mat_mul(field, &mat_mul(field, p, &x), q);
            coordinates(&lhs).into_iter().zip(coordinates(&rhs)).map(|(a, b)| a - b).collect()
        })
        .collect();
    let den = images.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let dq = BigRational::from_integer(den);
    let a: Vec<Vec<BigInt>> = images.iter().map(|r| r.iter().map(|x| (x * &dq).to_integer()).collect()).collect();
    lll(left_kernel(&a))
        .into_iter()
        .map(|coeffs| {
            let mut m = vec![vec![QFElement::zero(); n]; n];
            for (t, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let cell = t / 2;
                let e = &mut m[cell / n][cell % n];
                let c = BigRational::from_integer(c.clone());
                if t % 2 == 0 {
                    e.a += c;
                } else {
                    e.b += c;
                }
            }
            m
        })
        .collect()
}

/// `Σ cᵢ·basisᵢ`.
pub(crate) fn combine(basis: &[KMatrix], coeffs: &[i64]) -> KMatrix {
    let n = basis.first().map_or(0, Vec::len);
    let mut m = vec![vec![QFElement::zero(); n]; n];
    for (b, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let c = BigRational::from_integer(c.into());
        for i in 0..n {
            for j in 0..n {
                m[i][j] = m[i][j].add(&b[i][j].scale(&c));
            }
        }
    }
    m
}

/// First coefficient vector in `[-bound, bound]^k`, ordered by shell and then
/// lexicographically, for which `accept` returns a value.
pub(crate) fn shell_search<T, F>(k: usize, bound: u64, accept: F) -> Result<Option<(Vec<i64>, T)>>
where
    T: Send,
    F: Fn(&[i64]) -> Option<T> + Sync + Send,
{
    for s in 0..=bound as i64 {
        let side = (2 * s + 1) as u128;
        let count = side.checked_pow(k as u32).unwrap_or(u128::MAX);
        if count > MAX_SHELL {
            return Err(Error::EnumerationBoundExceeded {
                what: "search shell",
                needed: count,
                bound: MAX_SHELL,
            });
        }
        let decode = |mut i: usize| -> Vec<i64> {
            let mut v = vec![0i64; k];
            for slot in v.iter_mut().rev() {
                *slot = (i % side as usize) as i64 - s;
                i /= side as usize;
            }
            v
        };
        let hit = par::find_first(count.to_usize().expect("bounded"), |i| {
            let v = decode(i);
            if v.iter().map(|x| x.abs()).max().unwrap_or(0) != s {
                return None;
            }
            accept(&v).map(|t| (v, t))
        });
        if let Some((_, found)) = hit {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Whether `x ∈ O_K` has norm `±1`.
pub(crate) fn is_unit(field: &QuadField, x: &QFElement) -> bool {
    x.is_integral() && field.norm(x).abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lll_shortens() {
        // bases of ℤ² and ℤ³ reduce to vectors of length one
        for rows in [vec![vec![1i64, 0], vec![1000, 1]], vec![vec![5, 3], vec![8, 5]], vec![vec![1, 7, 40], vec![0, 1, 9], vec![0, 0, 1]]] {
            let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            for r in lll(rows) {
                let n: BigInt = r.iter().map(|x| x * x).sum();
                assert!(n.is_one());
            }
        }
    }

    #[test]
    fn fixed_matrices_are_rational() {
        let k = QuadField::new(-2).unwrap();
        let id = super::super::ring::identity(2);
        let basis = twisted_fixed_lattice(&k, &id, &id);
        assert_eq!(basis.len(), 4);
        assert!(basis.iter().flatten().flatten().all(|e| e.b.is_zero()));
    }

    #[test]
    fn shells_are_ordered() {
        let found = shell_search(2, 3, |v| (v[0] + v[1] == 3).then_some(())).unwrap();
        assert_eq!(found.unwrap().0, vec![1, 2]);
        assert!(shell_search(2, 1, |v| (v[0] == 5).then_some(())).unwrap().is_none());
    }
}
