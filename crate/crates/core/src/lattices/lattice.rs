use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::quadfields::{OKIdeal, QFElement, QuadField};

use super::ring::{is_euclidean, mat_vec, ok_echelon, KMatrix, OkCtx, OkInt};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Canonical {
    /// Echelon rows over a Euclidean `O_K`; these form an `O_K`-basis.
    Echelon(Vec<Vec<QFElement>>),
    /// Rank one lattices over other fields are fractional ideals.
    Ideal(OKIdeal),
}

/// A finitely generated `O_K`-submodule of `Kⁿ`, kept in a canonical form so
/// that equality is decided by comparing forms.
#[derive(Clone, Debug)]
pub struct OKLattice {
    field: QuadField,
    n: usize,
    generators: Vec<Vec<QFElement>>,
    canonical: Canonical,
}

impl PartialEq for OKLattice {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.canonical == other.canonical
    }
}

impl Eq for OKLattice {}

fn lcm_denominator<'a>(xs: impl Iterator<Item = &'a QFElement>) -> BigInt {
    xs.fold(BigInt::one(), |acc, x| acc.lcm(x.a.denom()).lcm(x.b.denom()))
}

impl OKLattice {
    /// The `O_K`-span of `generators`, each a vector of length `n`.
    ///
    /// Over the norm-Euclidean fields any rank is allowed; elsewhere only
    /// `n = 1`, where the lattice is a fractional ideal.
    pub fn new(field: &QuadField, n: usize, generators: Vec<Vec<QFElement>>) -> Result<OKLattice> {
        if let Some(v) = generators.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(format!("generator of length {} in dimension {n}", v.len())));
        }
        let canonical = if is_euclidean(field) {
            let den = lcm_denominator(generators.iter().flatten());
            let dq = BigRational::from_integer(den.clone());
            let rows: Vec<Vec<OkInt>> = generators
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|x| OkInt {
                            a: (&x.a * &dq).to_integer(),
                            b: (&x.b * &dq).to_integer(),
                        })
                        .collect()
                })
                .collect();
            let ctx = OkCtx::new(field);
            let inv = dq.recip();
            Canonical::Echelon(
                ok_echelon(rows, &ctx)
                    .into_iter()
                    .map(|r| r.iter().map(|x| x.to_element().scale(&inv)).collect())
                    .collect(),
            )
        } else if n == 1 {
            let gens: Vec<QFElement> = generators.iter().map(|v| v[0].clone()).collect();
            Canonical::Ideal(field.ideal(&gens).map_err(|_| Error::NotFullRank)?)
        } else {
            return Err(Error::NonEuclideanField(field.d()));
        };
        Ok(OKLattice {
            field: field.clone(),
            n,
            generators,
            canonical,
        })
    }

    /// `O_Kⁿ`.
    pub fn standard(field: &QuadField, n: usize) -> Result<OKLattice> {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| QFElement::from_ints((i == j) as i64, 0)).collect())
            .collect();
        OKLattice::new(field, n, rows)
    }

    /// `O_K ⊗ M` for the ℤ-lattice `M` spanned by rational rows.
    pub fn from_rational(field: &QuadField, n: usize, rows: &[Vec<BigRational>]) -> Result<OKLattice> {
        let gens = rows.iter().map(|r| r.iter().map(|q| QFElement::rational(q.clone())).collect()).collect();
        OKLattice::new(field, n, gens)
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<QFElement>] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        match &self.canonical {
            Canonical::Echelon(rows) => rows.len(),
            Canonical::Ideal(_) => 1,
        }
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.n
    }

    /// The canonical `O_K`-basis as rows. Only over the Euclidean fields.
    pub fn basis(&self) -> Result<&[Vec<QFElement>]> {
        match &self.canonical {
            Canonical::Echelon(rows) => Ok(rows),
            Canonical::Ideal(_) => Err(Error::NonEuclideanField(self.field.d())),
        }
    }

    /// The basis vectors as the columns of a square matrix.
    pub fn basis_matrix(&self) -> Result<KMatrix> {
        let rows = self.basis()?;
        if rows.len() != self.n {
            return Err(Error::NotFullRank);
        }
        Ok((0..self.n).map(|i| rows.iter().map(|r| r[i].clone()).collect()).collect())
    }

    /// A ℤ-basis of the lattice, as vectors in `Kⁿ`.
    pub fn zbasis(&self) -> Vec<Vec<QFElement>> {
        match &self.canonical {
            Canonical::Echelon(rows) => {
                let w = self.field.omega();
                rows.iter()
                    .flat_map(|r| [r.clone(), r.iter().map(|x| self.field.mul(x, &w)).collect()])
                    .collect()
            }
            Canonical::Ideal(i) => self.field.zbasis(i).into_iter().map(|x| vec![x]).collect(),
        }
    }

    pub fn conjugate(&self) -> Result<OKLattice> {
        let gens = self.generators.iter().map(|v| v.iter().map(|x| self.field.conj(x)).collect()).collect();
        OKLattice::new(&self.field, self.n, gens)
    }

    /// The image `g(L)` under a matrix acting on column vectors.
    pub fn apply(&self, g: &KMatrix) -> Result<OKLattice> {
        let gens = self.generators.iter().map(|v| mat_vec(&self.field, g, v)).collect();
        OKLattice::new(&self.field, self.n, gens)
    }

    /// `L ⊕ M ⊂ K^{n+m}`.
    pub fn direct_sum(&self, other: &OKLattice) -> Result<OKLattice> {
        let (n, m) = (self.n, other.n);
        let zero = QFElement::zero();
        let gens = self
            .generators
            .iter()
            .map(|v| v.iter().cloned().chain(std::iter::repeat_n(zero.clone(), m)).collect())
            .chain(other.generators.iter().map(|v| std::iter::repeat_n(zero.clone(), n).chain(v.iter().cloned()).collect()))
            .collect();
        OKLattice::new(&self.field, n + m, gens)
    }

    pub fn contains(&self, v: &[QFElement]) -> Result<bool> {
        let mut gens = self.generators.clone();
        gens.push(v.to_vec());
        Ok(OKLattice::new(&self.field, self.n, gens)? == *self)
    }

    pub fn describe(&self) -> String {
        match &self.canonical {
            Canonical::Echelon(rows) => {
                let rows: Vec<String> = rows
                    .iter()
                    .map(|r| format!("({})", r.iter().map(|x| self.field.describe(x)).collect::<Vec<_>>().join(", ")))
                    .collect();
                format!("span{{{}}}", rows.join(", "))
            }
            Canonical::Ideal(i) => self.field.describe_ideal(i),
        }
    }
}

impl fmt::Display for OKLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Whether `σ(L) = L`.
pub fn is_galois_stable(l: &OKLattice) -> Result<bool> {
    Ok(l.conjugate()? == *l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[(i64, i64)]) -> Vec<QFElement> {
        xs.iter().map(|&(a, b)| QFElement::from_ints(a, b)).collect()
    }

    #[test]
    fn canonical_form_ignores_generators() {
        let k = QuadField::new(-1).unwrap();
        let a = OKLattice::new(&k, 2, vec![v(&[(1, 0), (0, 0)]), v(&[(0, 0), (2, 0)])]).unwrap();
        let b = OKLattice::new(&k, 2, vec![v(&[(1, 0), (0, 2)]), v(&[(0, 0), (2, 0)]), v(&[(3, 0), (4, 4)])]).unwrap();
        let c = OKLattice::new(&k, 2, vec![v(&[(1, 0), (0, 0)]), v(&[(0, 0), (1, 1)])]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(c.contains(&v(&[(0, 0), (2, 0)])).unwrap());
        assert!(!a.contains(&v(&[(0, 0), (1, 1)])).unwrap());
    }

    #[test]
    fn scaling_commutes_with_canonical_form() {
        let k = QuadField::new(-3).unwrap();
        let g = vec![v(&[(2, 1), (1, 0)]), v(&[(0, 3), (1, 1)])];
        let a = OKLattice::new(&k, 2, g.clone()).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let scaled: Vec<Vec<QFElement>> = g.iter().map(|r| r.iter().map(|x| x.scale(&half)).collect()).collect();
        let b = OKLattice::new(&k, 2, scaled).unwrap();
        let doubled: Vec<Vec<QFElement>> = b.basis().unwrap().iter().map(|r| r.iter().map(|x| x.scale(&BigRational::from_integer(2.into()))).collect()).collect();
        assert_eq!(OKLattice::new(&k, 2, doubled).unwrap(), a);
    }

    #[test]
    fn stability_examples() {
        let k = QuadField::new(-1).unwrap();
        assert!(is_galois_stable(&OKLattice::standard(&k, 3).unwrap()).unwrap());
        let p = OKLattice::new(&k, 1, vec![v(&[(1, 1)])]).unwrap();
        assert!(is_galois_stable(&p).unwrap());
        let line = OKLattice::new(&k, 2, vec![v(&[(1, 0), (0, 1)])]).unwrap();
        assert_eq!(line.rank(), 1);
        assert!(!is_galois_stable(&line).unwrap());
    }

    #[test]
    fn non_euclidean_fields() {
        let k = QuadField::new(-5).unwrap();
        assert_eq!(OKLattice::standard(&k, 2).unwrap_err(), Error::NonEuclideanField(-5));
        let p = OKLattice::new(&k, 1, vec![v(&[(2, 0)]), v(&[(1, 1)])]).unwrap();
        assert!(is_galois_stable(&p).unwrap());
        let q = OKLattice::new(&k, 1, vec![v(&[(3, 0)]), v(&[(1, 1)])]).unwrap();
        assert!(!is_galois_stable(&q).unwrap());
    }
}
