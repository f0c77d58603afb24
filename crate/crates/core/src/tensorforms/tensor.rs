use crate::error::{Error, Result};
use crate::groups::{Elem, Group};
use crate::par;

use super::matrix::Linalg;
use super::{GaloisFieldTower, MatrixGroupK};

/// A tensor of type `(l, m)` on `V = K^n`: a linear map `V^{⊗l} → V^{⊗m}`,
/// stored as an `n^m × n^l` row-major array of field codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    pub l: u32,
    pub m: u32,
    pub coeffs: Vec<u32>,
}

/// A finite family of tensors on `K^n` whose entries lie in `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorFamily {
    n: usize,
    tensors: Vec<Tensor>,
}

impl TensorFamily {
    pub fn new(n: usize, tensors: Vec<Tensor>) -> Result<Self> {
        for (i, t) in tensors.iter().enumerate() {
            let expected = n.pow(t.l) * n.pow(t.m);
            if t.coeffs.len() != expected {
                return Err(Error::DimensionMismatch(format!(
                    "tensor {i} of type ({}, {}) on dimension {n} needs {expected} coefficients, got {}",
                    t.l,
                    t.m,
                    t.coeffs.len()
                )));
            }
        }
        Ok(TensorFamily { n, tensors })
    }

    pub fn empty(n: usize) -> Self {
        TensorFamily { n, tensors: Vec::new() }
    }

    /// The symmetric bilinear form with Gram matrix `gram` (row-major `n × n`),
    /// as a single tensor of type `(2, 0)`.
    pub fn bilinear_form(n: usize, gram: Vec<u32>) -> Result<Self> {
        Self::new(n, vec![Tensor { l: 2, m: 0, coeffs: gram }])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn tensors(&self) -> &[Tensor] {
        &self.tensors
    }

    /// All coefficients, concatenated.
    pub fn point(&self) -> Vec<u32> {
        self.tensors.iter().flat_map(|t| t.coeffs.iter().copied()).collect()
    }

    /// The family with its coefficients replaced by `point` (same shapes).
    pub fn with_point(&self, point: &[u32]) -> TensorFamily {
        let mut at = 0;
        let tensors = self
            .tensors
            .iter()
            .map(|t| {
                let len = t.coeffs.len();
                at += len;
                Tensor {
                    l: t.l,
                    m: t.m,
                    coeffs: point[at - len..at].to_vec(),
                }
            })
            .collect();
        TensorFamily { n: self.n, tensors }
    }

    /// Fails with the first coefficient outside the base field.
    pub fn check_defined_over_base(&self, tower: &GaloisFieldTower) -> Result<()> {
        if let Some(&c) = self.point().iter().find(|&&c| c >= tower.order() || !tower.is_base(c)) {
            return Err(Error::NotDefinedOverBase(c));
        }
        Ok(())
    }
}

/// `g^{⊗r}` for an `n × n` matrix `g`, indexing `V^{⊗r}` with the first
/// factor most significant.
pub(crate) fn kron_power(f: &GaloisFieldTower, g: &[u32], n: usize, r: u32) -> Vec<u32> {
    let size = n.pow(r);
    let mut out = vec![0u32; size * size];
    for row in 0..size {
        for col in 0..size {
            let (mut i, mut j, mut v) = (row, col, 1u32);
            for _ in 0..r {
                v = f.mul(v, g[(i % n) * n + j % n]);
                if v == 0 {
                    break;
                }
                i /= n;
                j /= n;
            }
            out[row * size + col] = v;
        }
    }
    out
}

/// `g(τ) = g^{⊗m}·τ·(g^{⊗l})⁻¹` for every tensor of the family.
pub fn act_on_family(gl: &MatrixGroupK, g: Elem, fam: &TensorFamily) -> Vec<u32> {
    let n = fam.n;
    let f = gl.tower();
    let la = Linalg { f };
    let gm = gl.decode(g);
    let gi = gl.decode(gl.inv(g));
    let mut out = Vec::new();
    for t in &fam.tensors {
        let (rows, cols) = (n.pow(t.m), n.pow(t.l));
        let left = kron_power(f, &gm[..n * n], n, t.m);
        let right = kron_power(f, &gi[..n * n], n, t.l);
        let tmp = la.mul(&left, &t.coeffs, rows, rows, cols);
        out.extend(la.mul(&tmp, &right, rows, cols, cols));
    }
    out
}

/// Whether `g^{⊗m}·τ = τ·g^{⊗l}` for every tensor of the family.
pub fn fixes_family(gl: &MatrixGroupK, g: Elem, fam: &TensorFamily) -> bool {
    let n = fam.n;
    let f = gl.tower();
    let la = Linalg { f };
    let gm = gl.decode(g);
    fam.tensors.iter().all(|t| {
        let (rows, cols) = (n.pow(t.m), n.pow(t.l));
        let left = la.mul(&kron_power(f, &gm[..n * n], n, t.m), &t.coeffs, rows, rows, cols);
        let right = la.mul(&t.coeffs, &kron_power(f, &gm[..n * n], n, t.l), rows, cols, cols);
        left == right
    })
}

/// `Stab_{gl}(fam)` as an explicit subgroup of `gl`.
pub fn stabilizer_of_family(gl: &MatrixGroupK, fam: &TensorFamily) -> Result<MatrixGroupK> {
    if fam.n != gl.dim() {
        return Err(Error::DimensionMismatch(format!(
            "family on dimension {} but matrices of size {}",
            fam.n,
            gl.dim()
        )));
    }
    let elems = gl.elements();
    let kept = par::filter_map_range(elems.len(), |i| fixes_family(gl, elems[i], fam).then_some(elems[i]));
    Ok(gl.listed(kept))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::tensorforms::DEFAULT_MATRIX_BOUND;

    fn gl(p: u32, a: u32, m: u32, n: usize) -> MatrixGroupK {
        let t = Arc::new(GaloisFieldTower::new(p, a, m).unwrap());
        MatrixGroupK::general(t, n, DEFAULT_MATRIX_BOUND).unwrap()
    }

    #[test]
    fn empty_family_stabilizer_is_everything() {
        let g = gl(2, 1, 2, 2);
        let s = stabilizer_of_family(&g, &TensorFamily::empty(2)).unwrap();
        assert_eq!(s.order(), g.order());
    }

    #[test]
    fn square_form_over_f3() {
        let g = gl(3, 1, 1, 1);
        let fam = TensorFamily::bilinear_form(1, vec![1]).unwrap();
        let s = stabilizer_of_family(&g, &fam).unwrap();
        assert_eq!(s.elements().as_ref(), &[1, 2]);
    }

    #[test]
    fn orthogonal_group_over_f2() {
        let g = gl(2, 1, 1, 2);
        let fam = TensorFamily::bilinear_form(2, vec![1, 0, 0, 1]).unwrap();
        let s = stabilizer_of_family(&g, &fam).unwrap();
        let la = Linalg { f: g.tower() };
        let expected: Vec<Elem> = g
            .elements()
            .iter()
            .copied()
            .filter(|&x| {
                let e = g.decode(x);
                la.mul(&la.transpose(&e[..4], 2), &e[..4], 2, 2, 2) == vec![1, 0, 0, 1]
            })
            .collect();
        assert_eq!(s.elements().as_ref(), expected.as_slice());
        assert_eq!(s.order(), 2);
    }

    #[test]
    fn action_axiom() {
        let g = gl(3, 1, 1, 2);
        let fam = TensorFamily::new(
            2,
            vec![
                Tensor { l: 1, m: 1, coeffs: vec![1, 2, 0, 1] },
                Tensor { l: 2, m: 0, coeffs: vec![0, 1, 2, 0] },
                Tensor { l: 0, m: 1, coeffs: vec![1, 2] },
            ],
        )
        .unwrap();
        let elems = g.elements().into_owned();
        for &x in elems.iter().step_by(5) {
            for &y in elems.iter().step_by(7) {
                let lhs = act_on_family(&g, g.mul(x, y), &fam);
                let rhs = act_on_family(&g, x, &fam.with_point(&act_on_family(&g, y, &fam)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn shape_and_field_checks() {
        assert!(TensorFamily::bilinear_form(2, vec![1, 0, 1]).is_err());
        let t = GaloisFieldTower::new(2, 1, 2).unwrap();
        let fam = TensorFamily::bilinear_form(1, vec![2]).unwrap();
        assert_eq!(fam.check_defined_over_base(&t), Err(Error::NotDefinedOverBase(2)));
    }
}
