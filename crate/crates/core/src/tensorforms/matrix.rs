use std::borrow::Cow;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groups::{Action, Elem, FiniteGroup, Group};
use crate::par;

use super::GaloisFieldTower;

/// Largest supported matrix dimension.
pub const MAX_DIM: usize = 3;
/// Default cap on the number of matrix codes scanned when listing `GL_n(K)`.
pub const DEFAULT_MATRIX_BOUND: u64 = 1 << 25;

/// Entries of an `n × n` matrix, row-major.
pub type Entries = [u32; MAX_DIM * MAX_DIM];

/// Dense matrix arithmetic over the top field of a tower.
pub(crate) struct Linalg<'a> {
    pub f: &'a GaloisFieldTower,
}

impl Linalg<'_> {
    /// `(r × k)·(k × c)`.
    pub fn mul(&self, a: &[u32], b: &[u32], r: usize, k: usize, c: usize) -> Vec<u32> {
        let mut out = vec![0u32; r * c];
        for i in 0..r {
            for t in 0..k {
                let x = a[i * k + t];
                if x == 0 {
                    continue;
                }
                for j in 0..c {
                    let y = b[t * c + j];
                    if y != 0 {
                        out[i * c + j] = self.f.add(out[i * c + j], self.f.mul(x, y));
                    }
                }
            }
        }
        out
    }

    /// Determinant and inverse of an `n × n` matrix by Gauss-Jordan elimination.
    pub fn det_inv(&self, m: &[u32], n: usize) -> (u32, Option<Vec<u32>>) {
        let f = self.f;
        let mut a = m.to_vec();
        let mut inv = vec![0u32; n * n];
        for i in 0..n {
            inv[i * n + i] = 1;
        }
        let mut det = 1u32;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return (0, None);
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).expect("pivot is nonzero");
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], pinv);
                inv[col * n + j] = f.mul(inv[col * n + j], pinv);
            }
            for r in 0..n {
                let factor = a[r * n + col];
                if r == col || factor == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    inv[r * n + j] = f.sub(inv[r * n + j], f.mul(factor, inv[col * n + j]));
                }
            }
        }
        (det, Some(inv))
    }

    pub fn det(&self, m: &[u32], n: usize) -> u32 {
        self.det_inv(m, n).0
    }

    #[cfg(test)]
    pub fn transpose(&self, m: &[u32], n: usize) -> Vec<u32> {
        (0..n * n).map(|i| m[(i % n) * n + i / n]).collect()
    }
}

#[derive(Clone, Debug)]
enum Members {
    General,
    Listed(Vec<Elem>),
}

/// A subgroup of `GL_n(K)` whose elements are matrix codes: the code of a
/// matrix is `Σ e_i·|K|^i` over its row-major entries `e_i`.
#[derive(Debug)]
pub struct MatrixGroupK {
    tower: Arc<GaloisFieldTower>,
    n: usize,
    members: Members,
    cache: OnceLock<Vec<Elem>>,
}

impl Clone for MatrixGroupK {
    fn clone(&self) -> Self {
        let cache = OnceLock::new();
        if let Some(v) = self.cache.get() {
            let _ = cache.set(v.clone());
        }
        MatrixGroupK {
            tower: self.tower.clone(),
            n: self.n,
            members: self.members.clone(),
            cache,
        }
    }
}

fn code_space(tower: &GaloisFieldTower, n: usize) -> Result<u64> {
    if n > MAX_DIM {
        return Err(Error::Unsupported(format!("matrix dimension {n} exceeds {MAX_DIM}")));
    }
    (tower.order() as u64)
        .checked_pow((n * n) as u32)
        .filter(|&s| s <= 1 << 32)
        .ok_or(Error::EnumerationBoundExceeded {
            what: "matrix codes",
            needed: (tower.order() as u128).saturating_pow((n * n) as u32),
            bound: 1 << 32,
        })
}

impl MatrixGroupK {
    /// `GL_n(K)`. Listing its elements scans every code, so the code space
    /// `|K|^(n²)` must not exceed `bound`.
    pub fn general(tower: Arc<GaloisFieldTower>, n: usize, bound: u64) -> Result<Self> {
        let space = code_space(&tower, n)?;
        if space > bound {
            return Err(Error::EnumerationBoundExceeded {
                what: "GL_n(K) codes",
                needed: space as u128,
                bound: bound as u128,
            });
        }
        Ok(MatrixGroupK {
            tower,
            n,
            members: Members::General,
            cache: OnceLock::new(),
        })
    }

    /// `GL_n(k)`, the matrices fixed by the Galois action.
    pub fn base_general(tower: Arc<GaloisFieldTower>, n: usize, bound: u64) -> Result<Self> {
        code_space(&tower, n)?;
        let base = tower.base_elements().to_vec();
        let count = (base.len() as u64).checked_pow((n * n) as u32).unwrap_or(u64::MAX);
        if count > bound {
            return Err(Error::EnumerationBoundExceeded {
                what: "GL_n(k) candidates",
                needed: count as u128,
                bound: bound as u128,
            });
        }
        let probe = MatrixGroupK {
            tower: tower.clone(),
            n,
            members: Members::General,
            cache: OnceLock::new(),
        };
        let mut elems = par::filter_map_range(count as usize, |idx| {
            let mut rest = idx;
            let mut e = [0u32; MAX_DIM * MAX_DIM];
            for slot in e.iter_mut().take(n * n) {
                *slot = base[rest % base.len()];
                rest /= base.len();
            }
            (probe.linalg().det(&e[..n * n], n) != 0).then(|| probe.encode(&e))
        });
        elems.sort_unstable();
        Ok(probe.with_members(elems))
    }

    /// The subgroup with the given element codes (sorted here). Closure is the
    /// caller's responsibility; [`MatrixGroupK::is_closed`] checks it.
    pub fn listed(&self, mut elems: Vec<Elem>) -> MatrixGroupK {
        elems.sort_unstable();
        elems.dedup();
        self.clone().with_members(elems)
    }

    fn with_members(mut self, elems: Vec<Elem>) -> MatrixGroupK {
        self.members = Members::Listed(elems.clone());
        self.cache = OnceLock::new();
        let _ = self.cache.set(elems);
        self
    }

    pub fn tower(&self) -> &Arc<GaloisFieldTower> {
        &self.tower
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub(crate) fn linalg(&self) -> Linalg<'_> {
        Linalg { f: &self.tower }
    }

    pub fn encode(&self, e: &[u32]) -> Elem {
        let q = self.tower.order() as u64;
        let mut code = 0u64;
        for &x in e[..self.n * self.n].iter().rev() {
            code = code * q + x as u64;
        }
        code as Elem
    }

    pub fn decode(&self, code: Elem) -> Entries {
        let q = self.tower.order() as u64;
        let mut out = [0u32; MAX_DIM * MAX_DIM];
        let mut rest = code as u64;
        for slot in out.iter_mut().take(self.n * self.n) {
            *slot = (rest % q) as u32;
            rest /= q;
        }
        out
    }

    pub fn contains(&self, code: Elem) -> bool {
        match &self.members {
            Members::General => self.linalg().det(&self.decode(code)[..self.n * self.n], self.n) != 0,
            Members::Listed(v) => v.binary_search(&code).is_ok(),
        }
    }

    /// Entrywise `x ↦ x^(q^k)`.
    pub fn frobenius(&self, k: u32, code: Elem) -> Elem {
        let mut e = self.decode(code);
        for x in e.iter_mut().take(self.n * self.n) {
            *x = self.tower.frob(k, *x);
        }
        self.encode(&e)
    }

    pub fn det(&self, code: Elem) -> u32 {
        self.linalg().det(&self.decode(code)[..self.n * self.n], self.n)
    }

    /// Whether the listed elements are closed under products.
    pub fn is_closed(&self) -> bool {
        let elems = self.elements();
        elems.iter().all(|&a| elems.iter().all(|&b| self.contains(self.mul(a, b))))
    }

    /// Whether entrywise Frobenius maps the group to itself.
    pub fn is_galois_stable(&self) -> bool {
        if matches!(self.members, Members::General) {
            return true;
        }
        self.elements().iter().all(|&a| self.contains(self.frobenius(1, a)))
    }
}

impl Group for MatrixGroupK {
    fn order(&self) -> usize {
        match &self.members {
            Members::Listed(v) => v.len(),
            Members::General => {
                let q = self.tower.order() as u64;
                let qn = q.pow(self.n as u32);
                (0..self.n as u32).map(|i| qn - q.pow(i)).product::<u64>() as usize
            }
        }
    }

    fn identity(&self) -> Elem {
        let mut e = [0u32; MAX_DIM * MAX_DIM];
        for i in 0..self.n {
            e[i * self.n + i] = 1;
        }
        self.encode(&e)
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let n = self.n;
        let (x, y) = (self.decode(a), self.decode(b));
        self.encode(&self.linalg().mul(&x[..n * n], &y[..n * n], n, n, n))
    }

    fn inv(&self, a: Elem) -> Elem {
        let n = self.n;
        let (_, inv) = self.linalg().det_inv(&self.decode(a)[..n * n], n);
        self.encode(&inv.expect("group elements are invertible"))
    }

    fn code_bound(&self) -> u64 {
        (self.tower.order() as u64).pow((self.n * self.n) as u32)
    }

    fn elements(&self) -> Cow<'_, [Elem]> {
        Cow::Borrowed(self.cache.get_or_init(|| {
            let n = self.n;
            par::filter_map_range(self.code_bound() as usize, |c| {
                let code = c as Elem;
                (self.linalg().det(&self.decode(code)[..n * n], n) != 0).then_some(code)
            })
        }))
    }

    fn describe(&self, a: Elem) -> String {
        let e = self.decode(a);
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| e[i * self.n + j].to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

/// `Gal(K/k) ≅ C_m` acting on a matrix group by entrywise Frobenius. The
/// element of the actor sending point `0` to `k` acts as `x ↦ x^(q^k)`.
#[derive(Clone, Debug)]
pub struct FrobeniusAction<'a> {
    actor: FiniteGroup,
    powers: Vec<u32>,
    group: &'a MatrixGroupK,
}

impl<'a> FrobeniusAction<'a> {
    pub fn new(group: &'a MatrixGroupK) -> Result<Self> {
        if !group.is_galois_stable() {
            return Err(Error::NotInvariant);
        }
        let actor = FiniteGroup::cyclic(group.tower.ext_degree() as usize);
        let powers = (0..actor.order() as Elem)
            .map(|g| actor.element(g).apply(0) as u32)
            .collect();
        Ok(FrobeniusAction { actor, powers, group })
    }

    /// The Frobenius exponent `k` of an actor element.
    pub fn power(&self, gamma: Elem) -> u32 {
        self.powers[gamma as usize]
    }

    /// The actor element acting as `x ↦ x^(q^k)`.
    pub fn element_of_power(&self, k: u32) -> Elem {
        self.powers.iter().position(|&p| p == k % self.powers.len() as u32).expect("cyclic actor") as Elem
    }
}

impl Action for FrobeniusAction<'_> {
    type Coefficient = MatrixGroupK;

    fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    fn coefficient(&self) -> &MatrixGroupK {
        self.group
    }

    fn act(&self, gamma: Elem, a: Elem) -> Elem {
        self.group.frobenius(self.powers[gamma as usize], a)
    }
}
