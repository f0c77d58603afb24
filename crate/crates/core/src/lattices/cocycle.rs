use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::par;
use crate::quadfields::{ambiguous_principal_classes, h1_units, OKIdeal, QFElement, QuadField, UnitLog};

use super::lattice::{is_galois_stable, OKLattice};
use super::predicates::is_defined_over_k;
use super::ring::{
    det, direct_sum, identity, inverse, mat_conj, mat_mul, rational_matrix, transpose, KMatrix,
};
use super::search::is_unit;

/// The group `G ⊆ GL_n` in which the cocycle takes values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupTag {
    GL,
    SL,
    /// The orthogonal group of the quadratic form with this rational Gram matrix.
    O(Vec<Vec<BigRational>>),
}

impl GroupTag {
    pub fn name(&self) -> &'static str {
        match self {
            GroupTag::GL => "GL",
            GroupTag::SL => "SL",
            GroupTag::O(_) => "O",
        }
    }

    /// Whether `m ∈ G(K)`.
    pub fn contains(&self, field: &QuadField, m: &KMatrix) -> bool {
        match self {
            GroupTag::GL => !det(field, m).is_zero(),
            GroupTag::SL => det(field, m) == QFElement::one(),
            GroupTag::O(g) => {
                let g = rational_matrix(g);
                mat_mul(field, &mat_mul(field, &transpose(m), &g), m) == g
            }
        }
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if let GroupTag::O(g) = self {
            let square = g.len() == n && g.iter().all(|r| r.len() == n);
            if !square || (0..n).any(|i| (0..i).any(|j| g[i][j] != g[j][i])) {
                return Err(Error::DimensionMismatch(format!("Gram matrix must be symmetric {n}×{n}")));
            }
        }
        Ok(())
    }

    fn direct_sum(&self, other: &GroupTag) -> GroupTag {
        match (self, other) {
            (GroupTag::SL, GroupTag::SL) => GroupTag::SL,
            (GroupTag::O(a), GroupTag::O(b)) => {
                let (n, m) = (a.len(), b.len());
                let mut g = vec![vec![BigRational::zero(); n + m]; n + m];
                for i in 0..n {
                    g[i][..n].clone_from_slice(&a[i]);
                }
                for i in 0..m {
                    g[n + i][n..].clone_from_slice(&b[i]);
                }
                GroupTag::O(g)
            }
            _ => GroupTag::GL,
        }
    }
}

/// `a = a_σ` for `Γ = {1, σ}`, valued in the stabilizer `G_K^Λ` of the
/// reference lattice `Λ`.
#[derive(Clone, Debug)]
pub struct LatticeCocycle {
    pub lambda: OKLattice,
    pub tag: GroupTag,
    pub value: KMatrix,
    /// The isomorphism `φ` with `φ(L) = Λ` and `a = σ(φ)·φ⁻¹`, if built from a lattice.
    pub phi: Option<KMatrix>,
    /// A second value `a'` from `φ' = h·φ`, and `c` with `a' = c⁻¹·a·σ(c)`.
    pub alternate: Option<(KMatrix, KMatrix)>,
}

impl LatticeCocycle {
    /// Validates `a·σ(a) = 1`, `a ∈ G(K)` and `a(Λ) = Λ`.
    pub fn new(lambda: OKLattice, tag: GroupTag, value: KMatrix) -> Result<LatticeCocycle> {
        tag.check_dim(lambda.dim())?;
        let c = LatticeCocycle {
            lambda,
            tag,
            value,
            phi: None,
            alternate: None,
        };
        if c.value.len() != c.dim() {
            return Err(Error::DimensionMismatch(format!("{}×{} value on rank {}", c.value.len(), c.value.len(), c.dim())));
        }
        if !c.is_cocycle() {
            return Err(Error::InconsistentAction("a·σ(a) is not the identity".into()));
        }
        if !c.tag.contains(c.field(), &c.value) {
            return Err(Error::InconsistentAction(format!("value is not in {}", c.tag.name())));
        }
        if !preserves(&c.lambda, &c.value)? {
            return Err(Error::InconsistentAction("value does not stabilize the reference lattice".into()));
        }
        Ok(c)
    }

    pub fn field(&self) -> &QuadField {
        self.lambda.field()
    }

    pub fn dim(&self) -> usize {
        self.lambda.dim()
    }

    pub fn is_cocycle(&self) -> bool {
        let f = self.field();
        mat_mul(f, &self.value, &mat_conj(f, &self.value)) == identity(self.dim())
    }

    pub fn det(&self) -> QFElement {
        det(self.field(), &self.value)
    }

    /// Whether `other = c⁻¹·self·σ(c)` with `c ∈ G_K^Λ`.
    pub fn is_cohomologous_via(&self, other: &LatticeCocycle, c: &KMatrix) -> Result<bool> {
        let f = self.field();
        let Some(ci) = inverse(f, c) else { return Ok(false) };
        if !self.tag.contains(f, c) || !preserves(&self.lambda, c)? {
            return Ok(false);
        }
        Ok(mat_mul(f, &mat_mul(f, &ci, &self.value), &mat_conj(f, c)) == other.value)
    }

    /// `a ⊕ b` on `Λ_a ⊕ Λ_b`.
    pub fn direct_sum(&self, other: &LatticeCocycle) -> Result<LatticeCocycle> {
        let lambda = self.lambda.direct_sum(&other.lambda)?;
        let mut c = LatticeCocycle::new(lambda, self.tag.direct_sum(&other.tag), direct_sum(&self.value, &other.value))?;
        if let (Some(x), Some(y)) = (&self.phi, &other.phi) {
            c.phi = Some(direct_sum(x, y));
        }
        Ok(c)
    }
}

/// Whether `m(L) = L`.
pub fn preserves(l: &OKLattice, m: &KMatrix) -> Result<bool> {
    Ok(l.apply(m)? == *l)
}

/// A rational basis (as columns) of a lattice defined over `ℚ`.
pub(crate) fn rational_basis(l: &OKLattice) -> Result<Option<KMatrix>> {
    let r = is_defined_over_k(l)?;
    if !r.defined || r.rational_points.len() != l.dim() {
        return Ok(None);
    }
    Ok(Some(transpose(&rational_matrix(&r.rational_points))))
}

fn diag_first(n: usize, u: QFElement) -> KMatrix {
    let mut m = identity(n);
    m[0][0] = u;
    m
}

/// Columns `u ∈ O_Kⁿ` with coordinates in `[-bound, bound]` and `uᵀ·G·u = target`.
fn columns_with_norm(field: &QuadField, g: &KMatrix, target: &QFElement, bound: i64) -> Vec<Vec<QFElement>> {
    let n = g.len();
    let side = (2 * bound + 1) as usize;
    let count = side.pow(2 * n as u32);
    par::filter_map_range(count, |mut i| {
        let mut u = Vec::with_capacity(n);
        for _ in 0..n {
            let a = (i % side) as i64 - bound;
            i /= side;
            let b = (i % side) as i64 - bound;
            i /= side;
            u.push(QFElement::from_ints(a, b));
        }
        (bilinear(field, g, &u, &u) == *target).then_some(u)
    })
}

fn bilinear(field: &QuadField, g: &KMatrix, x: &[QFElement], y: &[QFElement]) -> QFElement {
    let mut acc = QFElement::zero();
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            if !g[i][j].is_zero() {
                acc = acc.add(&field.mul(&field.mul(xi, &g[i][j]), yj));
            }
        }
    }
    acc
}

/// `U ∈ GL_n(O_K)` with entry coordinates in `[-bound, bound]` and
/// `Uᵀ·G_Λ·U = G_L`, found by extending columns one at a time.
fn orthogonal_transport(field: &QuadField, g_lambda: &KMatrix, g_l: &KMatrix, bound: u64) -> Result<Option<KMatrix>> {
    let n = g_lambda.len();
    let per_column = (2 * bound as u128 + 1).checked_pow(2 * n as u32).unwrap_or(u128::MAX);
    if per_column > super::search::MAX_SHELL {
        return Err(Error::EnumerationBoundExceeded {
            what: "orthogonal columns",
            needed: per_column,
            bound: super::search::MAX_SHELL,
        });
    }
    let b = bound as i64;
    let candidates: Vec<Vec<Vec<QFElement>>> = (0..n).map(|j| columns_with_norm(field, g_lambda, &g_l[j][j], b)).collect();
    fn extend(
        field: &QuadField,
        g: &KMatrix,
        target: &KMatrix,
        candidates: &[Vec<Vec<QFElement>>],
        chosen: &mut Vec<Vec<QFElement>>,
    ) -> Option<KMatrix> {
        let j = chosen.len();
        if j == candidates.len() {
            let u = transpose(chosen);
            return is_unit(field, &det(field, &u)).then_some(u);
        }
        for c in &candidates[j] {
            if (0..j).all(|i| bilinear(field, g, &chosen[i], c) == target[i][j]) {
                chosen.push(c.clone());
                if let Some(u) = extend(field, g, target, candidates, chosen) {
                    return Some(u);
                }
                chosen.pop();
            }
        }
        None
    }
    if n == 0 {
        return Ok(Some(identity(0)));
    }
    let found = par::find_first(candidates[0].len(), |i| {
        let mut chosen = vec![candidates[0][i].clone()];
        extend(field, g_lambda, g_l, &candidates, &mut chosen)
    });
    Ok(found.map(|(_, u)| u))
}

/// The cocycle `a = σ(φ)·φ⁻¹` of a Galois-stable lattice `L` relative to a
/// reference lattice `Λ` defined over `ℚ`, for some `φ ∈ G(K)` with `φ(L) = Λ`.
///
/// For `GL` and `SL` the isomorphism is constructed directly. For `O` the
/// search runs over `φ = B_Λ·U·B_L⁻¹` with `U ∈ GL_n(O_K)` whose entry
/// coordinates are bounded by `bound`; exhausting it gives
/// [`Error::Undecided`]. Nonexistence is certified when `det B_L / det B_Λ`
/// is not a unit.
pub fn cocycle_from_lattice(lambda: &OKLattice, l: &OKLattice, tag: GroupTag, bound: u64) -> Result<LatticeCocycle> {
    let field = lambda.field().clone();
    let n = lambda.dim();
    if l.dim() != n || l.field() != &field {
        return Err(Error::DimensionMismatch(format!("lattices in dimensions {n} and {}", l.dim())));
    }
    tag.check_dim(n)?;
    let b_l = l.basis_matrix()?;
    lambda.basis_matrix()?;
    if !is_galois_stable(l)? {
        return Err(Error::NotStable);
    }
    let b_lambda = rational_basis(lambda)?.ok_or(Error::NotDefinedOverRationals)?;
    let b_l_inv = inverse(&field, &b_l).ok_or(Error::NotFullRank)?;
    let ratio = field.div(&det(&field, &b_l), &det(&field, &b_lambda)).expect("full rank");
    let transport = |u: &KMatrix| mat_mul(&field, &mat_mul(&field, &b_lambda, u), &b_l_inv);
    let phi = match &tag {
        GroupTag::GL => transport(&identity(n)),
        GroupTag::SL => {
            if !is_unit(&field, &ratio) {
                return Err(Error::NoIsomorphismFound(format!(
                    "det(L)/det(Λ) = {} is not a unit, so no determinant-one isomorphism exists",
                    field.describe(&ratio)
                )));
            }
            transport(&diag_first(n, ratio.clone()))
        }
        GroupTag::O(g) => {
            if !is_unit(&field, &ratio) {
                return Err(Error::NoIsomorphismFound(format!(
                    "det(L)/det(Λ) = {} is not a unit, so no isometry maps L onto Λ",
                    field.describe(&ratio)
                )));
            }
            let g = rational_matrix(g);
            let gram = |b: &KMatrix| mat_mul(&field, &mat_mul(&field, &transpose(b), &g), b);
            match orthogonal_transport(&field, &gram(&b_lambda), &gram(&b_l), bound)? {
                Some(u) => transport(&u),
                None => return Err(Error::Undecided(bound)),
            }
        }
    };
    debug_assert!(tag.contains(&field, &phi));
    let value = mat_mul(&field, &mat_conj(&field, &phi), &inverse(&field, &phi).expect("invertible"));
    let mut c = LatticeCocycle::new(lambda.clone(), tag, value)?;
    c.alternate = alternate(&c, &phi, &b_lambda)?;
    c.phi = Some(phi);
    Ok(c)
}

/// Recomputes the cocycle with `φ' = h·φ` for a fixed `h ∈ G_K^Λ` and checks
/// that the two values are cohomologous via `c = σ(h)⁻¹`.
fn alternate(c: &LatticeCocycle, phi: &KMatrix, b_lambda: &KMatrix) -> Result<Option<(KMatrix, KMatrix)>> {
    let field = c.field();
    let n = c.dim();
    let e = match (&c.tag, n) {
        (GroupTag::SL, 1) => return Ok(None),
        (GroupTag::GL, 1) => vec![vec![field.unit_group()?.torsion_generator.clone()]],
        (GroupTag::O(_), _) => {
            let mut m = identity(n);
            m.iter_mut().enumerate().for_each(|(i, r)| r[i] = QFElement::from_ints(-1, 0));
            m
        }
        _ => {
            let mut m = identity(n);
            m[0][1] = field.omega();
            m
        }
    };
    let h = mat_mul(field, &mat_mul(field, b_lambda, &e), &inverse(field, b_lambda).expect("basis"));
    let phi2 = mat_mul(field, &h, phi);
    let value = mat_mul(field, &mat_conj(field, &phi2), &inverse(field, &phi2).expect("invertible"));
    let other = LatticeCocycle::new(c.lambda.clone(), c.tag.clone(), value)?;
    let witness = inverse(field, &mat_conj(field, &h)).expect("invertible");
    if !c.is_cohomologous_via(&other, &witness)? {
        return Err(Error::InconsistentAction("second isomorphism gave a different class".into()));
    }
    Ok(Some((other.value, witness)))
}

/// `det_*` of a cocycle: the class of `σ ↦ det(a_σ)` in `H¹(Γ, U_K)` and the
/// matching principal ambiguous ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetClass {
    pub det: QFElement,
    pub unit: UnitLog,
    pub class: usize,
    pub classes: usize,
    /// A product of ramified primes `(g)` whose cocycle `σ(g)/g` lies in `class`.
    pub ideal: Option<OKIdeal>,
}

impl DetClass {
    pub fn is_trivial(&self) -> bool {
        self.class == 0
    }
}

pub fn det_class(c: &LatticeCocycle) -> Result<DetClass> {
    let field = c.field();
    let d = c.det();
    let unit = field
        .unit_log(&d)?
        .ok_or_else(|| Error::InconsistentAction(format!("det = {} is not a unit", field.describe(&d))))?;
    let h1 = h1_units(field)?;
    let (class, _) = h1
        .classify(unit)
        .ok_or_else(|| Error::InconsistentAction("det(a) is not a cocycle".into()))?;
    let ideal = ambiguous_principal_classes(field)?
        .classes
        .into_iter()
        .find(|a| a.class == class)
        .map(|a| a.ideal);
    Ok(DetClass {
        det: d,
        unit,
        class,
        classes: h1.len(),
        ideal,
    })
}

/// Class of the product in `H¹(Γ, U_K)`, for checking `det_*(a ⊕ b)`.
pub fn det_class_product(field: &QuadField, x: &DetClass, y: &DetClass) -> Result<usize> {
    h1_units(field)?.mul_classes(field, x.class, y.class)
}

/// A diagonal matrix with the given entries.
pub fn diagonal(entries: &[QFElement]) -> KMatrix {
    let n = entries.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { QFElement::zero() }).collect())
        .collect()
}

/// `|N(x)|`.
pub(crate) fn abs_norm(field: &QuadField, x: &QFElement) -> BigRational {
    let n = field.norm(x);
    if n < BigRational::zero() {
        -n
    } else {
        n
    }
}
