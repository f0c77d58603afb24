use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::cohomology::{enumerate_h1, Classification, Cocycle, H1Set};
use crate::error::{Error, Result};
use crate::groups::{Action, Elem, Group};

use super::tensor::{act_on_family, stabilizer_of_family};
use super::{FrobeniusAction, GaloisFieldTower, MatrixGroupK, TensorFamily};

/// One `GL_n(k)`-orbit of `Γ`-invariant points of the `GL_n(K)`-orbit of a family.
#[derive(Clone, Debug)]
pub struct FormOrbit {
    /// Smallest coefficient vector in the orbit.
    pub representative: Vec<u32>,
    pub size: usize,
    /// `b ∈ GL_n(K)` with `b(fam) = representative`.
    pub transporter: Elem,
    /// Class of `γ ↦ b⁻¹·b^γ` in `H¹(Γ, H_K)`, with the witness from the
    /// class representative.
    pub class: Classification,
}

#[derive(Clone, Debug)]
pub struct FormClassification {
    pub orbit_size: usize,
    pub invariant_points: usize,
    pub orbits: Vec<FormOrbit>,
    pub stabilizer_order: usize,
    pub h1: H1Set,
    /// Whether orbits and `H¹` classes correspond one to one.
    pub bijective: bool,
}

/// Classifies the `k`-forms of a family defined over `k`: the `GL_n(k)`-orbits
/// on the `Γ`-invariant part of `X = GL_n(K)·fam`, matched with
/// `H¹(Γ, Stab(fam))` through `b(fam) ↦ [γ ↦ b⁻¹·b^γ]`.
pub fn classify_forms(tower: &Arc<GaloisFieldTower>, fam: &TensorFamily, bound: u64) -> Result<FormClassification> {
    fam.check_defined_over_base(tower)?;
    let n = fam.dim();
    let gl = MatrixGroupK::general(tower.clone(), n, bound)?;
    let glk = MatrixGroupK::base_general(tower.clone(), n, bound)?;
    let stab = stabilizer_of_family(&gl, fam)?;

    let mut transporter: HashMap<Vec<u32>, Elem> = HashMap::new();
    for &g in gl.elements().iter() {
        transporter.entry(act_on_family(&gl, g, fam)).or_insert(g);
    }
    let mut invariant: Vec<Vec<u32>> = transporter
        .keys()
        .filter(|x| x.iter().all(|&c| tower.is_base(c)))
        .cloned()
        .collect();
    invariant.sort();

    let action = FrobeniusAction::new(&stab)?;
    let h1 = enumerate_h1(&action, bound as u128)?;

    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut orbits = Vec::new();
    for x in &invariant {
        if seen.contains(x) {
            continue;
        }
        let point_fam = fam.with_point(x);
        let members: BTreeSet<Vec<u32>> = glk.elements().iter().map(|&h| act_on_family(&gl, h, &point_fam)).collect();
        let b = transporter[x];
        let cocycle = frobenius_coboundary(&gl, &action, b);
        let class = h1.classify(&cocycle).ok_or_else(|| {
            Error::EquivarianceViolation("transporter cocycle does not take values in the stabilizer".into())
        })?;
        orbits.push(FormOrbit {
            representative: x.clone(),
            size: members.len(),
            transporter: b,
            class,
        });
        seen.extend(members);
    }
    let classes: BTreeSet<usize> = orbits.iter().map(|o| o.class.class).collect();
    let bijective = classes.len() == orbits.len() && classes.len() == h1.len();
    Ok(FormClassification {
        orbit_size: transporter.len(),
        invariant_points: invariant.len(),
        orbits,
        stabilizer_order: stab.order(),
        h1,
        bijective,
    })
}

/// `γ ↦ b⁻¹·b^γ` for `b ∈ GL_n(K)`, with values read as elements of the
/// action's coefficient group (a subgroup sharing the matrix codes).
fn frobenius_coboundary(gl: &MatrixGroupK, action: &FrobeniusAction<'_>, b: Elem) -> Cocycle {
    let b_inv = gl.inv(b);
    Cocycle::new(
        (0..action.actor().order() as Elem)
            .map(|g| gl.mul(b_inv, gl.frobenius(action.power(g), b)))
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hilbert90 {
    pub group_order: usize,
    pub cocycles: usize,
    pub classes: usize,
}

impl Hilbert90 {
    pub fn holds(&self) -> bool {
        self.classes == 1
    }
}

/// Enumerates `H¹(Γ, GL_n(K))` under entrywise Frobenius.
pub fn hilbert90_check(tower: &Arc<GaloisFieldTower>, n: usize, bound: u64) -> Result<Hilbert90> {
    let gl = MatrixGroupK::general(tower.clone(), n, bound)?;
    let action = FrobeniusAction::new(&gl)?;
    let h1 = enumerate_h1(&action, bound as u128)?;
    Ok(Hilbert90 {
        group_order: gl.order(),
        cocycles: h1.cocycles().len(),
        classes: h1.len(),
    })
}

/// The `k`-classes of forms falling into one `K`-class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormBucket {
    /// Indices into [`QuadraticFormTable::k_classes`].
    pub members: Vec<usize>,
    pub orthogonal_order: usize,
    /// `|H¹(Γ, O(Q)_K)|` for the first member `Q`.
    pub h1_classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFormTable {
    pub n: usize,
    /// A Gram matrix for each `GL_n(k)`-class of nonsingular symmetric forms.
    pub k_classes: Vec<Vec<u32>>,
    pub buckets: Vec<FormBucket>,
}

impl QuadraticFormTable {
    /// Whether every bucket has exactly `|H¹|` members.
    pub fn consistent(&self) -> bool {
        self.buckets.iter().all(|b| b.members.len() == b.h1_classes)
    }
}

/// Brute-force classification of nonsingular quadratic forms in `n` variables
/// over `k`, grouped by equivalence over `K`, with each group compared to the
/// Galois cohomology of the orthogonal group. Forms are handled through their
/// Gram matrices, so the characteristic must be odd.
pub fn quadratic_form_oracle(tower: &Arc<GaloisFieldTower>, n: usize, bound: u64) -> Result<QuadraticFormTable> {
    if tower.characteristic() == 2 {
        return Err(Error::Unsupported(
            "quadratic forms in characteristic 2 are not determined by a Gram matrix".into(),
        ));
    }
    if n == 0 {
        return Ok(QuadraticFormTable {
            n,
            k_classes: vec![Vec::new()],
            buckets: vec![FormBucket {
                members: vec![0],
                orthogonal_order: 1,
                h1_classes: 1,
            }],
        });
    }
    let gl = MatrixGroupK::general(tower.clone(), n, bound)?;
    let glk = MatrixGroupK::base_general(tower.clone(), n, bound)?;
    let base = tower.base_elements();
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let count = (base.len() as u64).pow(upper.len() as u32);
    let la = gl.linalg();

    let mut forms: Vec<Vec<u32>> = Vec::new();
    for idx in 0..count {
        let mut rest = idx as usize;
        let mut gram = vec![0u32; n * n];
        for &(i, j) in &upper {
            let v = base[rest % base.len()];
            rest /= base.len();
            gram[i * n + j] = v;
            gram[j * n + i] = v;
        }
        if la.det(&gram, n) != 0 {
            forms.push(gram);
        }
    }
    forms.sort();

    let mut class_of: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut k_classes = Vec::new();
    for gram in &forms {
        if class_of.contains_key(gram) {
            continue;
        }
        let fam = TensorFamily::bilinear_form(n, gram.clone())?;
        for &h in glk.elements().iter() {
            class_of.insert(act_on_family(&gl, h, &fam), k_classes.len());
        }
        k_classes.push(gram.clone());
    }

    let mut bucket_of = vec![usize::MAX; k_classes.len()];
    let mut buckets = Vec::new();
    for i in 0..k_classes.len() {
        if bucket_of[i] != usize::MAX {
            continue;
        }
        let fam = TensorFamily::bilinear_form(n, k_classes[i].clone())?;
        let orbit: HashSet<Vec<u32>> = gl.elements().iter().map(|&g| act_on_family(&gl, g, &fam)).collect();
        let members: Vec<usize> = (i..k_classes.len())
            .filter(|&j| bucket_of[j] == usize::MAX && orbit.contains(&k_classes[j]))
            .collect();
        for &j in &members {
            bucket_of[j] = buckets.len();
        }
        let orth = stabilizer_of_family(&gl, &fam)?;
        let h1 = enumerate_h1(&FrobeniusAction::new(&orth)?, bound as u128)?;
        buckets.push(FormBucket {
            members,
            orthogonal_order: orth.order(),
            h1_classes: h1.len(),
        });
    }
    Ok(QuadraticFormTable { n, k_classes, buckets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorforms::{Tensor, DEFAULT_MATRIX_BOUND};

    fn tower(p: u32, a: u32, m: u32) -> Arc<GaloisFieldTower> {
        Arc::new(GaloisFieldTower::new(p, a, m).unwrap())
    }

    #[test]
    fn squares_and_non_squares_over_f3() {
        let t = tower(3, 1, 2);
        let fam = TensorFamily::bilinear_form(1, vec![1]).unwrap();
        let r = classify_forms(&t, &fam, DEFAULT_MATRIX_BOUND).unwrap();
        assert_eq!(r.orbits.len(), 2);
        assert_eq!(r.h1.len(), 2);
        assert!(r.bijective);
    }

    #[test]
    fn empty_family_has_one_form() {
        for (p, a, m) in [(2, 1, 2), (3, 1, 2), (2, 1, 3)] {
            let r = classify_forms(&tower(p, a, m), &TensorFamily::empty(1), DEFAULT_MATRIX_BOUND).unwrap();
            assert_eq!(r.orbits.len(), 1);
            assert!(r.bijective);
        }
    }

    #[test]
    fn gl_invariant_family() {
        let fam = TensorFamily::new(2, vec![Tensor { l: 1, m: 1, coeffs: vec![1, 0, 0, 1] }]).unwrap();
        let r = classify_forms(&tower(2, 1, 2), &fam, DEFAULT_MATRIX_BOUND).unwrap();
        assert_eq!(r.orbit_size, 1);
        assert_eq!(r.orbits.len(), 1);
        assert!(r.bijective);
    }

    #[test]
    fn family_outside_base_field_rejected() {
        let fam = TensorFamily::bilinear_form(1, vec![3]).unwrap();
        assert!(matches!(
            classify_forms(&tower(3, 1, 2), &fam, DEFAULT_MATRIX_BOUND),
            Err(Error::NotDefinedOverBase(3))
        ));
    }

    #[test]
    fn hilbert90_small() {
        for (p, m, n) in [(2, 2, 1), (3, 2, 1), (2, 1, 2), (2, 2, 2)] {
            let h = hilbert90_check(&tower(p, 1, m), n, DEFAULT_MATRIX_BOUND).unwrap();
            assert!(h.holds(), "q={p} m={m} n={n}");
        }
        let h = hilbert90_check(&tower(2, 1, 2), 1, DEFAULT_MATRIX_BOUND).unwrap();
        assert_eq!(h.cocycles, 3);
    }

    #[test]
    fn quadratic_forms_over_f3() {
        let t = tower(3, 1, 2);
        let one = quadratic_form_oracle(&t, 1, DEFAULT_MATRIX_BOUND).unwrap();
        assert_eq!(one.k_classes.len(), 2);
        assert_eq!(one.buckets.len(), 1);
        assert_eq!(one.buckets[0].h1_classes, 2);
        assert!(one.consistent());
        let two = quadratic_form_oracle(&t, 2, DEFAULT_MATRIX_BOUND).unwrap();
        assert!(two.consistent());
        let zero = quadratic_form_oracle(&t, 0, DEFAULT_MATRIX_BOUND).unwrap();
        assert_eq!(zero.k_classes.len(), 1);
        assert!(quadratic_form_oracle(&tower(2, 1, 2), 1, DEFAULT_MATRIX_BOUND).is_err());
    }
}
