//! Étale algebras of dimension `n` split by a Galois extension with group `Γ`,
//! as twisted forms of `kⁿ`.
//!
//! `Aut(kⁿ) = S_n` permuting coordinates, and `Γ` acts trivially on it since
//! `kⁿ` is already split; so `H¹(Γ, S_n)` is `Hom(Γ, S_n)` modulo conjugation.
//! The orbits of the image of `ψ: Γ → S_n` correspond to the field factors
//! of the algebra, with orbit sizes as their degrees.
//!
//! An order is a full-rank sublattice `R ⊆ ℤⁿ` closed under coordinatewise
//! multiplication (not necessarily containing `1`). Its stabilizer
//! `S_n^R = {π : π(R) = R}` controls which forms contain an invariant copy of
//! `R`: they are the image of `H¹(Γ, S_n^R) → H¹(Γ, S_n)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cohomology::{enumerate_h1, induced_map, Cocycle, CoefficientMap, H1Set, DEFAULT_H1_BOUND};
use crate::error::{Error, Result};
use crate::groups::{all_homs, conjugacy_merge, Elem, FiniteGroup, Group, GroupAction, GroupHom, Subgroup, DEFAULT_HOM_BOUND};
use crate::zlattice::hnf;

/// One isomorphism class of `n`-dimensional étale algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleClass {
    pub n: usize,
    /// A representative homomorphism `Γ → S_n`.
    pub rep: GroupHom,
    /// Orbits of the image on `{0, …, n−1}`, each sorted, ordered by least point.
    pub orbits: Vec<Vec<usize>>,
    /// Orbit sizes in increasing order: the degrees of the field factors.
    pub orbit_partition: Vec<usize>,
    /// Index of the class in `H¹(Γ, S_n)` as enumerated by cocycles.
    pub h1_class: usize,
}

impl EtaleClass {
    /// Whether the algebra is a field.
    pub fn is_field(&self) -> bool {
        self.orbit_partition == [self.n]
    }
}

#[derive(Clone, Debug)]
pub struct EtaleClassification {
    pub gamma: FiniteGroup,
    pub symmetric: FiniteGroup,
    pub classes: Vec<EtaleClass>,
    pub hom_count: usize,
    /// `H¹(Γ, S_n)` with trivial action, enumerated independently of the merge.
    pub h1: H1Set,
}

fn orbits_of(symmetric: &FiniteGroup, image: &[Elem], n: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &g in image {
        let perm = symmetric.element(g);
        for x in 0..n {
            let (a, b) = (find(&mut parent, x), find(&mut parent, perm.apply(x)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        match orbits.iter_mut().find(|o| o[0] == r) {
            Some(o) => o.push(x),
            None => orbits.push(vec![x]),
        }
    }
    orbits
}

fn partition(orbits: &[Vec<usize>]) -> Vec<usize> {
    let mut p: Vec<usize> = orbits.iter().map(Vec::len).collect();
    p.sort_unstable();
    p
}

/// `Hom(Γ, S_n)` merged under conjugation by `S_n`, each class checked
/// against the cocycle enumeration of `H¹(Γ, S_n)`.
pub fn classify_etale(gamma: &FiniteGroup, n: usize) -> Result<EtaleClassification> {
    if n == 0 {
        return Err(Error::DimensionMismatch("étale algebras need n ≥ 1".into()));
    }
    let symmetric = FiniteGroup::symmetric(n)?;
    let homs = all_homs(gamma, &symmetric, DEFAULT_HOM_BOUND)?;
    let whole = symmetric.subgroup(symmetric.generators());
    let merged = conjugacy_merge(&homs, &symmetric, &whole)?;
    let action = GroupAction::trivial(gamma.clone(), symmetric.clone());
    let h1 = enumerate_h1(&action, DEFAULT_H1_BOUND)?;
    if h1.len() != merged.len() {
        return Err(Error::InconsistentAction(format!(
            "{} conjugacy classes of homomorphisms but {} cohomology classes",
            merged.len(),
            h1.len()
        )));
    }
    let mut classes = Vec::with_capacity(merged.len());
    for members in &merged {
        let rep = homs[members[0]].clone();
        let class = h1
            .classify(&Cocycle::new(rep.images().to_vec()))
            .ok_or_else(|| Error::InconsistentAction("homomorphism is not a cocycle".into()))?
            .class;
        let orbits = orbits_of(&symmetric, &rep.image_set(), n);
        let orbit_partition = partition(&orbits);
        for &m in &members[1..] {
            if partition(&orbits_of(&symmetric, &homs[m].image_set(), n)) != orbit_partition {
                return Err(Error::InconsistentAction("orbit partition differs within a class".into()));
            }
        }
        classes.push(EtaleClass {
            n,
            rep,
            orbits,
            orbit_partition,
            h1_class: class,
        });
    }
    let mut seen: Vec<usize> = classes.iter().map(|c| c.h1_class).collect();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != classes.len() {
        return Err(Error::InconsistentAction("two conjugacy classes share a cohomology class".into()));
    }
    Ok(EtaleClassification {
        gamma: gamma.clone(),
        symmetric,
        classes,
        hom_count: homs.len(),
        h1,
    })
}

/// A full-rank sublattice of `ℤⁿ` closed under coordinatewise products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSpec {
    pub n: usize,
    /// Upper-triangular Hermite basis, one row per basis vector.
    pub basis: Vec<Vec<BigInt>>,
    /// Whether `(1, …, 1)` lies in the order.
    pub unital: bool,
}

impl OrderSpec {
    pub fn new(n: usize, rows: Vec<Vec<i64>>) -> Result<OrderSpec> {
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("row of length {} in dimension {n}", r.len())));
        }
        let basis = hnf(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect());
        if basis.len() != n || (0..n).any(|i| basis[i][i].is_zero()) {
            return Err(Error::NotFullRank);
        }
        let mut spec = OrderSpec { n, basis, unital: false };
        for i in 0..n {
            for j in i..n {
                let prod: Vec<BigInt> = (0..n).map(|k| &spec.basis[i][k] * &spec.basis[j][k]).collect();
                if !spec.contains(&prod) {
                    return Err(Error::NotMultiplicativelyClosed);
                }
            }
        }
        spec.unital = spec.contains(&vec![BigInt::one(); n]);
        Ok(spec)
    }

    /// `ℤⁿ`.
    pub fn full(n: usize) -> OrderSpec {
        OrderSpec::new(n, (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()).expect("ℤⁿ is an order")
    }

    /// `ℤ^{n−1} ⊕ mℤ`.
    pub fn scaled_last(n: usize, m: i64) -> Result<OrderSpec> {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i != j { 0 } else if i + 1 == n { m } else { 1 }).collect())
            .collect();
        OrderSpec::new(n, rows)
    }

    /// `{a ∈ ℤⁿ : a_{n−1} ≡ a_n (mod m)}`.
    pub fn congruent_pair(n: usize, m: i64) -> Result<OrderSpec> {
        if n < 2 {
            return Err(Error::DimensionMismatch("a congruent pair needs n ≥ 2".into()));
        }
        let mut rows: Vec<Vec<i64>> = (0..n - 2).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        let mut pair = vec![0; n];
        pair[n - 2] = 1;
        pair[n - 1] = 1;
        rows.push(pair);
        let mut last = vec![0; n];
        last[n - 1] = m;
        rows.push(last);
        OrderSpec::new(n, rows)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for (i, row) in self.basis.iter().enumerate() {
            let (q, r) = v[i].div_rem(&row[i]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        v.iter().all(Zero::is_zero)
    }

    /// `[ℤⁿ : R]`.
    pub fn index(&self) -> BigInt {
        (0..self.n).map(|i| self.basis[i][i].clone()).product()
    }
}

/// `S_n^R`: permutations of coordinates mapping `R` onto itself.
pub fn order_stabilizer(spec: &OrderSpec) -> Result<Subgroup> {
    let symmetric = FiniteGroup::symmetric(spec.n)?;
    let n = spec.n;
    let elems: Vec<Elem> = (0..symmetric.order() as Elem)
        .filter(|&g| {
            let p = symmetric.element(g);
            // π moves coordinate i to π(i); index is preserved, so π(R) ⊆ R suffices
            spec.basis.iter().all(|row| {
                let mut moved = vec![BigInt::zero(); n];
                for (i, x) in row.iter().enumerate() {
                    moved[p.apply(i)] = x.clone();
                }
                spec.contains(&moved)
            })
        })
        .collect();
    symmetric.subgroup_from_elements(&elems)
}

fn is_transitive(sub: &Subgroup, n: usize) -> bool {
    orbits_of(&sub.group, &(0..sub.order() as Elem).collect::<Vec<_>>(), n).len() == 1
}

/// True iff `S_n^R` is intransitive; then no field contains a `Γ`-invariant
/// copy of `R` over any splitting extension.
pub fn transitivity_obstruction(spec: &OrderSpec) -> Result<bool> {
    Ok(!is_transitive(&order_stabilizer(spec)?, spec.n))
}

#[derive(Clone, Debug)]
pub struct InvariantOrderForms {
    pub stabilizer: Subgroup,
    pub h1_stabilizer: H1Set,
    /// Class of `classification.classes` hit by each class of `H¹(Γ, S_n^R)`.
    pub images: Vec<usize>,
    /// Indices into `classification.classes` forming the image, increasing.
    pub classes: Vec<usize>,
    pub classification: EtaleClassification,
}

impl InvariantOrderForms {
    /// Whether some field (single orbit of size `n`) lies in the image.
    pub fn contains_field(&self) -> bool {
        self.classes.iter().any(|&c| self.classification.classes[c].is_field())
    }
}

/// The image of `H¹(Γ, S_n^R) → H¹(Γ, S_n)`: the algebras whose extension
/// contains a `Γ`-invariant order isomorphic to `R`.
pub fn invariant_order_forms(gamma: &FiniteGroup, spec: &OrderSpec) -> Result<InvariantOrderForms> {
    let classification = classify_etale(gamma, spec.n)?;
    let stabilizer = order_stabilizer(spec)?;
    let sub_action = GroupAction::trivial(gamma.clone(), stabilizer.group.clone());
    let h1_stabilizer = enumerate_h1(&sub_action, DEFAULT_H1_BOUND)?;
    let full_action = GroupAction::trivial(gamma.clone(), classification.symmetric.clone());
    let map = induced_map(
        &sub_action,
        &h1_stabilizer,
        &full_action,
        &classification.h1,
        &CoefficientMap::inclusion(gamma, &stabilizer),
    )?;
    let by_h1: Vec<usize> = {
        let mut t = vec![usize::MAX; classification.h1.len()];
        for (i, c) in classification.classes.iter().enumerate() {
            t[c.h1_class] = i;
        }
        t
    };
    let images: Vec<usize> = map.images.iter().map(|&h| by_h1[h]).collect();
    let mut classes = images.clone();
    classes.sort_unstable();
    classes.dedup();
    Ok(InvariantOrderForms {
        stabilizer,
        h1_stabilizer,
        images,
        classes,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partitions(c: &EtaleClassification) -> Vec<Vec<usize>> {
        let mut p: Vec<Vec<usize>> = c.classes.iter().map(|c| c.orbit_partition.clone()).collect();
        p.sort();
        p
    }

    #[test]
    fn quadratic_algebras() {
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(partitions(&classify_etale(&c2, 2).unwrap()), vec![vec![1, 1], vec![2]]);
        let three = classify_etale(&c2, 3).unwrap();
        assert_eq!(three.hom_count, 4);
        assert_eq!(partitions(&three), vec![vec![1, 1, 1], vec![1, 2]]);
        let trivial = classify_etale(&FiniteGroup::trivial(1), 4).unwrap();
        assert_eq!(partitions(&trivial), vec![vec![1, 1, 1, 1]]);
    }

    #[test]
    fn cubic_algebras_over_s3() {
        // Γ = S3, n = 3: Q³, Q × quadratic, cyclic cubic is impossible, S3-cubic field
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let c = classify_etale(&s3, 3).unwrap();
        assert_eq!(partitions(&c), vec![vec![1, 1, 1], vec![1, 2], vec![3]]);
        let c3 = classify_etale(&FiniteGroup::cyclic(3), 3).unwrap();
        assert_eq!(partitions(&c3), vec![vec![1, 1, 1], vec![3]]);
    }

    #[test]
    fn order_specs() {
        assert!(OrderSpec::full(3).unital);
        let a = OrderSpec::scaled_last(3, 2).unwrap();
        assert!(!a.unital);
        assert_eq!(a.index(), BigInt::from(2));
        let b = OrderSpec::congruent_pair(3, 2).unwrap();
        assert!(b.unital);
        assert_eq!(OrderSpec::new(2, vec![vec![1, 1], vec![0, 3]]).unwrap().index(), BigInt::from(3));
        assert_eq!(OrderSpec::new(2, vec![vec![1, 2], vec![0, 3]]).unwrap_err(), Error::NotMultiplicativelyClosed);
        assert_eq!(OrderSpec::new(2, vec![vec![1, 1]]).unwrap_err(), Error::NotFullRank);
    }

    #[test]
    fn stabilizers() {
        assert_eq!(order_stabilizer(&OrderSpec::full(3)).unwrap().order(), 6);
        let a = order_stabilizer(&OrderSpec::scaled_last(3, 2).unwrap()).unwrap();
        assert_eq!(a.order(), 2);
        assert!(a.group.elements().iter().all(|&g| a.group.element(g).apply(2) == 2));
        let b = order_stabilizer(&OrderSpec::congruent_pair(3, 2).unwrap()).unwrap();
        assert_eq!(b.order(), 2);
        assert!(b.group.elements().iter().all(|&g| b.group.element(g).apply(0) == 0));
        assert!(!transitivity_obstruction(&OrderSpec::full(3)).unwrap());
        assert!(transitivity_obstruction(&OrderSpec::scaled_last(3, 2).unwrap()).unwrap());
        assert!(transitivity_obstruction(&OrderSpec::congruent_pair(3, 2).unwrap()).unwrap());
    }

    #[test]
    fn invariant_forms() {
        let c2 = FiniteGroup::cyclic(2);
        let full = invariant_order_forms(&c2, &OrderSpec::full(3)).unwrap();
        assert_eq!(full.classes.len(), full.classification.classes.len());
        let scaled = invariant_order_forms(&c2, &OrderSpec::scaled_last(3, 2).unwrap()).unwrap();
        assert_eq!(scaled.classes.len(), 2);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let pair = invariant_order_forms(&s3, &OrderSpec::congruent_pair(3, 2).unwrap()).unwrap();
        assert!(!pair.contains_field());
        assert!(invariant_order_forms(&s3, &OrderSpec::full(3)).unwrap().contains_field());
    }
}
