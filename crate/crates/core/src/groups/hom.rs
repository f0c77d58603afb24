use std::collections::HashMap;

use super::{Elem, FiniteGroup, Group, Subgroup};
use crate::error::{Error, Result};
use crate::par;

pub const DEFAULT_HOM_BOUND: u128 = 10_000_000;

/// A homomorphism between two [`FiniteGroup`]s, stored as the image of every
/// source element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    images: Vec<Elem>,
}

impl GroupHom {
    /// Checks the homomorphism property exhaustively.
    pub fn from_images(source: &FiniteGroup, target: &FiniteGroup, images: Vec<Elem>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for a group of order {}",
                images.len(),
                source.order()
            )));
        }
        for x in 0..source.order() as Elem {
            for y in 0..source.order() as Elem {
                let lhs = images[source.mul(x, y) as usize];
                let rhs = target.mul(images[x as usize], images[y as usize]);
                if lhs != rhs {
                    return Err(Error::NotAnAutomorphism(format!(
                        "image of {} is not multiplicative",
                        source.describe(x)
                    )));
                }
            }
        }
        Ok(GroupHom { images })
    }

    pub fn trivial(source: &FiniteGroup) -> Self {
        GroupHom {
            images: vec![0; source.order()],
        }
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    /// The image subgroup, as sorted target indices.
    pub fn image_set(&self) -> Vec<Elem> {
        let mut v = self.images.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Every homomorphism `source → target`, in lexicographic order of the images
/// of the source's irredundant generators.
///
/// Candidates assign to each generator a target element whose order divides
/// the generator's; a candidate is kept when it extends consistently along
/// every edge of the source's Cayley graph, which checks all relations of the
/// multiplication table.
pub fn all_homs(source: &FiniteGroup, target: &FiniteGroup, bound: u128) -> Result<Vec<GroupHom>> {
    let gens = source.irredundant_generators();
    let tree = source.spanning_tree(&gens);
    let choices: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&s| {
            let ord = source.element_order(s);
            (0..target.order() as Elem)
                .filter(|&t| ord % target.element_order(t) == 0)
                .collect()
        })
        .collect();
    let total = choices
        .iter()
        .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
        .unwrap_or(u128::MAX);
    if total > bound {
        return Err(Error::EnumerationBoundExceeded {
            what: "homomorphism candidates",
            needed: total,
            bound,
        });
    }
    let n = source.order();
    let homs = par::filter_map_range(total as usize, |idx| {
        let mut rest = idx;
        let mut assign = Vec::with_capacity(gens.len());
        for c in choices.iter().rev() {
            assign.push(c[rest % c.len()]);
            rest /= c.len();
        }
        assign.reverse();
        let mut images = vec![0 as Elem; n];
        for &(x, s, y) in &tree {
            images[x as usize] = target.mul(assign[s], images[y as usize]);
        }
        for y in 0..n as Elem {
            for (s, &g) in gens.iter().enumerate() {
                if images[source.mul(g, y) as usize] != target.mul(assign[s], images[y as usize]) {
                    return None;
                }
            }
        }
        Some(GroupHom { images })
    });
    Ok(homs)
}

/// Partitions `homs` into orbits under post-composition with conjugation by
/// elements of `by ≤ target`. Classes are listed by their first member, and
/// each class lists member indices in increasing order.
pub fn conjugacy_merge(homs: &[GroupHom], target: &FiniteGroup, by: &Subgroup) -> Result<Vec<Vec<usize>>> {
    if let Some(first) = homs.first() {
        if homs.iter().any(|h| h.images.len() != first.images.len()) {
            return Err(Error::MismatchedHoms);
        }
        if homs.iter().flat_map(|h| h.images.iter()).any(|&x| x as usize >= target.order()) {
            return Err(Error::MismatchedHoms);
        }
    }
    if by.group.degree() != target.degree() {
        return Err(Error::MismatchedHoms);
    }
    let lookup: HashMap<&[Elem], usize> = homs
        .iter()
        .enumerate()
        .map(|(i, h)| (h.images.as_slice(), i))
        .collect();
    let mut class_of = vec![usize::MAX; homs.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..homs.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = Vec::new();
        for &b in &by.embedding {
            let conj: Vec<Elem> = homs[i].images.iter().map(|&x| target.conjugate(x, b)).collect();
            if let Some(&j) = lookup.get(conj.as_slice()) {
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Perm;

    fn c2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    #[test]
    fn hom_counts() {
        let s2 = FiniteGroup::symmetric(2).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let s5 = FiniteGroup::symmetric(5).unwrap();
        assert_eq!(all_homs(&c2(), &s2, DEFAULT_HOM_BOUND).unwrap().len(), 2);
        assert_eq!(all_homs(&c2(), &s3, DEFAULT_HOM_BOUND).unwrap().len(), 4);
        assert_eq!(all_homs(&FiniteGroup::trivial(1), &s5, DEFAULT_HOM_BOUND).unwrap().len(), 1);
    }

    #[test]
    fn hom_bound_enforced() {
        let s5 = FiniteGroup::symmetric(5).unwrap();
        let s4 = FiniteGroup::symmetric(4).unwrap();
        assert!(matches!(
            all_homs(&s4, &s5, 10),
            Err(Error::EnumerationBoundExceeded { .. })
        ));
    }

    #[test]
    fn merge_examples() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let all_s3 = s3.subgroup(s3.generators());
        let homs = all_homs(&c2(), &s3, DEFAULT_HOM_BOUND).unwrap();
        assert_eq!(conjugacy_merge(&homs, &s3, &all_s3).unwrap().len(), 2);

        let s2 = FiniteGroup::symmetric(2).unwrap();
        let all_s2 = s2.subgroup(s2.generators());
        let homs2 = all_homs(&c2(), &s2, DEFAULT_HOM_BOUND).unwrap();
        assert_eq!(conjugacy_merge(&homs2, &s2, &all_s2).unwrap().len(), 2);

        let single = vec![GroupHom::trivial(&c2())];
        assert_eq!(conjugacy_merge(&single, &s3, &all_s3).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn mismatched_homs_rejected() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let all_s3 = s3.subgroup(s3.generators());
        let homs = vec![GroupHom::trivial(&c2()), GroupHom::trivial(&FiniteGroup::cyclic(3))];
        assert_eq!(conjugacy_merge(&homs, &s3, &all_s3), Err(Error::MismatchedHoms));
    }

    #[test]
    fn from_images_checks_multiplicativity() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let t = s3.index_of(&Perm::parse_cycles(3, "(0 1)").unwrap()).unwrap();
        assert!(GroupHom::from_images(&c2(), &s3, vec![0, t]).is_ok());
        let r = s3.index_of(&Perm::parse_cycles(3, "(0 1 2)").unwrap()).unwrap();
        assert!(GroupHom::from_images(&c2(), &s3, vec![0, r]).is_err());
    }
}
