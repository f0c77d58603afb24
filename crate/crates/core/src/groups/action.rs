use std::collections::HashSet;

use super::{Action, Elem, FiniteGroup, Group, Perm, Subgroup};
use crate::error::{Error, Result};

/// An action of a permutation group `Γ` (the actor) on a permutation group `A`
/// (the coefficient) by automorphisms, tabulated as `maps[γ][a] = a^γ`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    actor: FiniteGroup,
    coefficient: FiniteGroup,
    maps: Vec<Vec<Elem>>,
}

impl GroupAction {
    pub fn trivial(actor: FiniteGroup, coefficient: FiniteGroup) -> Self {
        let id: Vec<Elem> = (0..coefficient.order() as Elem).collect();
        let maps = vec![id; actor.order()];
        GroupAction {
            actor,
            coefficient,
            maps,
        }
    }

    /// Builds the action from, for each generator of `actor`, the images of the
    /// generators of `coefficient` under that generator's automorphism.
    pub fn from_generator_images(
        actor: FiniteGroup,
        coefficient: FiniteGroup,
        images: &[Vec<Perm>],
    ) -> Result<Self> {
        if images.len() != actor.generators().len() {
            return Err(Error::InconsistentAction(format!(
                "{} automorphisms given for {} actor generators",
                images.len(),
                actor.generators().len()
            )));
        }
        let autos = images
            .iter()
            .map(|imgs| {
                let idx = imgs
                    .iter()
                    .map(|p| {
                        coefficient.index_of(p).ok_or_else(|| {
                            Error::NotAnAutomorphism(format!("{p} is not in the coefficient group"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                extend_automorphism(&coefficient, &idx)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_generator_automorphisms(actor, coefficient, autos)
    }

    /// Each generator of `actor` acts by conjugation `a ↦ c·a·c⁻¹` with the given
    /// permutation `c`, which must normalize the coefficient group.
    pub fn by_conjugation(actor: FiniteGroup, coefficient: FiniteGroup, conjugators: &[Perm]) -> Result<Self> {
        let images: Vec<Vec<Perm>> = conjugators
            .iter()
            .map(|c| {
                if c.degree() != coefficient.degree() {
                    return Err(Error::InvalidPermutation(format!("conjugator {c} has the wrong degree")));
                }
                let ci = c.inverse();
                Ok(coefficient
                    .generators()
                    .iter()
                    .map(|&g| c.compose(coefficient.element(g)).compose(&ci))
                    .collect())
            })
            .collect::<Result<_>>()?;
        Self::from_generator_images(actor, coefficient, &images)
    }

    /// `autos[j]` is the full table of the automorphism attached to the `j`-th
    /// actor generator. Extends to all of `Γ` by `a^(δγ) = (a^γ)^δ` and checks
    /// that the extension is well defined.
    pub fn from_generator_automorphisms(
        actor: FiniteGroup,
        coefficient: FiniteGroup,
        autos: Vec<Vec<Elem>>,
    ) -> Result<Self> {
        let gens = actor.generators().to_vec();
        let n = coefficient.order();
        let mut maps: Vec<Option<Vec<Elem>>> = vec![None; actor.order()];
        maps[0] = Some((0..n as Elem).collect());
        for (x, s, y) in actor.spanning_tree(&gens) {
            let inner = maps[y as usize].as_ref().expect("tree visits parents first");
            let composed: Vec<Elem> = inner.iter().map(|&a| autos[s][a as usize]).collect();
            maps[x as usize] = Some(composed);
        }
        let maps: Vec<Vec<Elem>> = maps.into_iter().map(|m| m.expect("tree spans the actor")).collect();
        for y in 0..actor.order() as Elem {
            for (s, &g) in gens.iter().enumerate() {
                let x = actor.mul(g, y);
                let expected = maps[y as usize].iter().map(|&a| autos[s][a as usize]);
                if !maps[x as usize].iter().copied().eq(expected) {
                    return Err(Error::InconsistentAction(format!(
                        "automorphisms do not respect the relations of the actor at {}",
                        actor.describe(x)
                    )));
                }
            }
        }
        Ok(GroupAction {
            actor,
            coefficient,
            maps,
        })
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    pub fn coefficient(&self) -> &FiniteGroup {
        &self.coefficient
    }

    pub fn map(&self, gamma: Elem) -> &[Elem] {
        &self.maps[gamma as usize]
    }

    /// `A^Γ`, sorted.
    pub fn invariants(&self) -> Vec<Elem> {
        (0..self.coefficient.order() as Elem)
            .filter(|&a| self.actor.generators().iter().all(|&g| self.maps[g as usize][a as usize] == a))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.maps.iter().all(|m| m.iter().enumerate().all(|(i, &a)| i as Elem == a))
    }

    /// Whether the given coefficient elements (a subgroup) are mapped into
    /// themselves by every actor element.
    pub fn stabilizes(&self, elems: &[Elem]) -> bool {
        let set: HashSet<Elem> = elems.iter().copied().collect();
        self.actor
            .generators()
            .iter()
            .all(|&g| elems.iter().all(|&a| set.contains(&self.maps[g as usize][a as usize])))
    }

    /// The restricted action on a `Γ`-stable subgroup of the coefficient group.
    pub fn restrict_coefficient(&self, sub: &Subgroup) -> Result<GroupAction> {
        if !self.stabilizes(&sub.embedding) {
            return Err(Error::NotStable);
        }
        let maps = self
            .maps
            .iter()
            .map(|m| {
                sub.embedding
                    .iter()
                    .map(|&a| sub.locate(&self.coefficient, m[a as usize]).expect("stable"))
                    .collect()
            })
            .collect();
        Ok(GroupAction {
            actor: self.actor.clone(),
            coefficient: sub.group.clone(),
            maps,
        })
    }

    /// The same coefficient group acted on by a subgroup `Γ' ≤ Γ`.
    pub fn restrict_actor(&self, sub: &Subgroup) -> GroupAction {
        let maps = sub.embedding.iter().map(|&g| self.maps[g as usize].clone()).collect();
        GroupAction {
            actor: sub.group.clone(),
            coefficient: self.coefficient.clone(),
            maps,
        }
    }
}

impl Action for GroupAction {
    type Coefficient = FiniteGroup;

    fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    fn coefficient(&self) -> &FiniteGroup {
        &self.coefficient
    }

    fn act(&self, gamma: Elem, a: Elem) -> Elem {
        self.maps[gamma as usize][a as usize]
    }
}

/// Extends generator images to a full automorphism table of `group`, checking
/// that the result is a bijective homomorphism.
pub(crate) fn extend_automorphism(group: &FiniteGroup, gen_images: &[Elem]) -> Result<Vec<Elem>> {
    let gens = group.generators().to_vec();
    if gen_images.len() != gens.len() {
        return Err(Error::NotAnAutomorphism(format!(
            "{} images for {} generators",
            gen_images.len(),
            gens.len()
        )));
    }
    let n = group.order();
    let mut table = vec![0 as Elem; n];
    for (x, s, y) in group.spanning_tree(&gens) {
        table[x as usize] = group.mul(gen_images[s], table[y as usize]);
    }
    for y in 0..n as Elem {
        for (s, &g) in gens.iter().enumerate() {
            if table[group.mul(g, y) as usize] != group.mul(gen_images[s], table[y as usize]) {
                return Err(Error::NotAnAutomorphism("generator images violate a relation".into()));
            }
        }
    }
    let distinct: HashSet<Elem> = table.iter().copied().collect();
    if distinct.len() != n {
        return Err(Error::NotAnAutomorphism("map is not injective".into()));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inversion_on_c3() -> GroupAction {
        let gamma = FiniteGroup::cyclic(2);
        let a = FiniteGroup::cyclic(3);
        let inv = Perm::parse_cycles(3, "(0 2 1)").unwrap();
        GroupAction::from_generator_images(gamma, a, &[vec![inv]]).unwrap()
    }

    #[test]
    fn inversion_action_tables() {
        let act = inversion_on_c3();
        let a = act.coefficient();
        for x in 0..3 {
            assert_eq!(act.act(1, x), a.inv(x));
        }
        assert_eq!(act.invariants(), vec![0]);
    }

    #[test]
    fn action_axiom_exhaustive() {
        let gamma = FiniteGroup::cyclic(4);
        let a = FiniteGroup::cyclic(5);
        // x ↦ x² generates Aut(C5) ≅ C4
        let sq = a.element(a.generators()[0]).compose(a.element(a.generators()[0]));
        let act = GroupAction::from_generator_images(gamma, a, &[vec![sq]]).unwrap();
        let g = act.actor();
        for x in 0..4 {
            for y in 0..4 {
                for el in 0..5 {
                    assert_eq!(act.act(x, act.act(y, el)), act.act(g.mul(x, y), el));
                }
            }
        }
    }

    #[test]
    fn relation_violation_detected() {
        // an automorphism of order 2 cannot be attached to a generator of order 3
        let gamma = FiniteGroup::cyclic(3);
        let a = FiniteGroup::cyclic(3);
        let inv = Perm::parse_cycles(3, "(0 2 1)").unwrap();
        assert!(matches!(
            GroupAction::from_generator_images(gamma, a, &[vec![inv]]),
            Err(Error::InconsistentAction(_))
        ));
    }

    #[test]
    fn non_automorphism_rejected() {
        let gamma = FiniteGroup::cyclic(2);
        let a = FiniteGroup::cyclic(3);
        assert!(matches!(
            GroupAction::from_generator_images(gamma, a, &[vec![Perm::identity(3)]]),
            Err(Error::NotAnAutomorphism(_))
        ));
    }

    #[test]
    fn conjugation_action_matches_inversion() {
        let gamma = FiniteGroup::cyclic(2);
        let a = FiniteGroup::cyclic(3);
        let conj = GroupAction::by_conjugation(gamma, a, &[Perm::parse_cycles(3, "(1 2)").unwrap()]).unwrap();
        assert_eq!(conj.map(1), inversion_on_c3().map(1));
    }
}
