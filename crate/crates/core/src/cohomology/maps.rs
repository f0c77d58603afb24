use crate::error::{Error, Result};
use crate::groups::{Action, Elem, FiniteGroup, Group, GroupAction, Subgroup};

use super::{enumerate_h1, Cocycle, H1Set, DEFAULT_H1_BOUND};

/// A group homomorphism `A → B` on element codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemMap {
    /// `A` and `B` share their element codes (e.g. a matrix subgroup in `GL`).
    Identity,
    /// Every element goes to the given element (the identity of `B`).
    Constant(Elem),
    /// `table[a]` is the image of the element with code `a`.
    Table(Vec<Elem>),
}

impl ElemMap {
    pub fn apply(&self, a: Elem) -> Elem {
        match self {
            ElemMap::Identity => a,
            ElemMap::Constant(b) => *b,
            ElemMap::Table(t) => t[a as usize],
        }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ElemMap, source_codes: &[Elem]) -> ElemMap {
        match (self, first) {
            (ElemMap::Identity, f) => f.clone(),
            (g, ElemMap::Identity) => g.clone(),
            (g, ElemMap::Constant(b)) => ElemMap::Constant(g.apply(*b)),
            (g, ElemMap::Table(_)) => {
                let max = source_codes.iter().copied().max().unwrap_or(0) as usize;
                let mut t = vec![0; max + 1];
                for &a in source_codes {
                    t[a as usize] = g.apply(first.apply(a));
                }
                ElemMap::Table(t)
            }
        }
    }
}

/// A compatible pair: an injective homomorphism `Γ' → Γ` (given by
/// `restriction[γ']`) and an equivariant homomorphism of coefficients.
#[derive(Clone, Debug)]
pub struct CoefficientMap {
    pub restriction: Vec<Elem>,
    pub map: ElemMap,
}

impl CoefficientMap {
    pub fn identity(actor: &FiniteGroup) -> Self {
        CoefficientMap {
            restriction: (0..actor.order() as Elem).collect(),
            map: ElemMap::Identity,
        }
    }

    /// The map to the trivial group, whose only element has code 0.
    pub fn to_trivial(actor: &FiniteGroup) -> Self {
        CoefficientMap {
            restriction: (0..actor.order() as Elem).collect(),
            map: ElemMap::Constant(0),
        }
    }

    /// Inclusion of a subgroup `A ≤ B` with the full actor.
    pub fn inclusion(actor: &FiniteGroup, sub: &Subgroup) -> Self {
        CoefficientMap {
            restriction: (0..actor.order() as Elem).collect(),
            map: ElemMap::Table(sub.embedding.clone()),
        }
    }

    /// Restriction to a subgroup `Γ' ≤ Γ`, keeping the coefficient map.
    pub fn restricted(actor_sub: &Subgroup, map: ElemMap) -> Self {
        CoefficientMap {
            restriction: actor_sub.embedding.clone(),
            map,
        }
    }
}

/// The map `H¹(Γ, A) → H¹(Γ', B)` on class indices, and its kernel (the classes
/// sent to the base point).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub images: Vec<usize>,
    pub kernel: Vec<usize>,
}

/// Pushes every representative of `source_h1` through `f` and classifies the
/// result in `target_h1`.
pub fn induced_map<S: Action, T: Action>(
    source: &S,
    source_h1: &H1Set,
    target: &T,
    target_h1: &H1Set,
    f: &CoefficientMap,
) -> Result<InducedMap> {
    let gamma = source.actor();
    let sub = target.actor();
    if f.restriction.len() != sub.order() {
        return Err(Error::EquivarianceViolation(format!(
            "restriction has {} entries, target actor has order {}",
            f.restriction.len(),
            sub.order()
        )));
    }
    for x in 0..sub.order() as Elem {
        for y in 0..sub.order() as Elem {
            let lhs = f.restriction[sub.mul(x, y) as usize];
            let rhs = gamma.mul(f.restriction[x as usize], f.restriction[y as usize]);
            if lhs != rhs {
                return Err(Error::EquivarianceViolation(
                    "restriction is not a homomorphism of actors".into(),
                ));
            }
        }
    }
    let a_elems = source.coefficient().elements();
    for &g in sub.generators() {
        let big_g = f.restriction[g as usize];
        for &a in a_elems.iter() {
            if f.map.apply(source.act(big_g, a)) != target.act(g, f.map.apply(a)) {
                return Err(Error::EquivarianceViolation(format!(
                    "f(a^g) != f(a)^g at a = {}",
                    source.coefficient().describe(a)
                )));
            }
        }
    }
    for &a in a_elems.iter().take(64) {
        for &b in a_elems.iter().take(64) {
            let ab = source.coefficient().mul(a, b);
            if f.map.apply(ab) != target.coefficient().mul(f.map.apply(a), f.map.apply(b)) {
                return Err(Error::EquivarianceViolation("coefficient map is not multiplicative".into()));
            }
        }
    }
    let mut images = Vec::with_capacity(source_h1.len());
    for rep in source_h1.representatives() {
        let pushed = Cocycle::new(
            f.restriction
                .iter()
                .map(|&g| f.map.apply(rep.value(g)))
                .collect(),
        );
        let cl = target_h1.classify(&pushed).ok_or_else(|| {
            Error::EquivarianceViolation("image of a cocycle is not a cocycle of the target".into())
        })?;
        images.push(cl.class);
    }
    let kernel = images
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == target_h1.base_point())
        .map(|(i, _)| i)
        .collect();
    Ok(InducedMap { images, kernel })
}

/// One localization: the target action and the compatible map into it.
#[derive(Clone, Debug)]
pub struct LocalMap {
    pub target: GroupAction,
    pub map: CoefficientMap,
}

impl LocalMap {
    /// Restriction of `action` to a subgroup of its actor, with identity coefficients.
    pub fn restriction(action: &GroupAction, actor_sub: &Subgroup) -> Self {
        LocalMap {
            target: action.restrict_actor(actor_sub),
            map: CoefficientMap::restricted(actor_sub, ElemMap::Identity),
        }
    }

    /// The map to the trivial coefficient group.
    pub fn to_trivial(action: &GroupAction) -> Self {
        let actor = action.actor().clone();
        LocalMap {
            map: CoefficientMap::to_trivial(&actor),
            target: GroupAction::trivial(actor, FiniteGroup::trivial(1)),
        }
    }
}

/// Kernels of every local map and their intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusKernel {
    pub kernels: Vec<Vec<usize>>,
    pub genus: Vec<usize>,
}

/// `⋂_v ker(H¹(Γ, A) → H¹(Γ_v, A_v))`: the classes that become trivial under
/// every local map.
pub fn genus_kernel<S: Action>(source: &S, h1: &H1Set, locals: &[LocalMap]) -> Result<GenusKernel> {
    let mut genus: Vec<usize> = (0..h1.len()).collect();
    let mut kernels = Vec::with_capacity(locals.len());
    for local in locals {
        let target_h1 = enumerate_h1(&local.target, DEFAULT_H1_BOUND)?;
        let induced = induced_map(source, h1, &local.target, &target_h1, &local.map)?;
        genus.retain(|c| induced.kernel.contains(c));
        kernels.push(induced.kernel);
    }
    Ok(GenusKernel { kernels, genus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Perm;

    #[test]
    fn identity_and_trivial_maps() {
        let act = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
        let h1 = enumerate_h1(&act, DEFAULT_H1_BOUND).unwrap();
        let id = induced_map(&act, &h1, &act, &h1, &CoefficientMap::identity(act.actor())).unwrap();
        assert_eq!(id.images, vec![0, 1]);
        assert_eq!(id.kernel, vec![h1.base_point()]);

        let local = LocalMap::to_trivial(&act);
        let triv_h1 = enumerate_h1(&local.target, DEFAULT_H1_BOUND).unwrap();
        let triv = induced_map(&act, &h1, &local.target, &triv_h1, &local.map).unwrap();
        assert_eq!(triv.kernel, vec![0, 1]);
    }

    #[test]
    fn non_equivariant_map_rejected() {
        // C2 acting on C3 by inversion, mapped identically onto C3 with trivial action
        let inv = GroupAction::from_generator_images(
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            &[vec![Perm::parse_cycles(3, "(0 2 1)").unwrap()]],
        )
        .unwrap();
        let triv = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
        let h_inv = enumerate_h1(&inv, DEFAULT_H1_BOUND).unwrap();
        let h_triv = enumerate_h1(&triv, DEFAULT_H1_BOUND).unwrap();
        assert!(matches!(
            induced_map(&inv, &h_inv, &triv, &h_triv, &CoefficientMap::identity(inv.actor())),
            Err(Error::EquivarianceViolation(_))
        ));
    }

    #[test]
    fn genus_kernel_examples() {
        let act = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
        let h1 = enumerate_h1(&act, DEFAULT_H1_BOUND).unwrap();
        let full = act.actor().subgroup(act.actor().generators());
        let g = genus_kernel(&act, &h1, &[LocalMap::restriction(&act, &full)]).unwrap();
        assert_eq!(g.genus, vec![h1.base_point()]);
        let g = genus_kernel(&act, &h1, &[LocalMap::to_trivial(&act)]).unwrap();
        assert_eq!(g.genus, vec![0, 1]);
        let none = genus_kernel(&act, &h1, &[]).unwrap();
        assert_eq!(none.genus.len(), h1.len());
    }
}
