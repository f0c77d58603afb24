use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, AtomicUsize, Ordering};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::groups::{Action, Elem, Group};
use crate::par;

/// Default cap on the number of generator assignments tried by [`enumerate_h1`].
pub const DEFAULT_H1_BOUND: u128 = 10_000_000;

/// A 1-cocycle, as its value at every element of the acting group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cocycle {
    values: Vec<Elem>,
}

impl Cocycle {
    pub fn new(values: Vec<Elem>) -> Self {
        Cocycle { values }
    }

    pub fn trivial<A: Action>(action: &A) -> Self {
        let id = action.coefficient().identity();
        Cocycle {
            values: vec![id; action.actor().order()],
        }
    }

    pub fn value(&self, gamma: Elem) -> Elem {
        self.values[gamma as usize]
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    /// Checks `α(hg) = α(h)·α(g)^h` for every pair.
    pub fn is_cocycle<A: Action>(&self, action: &A) -> bool {
        let gamma = action.actor();
        let coeff = action.coefficient();
        let n = gamma.order();
        if self.values.len() != n {
            return false;
        }
        (0..n as Elem).all(|h| {
            (0..n as Elem).all(|g| {
                self.value(gamma.mul(h, g)) == coeff.mul(self.value(h), action.act(h, self.value(g)))
            })
        })
    }

    /// The coboundary `γ ↦ a⁻¹·a^γ`.
    pub fn coboundary<A: Action>(action: &A, a: Elem) -> Self {
        Cocycle::trivial(action).twist(action, a)
    }

    /// `γ ↦ a⁻¹·α(γ)·a^γ`, the cocycle `a` relates to `self`.
    pub fn twist<A: Action>(&self, action: &A, a: Elem) -> Self {
        let coeff = action.coefficient();
        let a_inv = coeff.inv(a);
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(g, &v)| coeff.mul(coeff.mul(a_inv, v), action.act(g as Elem, a)))
            .collect();
        Cocycle { values }
    }
}

/// Where [`H1Set::classify`] places a cocycle: its class and an element `a`
/// with `cocycle = representative.twist(a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: usize,
    pub witness: Elem,
}

/// The computed set `H¹(Γ, A)`: every cocycle, its class, and a witness
/// relating it to the class representative.
#[derive(Clone, Debug)]
pub struct H1Set {
    gens: Vec<Elem>,
    radix: u128,
    cocycles: Vec<Cocycle>,
    key_index: HashMap<u128, u32>,
    class_of: Vec<u32>,
    witness: Vec<Elem>,
    representatives: Vec<u32>,
    base_point: usize,
}

impl H1Set {
    /// Number of cohomology classes.
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representative(&self, class: usize) -> &Cocycle {
        &self.cocycles[self.representatives[class] as usize]
    }

    pub fn representatives(&self) -> impl Iterator<Item = &Cocycle> {
        self.representatives.iter().map(|&i| &self.cocycles[i as usize])
    }

    /// Class of the trivial cocycle.
    pub fn base_point(&self) -> usize {
        self.base_point
    }

    /// Every cocycle, in enumeration order.
    pub fn cocycles(&self) -> &[Cocycle] {
        &self.cocycles
    }

    /// Class and witness of the `i`-th enumerated cocycle.
    pub fn cocycle_class(&self, i: usize) -> Classification {
        Classification {
            class: self.class_of[i] as usize,
            witness: self.witness[i],
        }
    }

    /// Indices of the cocycles in `class`.
    pub fn class_members(&self, class: usize) -> Vec<usize> {
        (0..self.cocycles.len())
            .filter(|&i| self.class_of[i] as usize == class)
            .collect()
    }

    /// The actor generators whose values determine a cocycle.
    pub fn key_generators(&self) -> &[Elem] {
        &self.gens
    }

    fn key_of(&self, values: &[Elem]) -> u128 {
        key_from(self.gens.iter().map(|&g| values[g as usize]), self.radix)
    }

    /// Class and witness for a cocycle, or `None` if it is not one of the
    /// enumerated cocycles (e.g. fails the cocycle identity).
    pub fn classify(&self, cocycle: &Cocycle) -> Option<Classification> {
        if self.cocycles.first().is_some_and(|c| c.values.len() != cocycle.values.len()) {
            return None;
        }
        let id = *self.key_index.get(&self.key_of(&cocycle.values))? as usize;
        (self.cocycles[id] == *cocycle).then(|| self.cocycle_class(id))
    }
}

fn key_from(values: impl Iterator<Item = Elem>, radix: u128) -> u128 {
    let mut key = 0u128;
    let mut scale = 1u128;
    for v in values {
        key += v as u128 * scale;
        scale = scale.wrapping_mul(radix);
    }
    key
}

/// Enumerates `H¹(Γ, A)`.
///
/// Cocycles are generated by assigning values to an irredundant generating set
/// of `Γ` and propagating `α(s·y) = α(s)·α(y)^s` along a spanning tree; an
/// assignment is kept when the identity holds on every Cayley-graph edge,
/// which is sufficient for the full cocycle identity. Classes are the orbits
/// of the twisted action `α ↦ a⁻¹·α·a^γ`, with the first cocycle in
/// enumeration order chosen as representative.
pub fn enumerate_h1<A: Action>(action: &A, bound: u128) -> Result<H1Set> {
    let gamma = action.actor();
    let coeff = action.coefficient();
    let gens = gamma.irredundant_generators();
    let tree = gamma.spanning_tree(&gens);
    let elems = coeff.elements();
    let elems: &[Elem] = &elems;
    let radix = coeff.code_bound() as u128;

    let total = (elems.len() as u128)
        .checked_pow(gens.len() as u32)
        .unwrap_or(u128::MAX);
    if total > bound {
        return Err(Error::EnumerationBoundExceeded {
            what: "cocycle candidates",
            needed: total,
            bound,
        });
    }
    if radix.checked_pow(gens.len() as u32).is_none() {
        return Err(Error::EnumerationBoundExceeded {
            what: "cocycle key space",
            needed: u128::MAX,
            bound: u128::MAX,
        });
    }

    let n = gamma.order();
    let id = coeff.identity();
    let cocycles: Vec<Cocycle> = par::filter_map_range(total as usize, |idx| {
        let mut rest = idx;
        let mut assign: SmallVec<[Elem; 4]> = SmallVec::with_capacity(gens.len());
        for _ in 0..gens.len() {
            assign.push(elems[rest % elems.len()]);
            rest /= elems.len();
        }
        let mut values: SmallVec<[Elem; 32]> = SmallVec::from_elem(id, n);
        for &(x, s, y) in &tree {
            values[x as usize] = coeff.mul(assign[s], action.act(gens[s], values[y as usize]));
        }
        for y in 0..n as Elem {
            for (s, &g) in gens.iter().enumerate() {
                let lhs = values[gamma.mul(g, y) as usize];
                if lhs != coeff.mul(assign[s], action.act(g, values[y as usize])) {
                    return None;
                }
            }
        }
        Some(Cocycle::new(values.to_vec()))
    });

    let key_index: HashMap<u128, u32> = cocycles
        .iter()
        .enumerate()
        .map(|(i, c)| (key_from(gens.iter().map(|&g| c.values[g as usize]), radix), i as u32))
        .collect();

    let class_of: Vec<AtomicU32> = (0..cocycles.len()).map(|_| AtomicU32::new(u32::MAX)).collect();
    let witness_pos: Vec<AtomicUsize> = (0..cocycles.len()).map(|_| AtomicUsize::new(usize::MAX)).collect();
    let mut representatives = Vec::new();
    let mut next = 0usize;
    loop {
        while next < cocycles.len() && class_of[next].load(Ordering::Relaxed) != u32::MAX {
            next += 1;
        }
        if next == cocycles.len() {
            break;
        }
        let class = representatives.len() as u32;
        representatives.push(next as u32);
        let rep = &cocycles[next];
        let rep_gen_values: SmallVec<[Elem; 4]> = gens.iter().map(|&g| rep.values[g as usize]).collect();
        par::for_each_range(elems.len(), |pos| {
            let a = elems[pos];
            let a_inv = coeff.inv(a);
            let twisted = gens
                .iter()
                .zip(&rep_gen_values)
                .map(|(&g, &v)| coeff.mul(coeff.mul(a_inv, v), action.act(g, a)));
            let key = key_from(twisted, radix);
            let id = *key_index
                .get(&key)
                .expect("twisted cocycles are cocycles, so they were enumerated") as usize;
            class_of[id].store(class, Ordering::Relaxed);
            witness_pos[id].fetch_min(pos, Ordering::Relaxed);
        });
    }

    let class_of: Vec<u32> = class_of.into_iter().map(AtomicU32::into_inner).collect();
    let witness: Vec<Elem> = witness_pos
        .into_iter()
        .map(|p| elems[p.into_inner()])
        .collect();
    let trivial_key = key_from(gens.iter().map(|_| id), radix);
    let base_point = class_of[key_index[&trivial_key] as usize] as usize;
    Ok(H1Set {
        gens,
        radix,
        cocycles,
        key_index,
        class_of,
        witness,
        representatives,
        base_point,
    })
}

/// An element `a` with `α(γ) = a⁻¹·β(γ)·a^γ` for every `γ`, or `None` if the
/// cocycles are not cohomologous. The identity is tried first.
pub fn cohomologous<A: Action>(action: &A, alpha: &Cocycle, beta: &Cocycle) -> Result<Option<Elem>> {
    let n = action.actor().order();
    if alpha.values.len() != n || beta.values.len() != n {
        return Err(Error::ActionMismatch);
    }
    let coeff = action.coefficient();
    let relates = |a: Elem| {
        let a_inv = coeff.inv(a);
        (0..n).all(|g| {
            alpha.values[g]
                == coeff.mul(coeff.mul(a_inv, beta.values[g]), action.act(g as Elem, a))
        })
    };
    let id = coeff.identity();
    if relates(id) {
        return Ok(Some(id));
    }
    let elems = coeff.elements();
    Ok(par::find_first(elems.len(), |pos| relates(elems[pos]).then_some(elems[pos])).map(|(_, a)| a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FiniteGroup, GroupAction, Perm};

    fn c2_on_c3_by_inversion() -> GroupAction {
        GroupAction::from_generator_images(
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            &[vec![Perm::parse_cycles(3, "(0 2 1)").unwrap()]],
        )
        .unwrap()
    }

    #[test]
    fn trivial_c2_on_c2_has_two_classes() {
        let act = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
        let h1 = enumerate_h1(&act, DEFAULT_H1_BOUND).unwrap();
        assert_eq!(h1.cocycles().len(), 2);
        assert_eq!(h1.len(), 2);
        assert_eq!(h1.base_point(), 0);
    }

    #[test]
    fn inversion_on_c3_is_one_class() {
        let act = c2_on_c3_by_inversion();
        let h1 = enumerate_h1(&act, DEFAULT_H1_BOUND).unwrap();
        assert_eq!(h1.cocycles().len(), 3);
        assert_eq!(h1.len(), 1);
        for (i, c) in h1.cocycles().iter().enumerate() {
            assert!(c.is_cocycle(&act));
            let cl = h1.cocycle_class(i);
            assert_eq!(&h1.representative(cl.class).twist(&act, cl.witness), c);
        }
    }

    #[test]
    fn trivial_coefficients_give_one_class() {
        let act = GroupAction::trivial(FiniteGroup::symmetric(3).unwrap(), FiniteGroup::trivial(1));
        assert_eq!(enumerate_h1(&act, DEFAULT_H1_BOUND).unwrap().len(), 1);
    }

    #[test]
    fn bound_is_enforced() {
        let act = GroupAction::trivial(FiniteGroup::symmetric(3).unwrap(), FiniteGroup::symmetric(4).unwrap());
        assert!(matches!(
            enumerate_h1(&act, 100),
            Err(Error::EnumerationBoundExceeded { .. })
        ));
    }

    #[test]
    fn witnesses() {
        let act = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
        let h1 = enumerate_h1(&act, DEFAULT_H1_BOUND).unwrap();
        let a = h1.representative(0);
        assert_eq!(cohomologous(&act, a, a).unwrap(), Some(0));
        assert_eq!(cohomologous(&act, h1.representative(0), h1.representative(1)).unwrap(), None);

        let inv = c2_on_c3_by_inversion();
        let triv = Cocycle::trivial(&inv);
        let cob = Cocycle::coboundary(&inv, 1);
        let w = cohomologous(&inv, &cob, &triv).unwrap().unwrap();
        assert_eq!(triv.twist(&inv, w), cob);
        assert!(matches!(
            cohomologous(&inv, &Cocycle::new(vec![0]), &triv),
            Err(Error::ActionMismatch)
        ));
    }

    #[test]
    fn classify_rejects_non_cocycles() {
        let act = c2_on_c3_by_inversion();
        let h1 = enumerate_h1(&act, DEFAULT_H1_BOUND).unwrap();
        assert!(h1.classify(&Cocycle::new(vec![1, 1])).is_none());
        assert!(h1.classify(&Cocycle::new(vec![0, 1])).is_some());
    }
}
