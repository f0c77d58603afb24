use std::borrow::Cow;
use std::collections::{HashMap, HashSet, VecDeque};

use super::{Elem, Group, Perm};
use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_BOUND: usize = 1_000_000;

/// Groups up to this order carry a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// A permutation group stored with all of its elements.
///
/// Elements are sorted by image list, so index 0 is always the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, Elem>,
    generators: Vec<Elem>,
    inverses: Vec<Elem>,
    table: Option<Vec<Elem>>,
}

impl FiniteGroup {
    pub fn from_generators(degree: usize, gens: &[Perm]) -> Result<Self> {
        Self::from_generators_bounded(degree, gens, DEFAULT_CLOSURE_BOUND)
    }

    pub fn from_generators_bounded(degree: usize, gens: &[Perm], bound: usize) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "{g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.compose(&x);
                if !seen.contains(&y) {
                    if seen.len() >= bound {
                        return Err(Error::ClosureBoundExceeded { bound });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        Ok(Self::assemble(degree, elements, gens))
    }

    /// Parses each generator from cycle notation.
    pub fn from_cycle_strings<S: AsRef<str>>(degree: usize, gens: &[S]) -> Result<Self> {
        let perms = gens
            .iter()
            .map(|g| Perm::parse_cycles(degree, g.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(degree, &perms)
    }

    fn assemble(degree: usize, elements: Vec<Perm>, gens: &[Perm]) -> Self {
        let index: HashMap<Perm, Elem> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as Elem))
            .collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let mut generators: Vec<Elem> = gens.iter().map(|g| index[g]).collect();
        generators.dedup();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)]);
                }
            }
            t
        });
        FiniteGroup {
            degree,
            elements,
            index,
            generators,
            inverses,
            table,
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::assemble(degree, vec![Perm::identity(degree)], &[])
    }

    /// The cyclic group generated by the `n`-cycle `(0 1 … n−1)`.
    pub fn cyclic(n: usize) -> Self {
        let n = n.max(1);
        let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        let gen = Perm::from_images(images).expect("rotation is a permutation");
        let gens = if n > 1 { vec![gen] } else { vec![] };
        Self::from_generators(n, &gens).expect("cyclic group is small")
    }

    /// The full symmetric group on `n` points, generated by `(0 1)` and `(0 1 … n−1)`.
    pub fn symmetric(n: usize) -> Result<Self> {
        let n = n.max(1);
        let mut gens = Vec::new();
        if n > 1 {
            let mut t: Vec<u32> = (0..n as u32).collect();
            t.swap(0, 1);
            gens.push(Perm::from_images(t)?);
        }
        if n > 2 {
            let r: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
            gens.push(Perm::from_images(r)?);
        }
        Self::from_generators(n, &gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, a: Elem) -> &Perm {
        &self.elements[a as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<Elem> {
        self.index.get(p).copied()
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Drops generators that lie in the subgroup generated by the earlier ones.
    pub fn irredundant_generators(&self) -> Vec<Elem> {
        let mut kept: Vec<Elem> = Vec::new();
        let mut current: HashSet<Elem> = HashSet::from([0]);
        for &g in &self.generators {
            if current.contains(&g) {
                continue;
            }
            kept.push(g);
            current = self.closure_of(&kept).into_iter().collect();
        }
        kept
    }

    /// Elements of the subgroup generated by `gens`, in increasing order.
    pub fn closure_of(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0 as Elem]);
        let mut out = vec![0 as Elem];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(a, x);
            k += 1;
        }
        k
    }

    /// `b·a·b⁻¹`.
    pub fn conjugate(&self, a: Elem, by: Elem) -> Elem {
        self.mul(self.mul(by, a), self.inv(by))
    }

    /// Breadth-first spanning tree over the generators: for every non-identity
    /// element `x`, an entry `(x, s, y)` with `x = gens[s]·y` and `y` listed
    /// earlier. Entries appear in BFS order.
    pub fn spanning_tree(&self, gens: &[Elem]) -> Vec<(Elem, usize, Elem)> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0 as Elem]);
        let mut tree = Vec::with_capacity(self.order().saturating_sub(1));
        while let Some(y) = queue.pop_front() {
            for (s, &g) in gens.iter().enumerate() {
                let x = self.mul(g, y);
                if !seen[x as usize] {
                    seen[x as usize] = true;
                    tree.push((x, s, y));
                    queue.push_back(x);
                }
            }
        }
        tree
    }

    /// The subgroup generated by the given elements of `self`.
    pub fn subgroup(&self, gens: &[Elem]) -> Subgroup {
        let perms: Vec<Perm> = gens.iter().map(|&g| self.element(g).clone()).collect();
        let group = FiniteGroup::from_generators(self.degree, &perms)
            .expect("subgroup of an enumerated group stays within the bound");
        Subgroup::wrap(self, group)
    }

    /// The subgroup generated by permutations that must already lie in `self`.
    pub fn subgroup_from_perms(&self, gens: &[Perm]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| Error::NotASubgroup(format!("{p} is not an element")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup(&idx))
    }

    /// Wraps a set of elements already known to form a subgroup, checking closure.
    pub fn subgroup_from_elements(&self, elems: &[Elem]) -> Result<Subgroup> {
        let target: HashSet<Elem> = elems.iter().copied().collect();
        let mut gens: Vec<Elem> = Vec::new();
        let mut current: HashSet<Elem> = HashSet::from([0]);
        let mut sorted: Vec<Elem> = target.iter().copied().collect();
        sorted.sort_unstable();
        for e in sorted {
            if !current.contains(&e) {
                gens.push(e);
                current = self.closure_of(&gens).into_iter().collect();
            }
        }
        if current != target {
            return Err(Error::NotASubgroup(
                "element set is not closed under multiplication".into(),
            ));
        }
        Ok(self.subgroup(&gens))
    }

    /// Whether `elems` (a subgroup) is normalized by every element.
    pub fn is_normal(&self, elems: &[Elem]) -> bool {
        let set: HashSet<Elem> = elems.iter().copied().collect();
        self.generators
            .iter()
            .all(|&g| elems.iter().all(|&a| set.contains(&self.conjugate(a, g))))
    }
}

impl Group for FiniteGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> Elem {
        0
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.elements[a as usize].compose(&self.elements[b as usize])],
        }
    }

    fn inv(&self, a: Elem) -> Elem {
        self.inverses[a as usize]
    }

    fn code_bound(&self) -> u64 {
        self.elements.len() as u64
    }

    fn elements(&self) -> Cow<'_, [Elem]> {
        Cow::Owned((0..self.elements.len() as Elem).collect())
    }

    fn describe(&self, a: Elem) -> String {
        self.elements[a as usize].to_string()
    }
}

/// A subgroup `H ≤ G` together with its embedding: `embedding[h]` is the index
/// in `G` of the element with index `h` in `H`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FiniteGroup,
    pub embedding: Vec<Elem>,
}

impl Subgroup {
    fn wrap(parent: &FiniteGroup, group: FiniteGroup) -> Self {
        let embedding = group
            .elements
            .iter()
            .map(|p| parent.index_of(p).expect("subgroup elements lie in the parent"))
            .collect();
        Subgroup { group, embedding }
    }

    /// The index in `H` of a parent element, if it lies in `H`.
    pub fn locate(&self, parent: &FiniteGroup, g: Elem) -> Option<Elem> {
        self.group.index_of(parent.element(g))
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}
