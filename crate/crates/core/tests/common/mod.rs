//! Shared fixtures for the integration tests: a catalog of small permutation
//! groups, seeded random actions, and brute-force reference computations that
//! share no code with the library's enumeration.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use galcoh::groups::{Action, Elem, FiniteGroup, Group, GroupAction, Perm, Subgroup};
use galcoh::lattices::{cocycle_from_lattice, det, diagonal, mat_mul, GroupTag, KMatrix, LatticeCocycle, OKLattice};
use galcoh::quadfields::{QFElement, QuadField};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn perm(images: &[u32]) -> Perm {
    Perm::from_images(images.to_vec()).unwrap()
}

fn cycles(degree: usize, gens: &[&str]) -> FiniteGroup {
    FiniteGroup::from_cycle_strings(degree, gens).unwrap()
}

pub fn quaternion() -> FiniteGroup {
    let i = perm(&[2, 3, 1, 0, 6, 7, 5, 4]);
    let j = perm(&[4, 5, 7, 6, 1, 0, 2, 3]);
    FiniteGroup::from_generators(8, &[i, j]).unwrap()
}

/// Every group used as an actor or coefficient, by name.
pub fn catalog() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("trivial", FiniteGroup::trivial(1)),
        ("C2", FiniteGroup::cyclic(2)),
        ("C3", FiniteGroup::cyclic(3)),
        ("C4", FiniteGroup::cyclic(4)),
        ("C5", FiniteGroup::cyclic(5)),
        ("C6", FiniteGroup::cyclic(6)),
        ("C7", FiniteGroup::cyclic(7)),
        ("C8", FiniteGroup::cyclic(8)),
        ("C2xC2", cycles(4, &["(0 1)", "(2 3)"])),
        ("C2^3", cycles(6, &["(0 1)", "(2 3)", "(4 5)"])),
        ("C4xC2", cycles(6, &["(0 1 2 3)", "(4 5)"])),
        ("S3", FiniteGroup::symmetric(3).unwrap()),
        ("D4", cycles(4, &["(0 1 2 3)", "(0 2)"])),
        ("Q8", quaternion()),
        ("A4", cycles(4, &["(0 1 2)", "(0 1)(2 3)"])),
        ("S4", FiniteGroup::symmetric(4).unwrap()),
    ]
}

pub fn group(name: &str) -> FiniteGroup {
    catalog().into_iter().find(|(n, _)| *n == name).unwrap().1
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut cur: Vec<u32> = (0..n as u32).collect();
    let mut out = vec![perm(&cur)];
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(perm(&cur));
    }
}

/// Permutations of the same degree that normalize `a`.
pub fn normalizer(a: &FiniteGroup) -> Vec<Perm> {
    let gens: Vec<Perm> = a.generators().iter().map(|&g| a.element(g).clone()).collect();
    all_perms(a.degree())
        .into_iter()
        .filter(|c| {
            let ci = c.inverse();
            gens.iter().all(|g| a.index_of(&c.compose(g).compose(&ci)).is_some())
        })
        .collect()
}

/// A conjugation action of `gamma` on `a` with randomly chosen conjugators.
/// Falls back to the trivial action if no consistent choice turns up.
pub fn random_action(rng: &mut StdRng, gamma: &FiniteGroup, a: &FiniteGroup, normal: &[Perm]) -> GroupAction {
    for _ in 0..40 {
        let conj: Vec<Perm> = gamma
            .generators()
            .iter()
            .map(|_| normal[rng.random_range(0..normal.len())].clone())
            .collect();
        if let Ok(act) = GroupAction::by_conjugation(gamma.clone(), a.clone(), &conj) {
            return act;
        }
    }
    GroupAction::trivial(gamma.clone(), a.clone())
}

/// A named random instance together with the size of its brute-force search space.
pub struct Instance {
    pub name: String,
    pub action: GroupAction,
}

/// Random `(Γ, A, action)` triples with `|A|^|Γ| <= max_maps`.
pub fn random_instances(seed: u64, count: usize, max_maps: f64) -> Vec<Instance> {
    let mut rng = StdRng::seed_from_u64(seed);
    let groups = catalog();
    let normals: Vec<Vec<Perm>> = groups.iter().map(|(_, g)| normalizer(g)).collect();
    let mut out = Vec::new();
    while out.len() < count {
        let gi = rng.random_range(0..groups.len());
        let ai = rng.random_range(1..groups.len());
        let (gname, gamma) = &groups[gi];
        let (aname, a) = &groups[ai];
        if gamma.order() > 8 || (a.order() as f64).powi(gamma.order() as i32) > max_maps {
            continue;
        }
        let action = random_action(&mut rng, gamma, a, &normals[ai]);
        out.push(Instance {
            name: format!("{gname} on {aname}"),
            action,
        });
    }
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        self.0[rx] = ry;
    }

    fn roots(&mut self) -> usize {
        (0..self.0.len()).filter(|&i| self.find(i) == i).count()
    }
}

fn satisfies_identity<A: Action>(action: &A, values: &[Elem]) -> bool {
    let (gamma, coef) = (action.actor(), action.coefficient());
    let n = gamma.order() as Elem;
    (0..n).all(|h| {
        (0..n).all(|g| {
            let lhs = values[gamma.mul(h, g) as usize];
            let rhs = coef.mul(values[h as usize], action.act(h, values[g as usize]));
            lhs == rhs
        })
    })
}

fn twist<A: Action>(action: &A, values: &[Elem], a: Elem) -> Vec<Elem> {
    let coef = action.coefficient();
    let ai = coef.inv(a);
    (0..values.len() as Elem)
        .map(|g| coef.mul(coef.mul(ai, values[g as usize]), action.act(g, a)))
        .collect()
}

/// Every map `Γ → A` satisfying the cocycle identity, in odometer order.
pub fn naive_cocycles(action: &GroupAction) -> Vec<Vec<Elem>> {
    let (g, a) = (action.actor().order(), action.coefficient().order() as Elem);
    let mut values = vec![0 as Elem; g];
    let mut out = Vec::new();
    loop {
        if satisfies_identity(action, &values) {
            out.push(values.clone());
        }
        let mut i = 0;
        loop {
            if i == g {
                return out;
            }
            values[i] += 1;
            if values[i] < a {
                break;
            }
            values[i] = 0;
            i += 1;
        }
    }
}

/// Orbits of a set of cocycles under twisting by `A`.
pub fn twist_orbits(action: &GroupAction, cocycles: &[Vec<Elem>]) -> usize {
    let index: HashMap<&[Elem], usize> = cocycles.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let mut uf = UnionFind((0..cocycles.len()).collect());
    for (i, c) in cocycles.iter().enumerate() {
        for a in 0..action.coefficient().order() as Elem {
            let j = index[twist(action, c, a).as_slice()];
            uf.union(i, j);
        }
    }
    uf.roots()
}

/// `(cocycle count, class count)` of `H¹(Γ, A)` by exhaustion.
pub fn naive_h1(action: &GroupAction) -> (usize, usize) {
    let cocycles = naive_cocycles(action);
    (cocycles.len(), twist_orbits(action, &cocycles))
}

/// Subgroups generated by a single element, plus the whole group, that the
/// action maps into themselves.
pub fn stable_subgroups(action: &GroupAction) -> Vec<Subgroup> {
    let b = action.coefficient();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let candidates = (0..b.order() as Elem).map(|x| b.subgroup(&[x])).chain([b.subgroup(b.generators())]);
    for s in candidates {
        let mut key = s.embedding.clone();
        key.sort_unstable();
        if action.stabilizes(&s.embedding) && seen.insert(key) {
            out.push(s);
        }
    }
    out
}

/// `|(B/A)^Γ / B^Γ|`, from the cosets as explicit element sets.
pub fn naive_coset_orbits(act_b: &GroupAction, sub: &Subgroup) -> usize {
    let b = act_b.coefficient();
    let coset = |x: Elem| -> Vec<Elem> {
        let mut c: Vec<Elem> = sub.embedding.iter().map(|&a| b.mul(x, a)).collect();
        c.sort_unstable();
        c
    };
    let cosets: BTreeSet<Vec<Elem>> = (0..b.order() as Elem).map(coset).collect();
    let invariant: Vec<Vec<Elem>> = cosets
        .into_iter()
        .filter(|c| {
            (0..act_b.actor().order() as Elem).all(|g| {
                let mut img: Vec<Elem> = c.iter().map(|&x| act_b.act(g, x)).collect();
                img.sort_unstable();
                &img == c
            })
        })
        .collect();
    let fixed = act_b.invariants();
    let index: HashMap<&Vec<Elem>, usize> = invariant.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut uf = UnionFind((0..invariant.len()).collect());
    for (i, c) in invariant.iter().enumerate() {
        for &f in &fixed {
            let mut img: Vec<Elem> = c.iter().map(|&x| b.mul(f, x)).collect();
            img.sort_unstable();
            uf.union(i, index[&img]);
        }
    }
    uf.roots()
}

/// Number of classes of `H¹(Γ, A)` that die in `H¹(Γ, B)`: the cocycles
/// `γ ↦ b⁻¹·b^γ` with values in `A`, up to twisting by `A`.
pub fn naive_kernel_size(act_b: &GroupAction, sub: &Subgroup) -> usize {
    let b = act_b.coefficient();
    let act_a = act_b.restrict_coefficient(sub).unwrap();
    let mut split: BTreeSet<Vec<Elem>> = BTreeSet::new();
    for x in 0..b.order() as Elem {
        let xi = b.inv(x);
        let values: Option<Vec<Elem>> = (0..act_b.actor().order() as Elem)
            .map(|g| sub.locate(b, b.mul(xi, act_b.act(g, x))))
            .collect();
        if let Some(v) = values {
            split.insert(v);
        }
    }
    let split: Vec<Vec<Elem>> = split.into_iter().collect();
    twist_orbits(&act_a, &split)
}

/// Conjugacy orbits of `Hom(Γ, S_n)` counted by canonical forms.
pub fn naive_conjugacy_orbits(images: &[Vec<Perm>], n: usize) -> usize {
    let sym = all_perms(n);
    let canon: BTreeSet<Vec<Vec<u32>>> = images
        .iter()
        .map(|hom| {
            sym.iter()
                .map(|c| {
                    let ci = c.inverse();
                    hom.iter().map(|p| c.compose(p).compose(&ci).images().to_vec()).collect::<Vec<_>>()
                })
                .min()
                .unwrap()
        })
        .collect();
    canon.len()
}

/// A generator of a prime over a ramified rational prime, in the basis `1, ω`.
pub fn ramified_generator(d: i64) -> QFElement {
    match d {
        -1 => QFElement::from_ints(1, 1),
        -2 => QFElement::from_ints(0, 1),
        _ => QFElement::from_ints(-1, 2),
    }
}

fn rational(n: i64, d: i64) -> QFElement {
    QFElement::rational(BigRational::new(n.into(), d.into()))
}

/// A random invertible rational matrix with small entries.
pub fn random_rational(rng: &mut StdRng, field: &QuadField, n: usize) -> KMatrix {
    loop {
        let m: KMatrix = (0..n)
            .map(|_| {
                let den = if rng.random_bool(0.2) { 2 } else { 1 };
                (0..n).map(|_| rational(rng.random_range(-2..=2), den)).collect()
            })
            .collect();
        if !det(field, &m).is_zero() {
            return m;
        }
    }
}

/// `g·O_Kⁿ`, with `g` given on column vectors.
pub fn lattice_from_matrix(field: &QuadField, g: &KMatrix) -> OKLattice {
    let n = g.len();
    let cols = (0..n).map(|j| (0..n).map(|i| g[i][j].clone()).collect()).collect();
    OKLattice::new(field, n, cols).unwrap()
}

/// `R·diag(π^e₁, …)·O_Kⁿ` for a random rational `R` and exponents in `{-1, 0, 1}`.
pub fn random_lattice(rng: &mut StdRng, field: &QuadField, n: usize) -> OKLattice {
    let pi = ramified_generator(field.d());
    let pi_inv = field.inv(&pi).unwrap();
    let diag: Vec<QFElement> = (0..n)
        .map(|_| match rng.random_range(0..6) {
            0..=2 => QFElement::one(),
            3 | 4 => pi.clone(),
            _ => pi_inv.clone(),
        })
        .collect();
    let r = random_rational(rng, field, n);
    lattice_from_matrix(field, &mat_mul(field, &r, &diagonal(&diag)))
}

/// The cocycle of `l` against the standard lattice.
pub fn gl_cocycle(l: &OKLattice) -> LatticeCocycle {
    let lambda = OKLattice::standard(l.field(), l.dim()).unwrap();
    cocycle_from_lattice(&lambda, l, GroupTag::GL, 0).unwrap()
}
