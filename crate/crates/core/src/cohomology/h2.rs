use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::groups::{Action, Elem, FiniteGroup, Group, GroupAction, Perm, Subgroup};

use super::{enumerate_h1, induced_map, CoefficientMap, ElemMap, H1Set, DEFAULT_H1_BOUND};

/// Default cap on the size of the normalized 2-cochain search space.
pub const DEFAULT_H2_BOUND: u128 = 10_000_000;

/// A 2-cochain `Γ × Γ → A`, stored row-major: `values[g·n + h] = c(g, h)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoCocycle {
    n: usize,
    values: Vec<Elem>,
}

impl TwoCocycle {
    pub fn new(n: usize, values: Vec<Elem>) -> Self {
        assert_eq!(values.len(), n * n);
        TwoCocycle { n, values }
    }

    pub fn value(&self, g: Elem, h: Elem) -> Elem {
        self.values[g as usize * self.n + h as usize]
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    /// Checks `c(h,k)^g·c(g,hk) = c(gh,k)·c(g,h)` for every triple.
    pub fn is_cocycle<A: Action>(&self, action: &A) -> bool {
        let gamma = action.actor();
        let coeff = action.coefficient();
        let n = gamma.order() as Elem;
        if self.n != n as usize {
            return false;
        }
        (0..n).all(|g| {
            (0..n).all(|h| {
                (0..n).all(|k| {
                    coeff.mul(action.act(g, self.value(h, k)), self.value(g, gamma.mul(h, k)))
                        == coeff.mul(self.value(gamma.mul(g, h), k), self.value(g, h))
                })
            })
        })
    }

    fn times(&self, other: &TwoCocycle, coeff: &FiniteGroup) -> TwoCocycle {
        TwoCocycle {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| coeff.mul(a, b)).collect(),
        }
    }
}

/// `H²(Γ, A)` for abelian `A`: representatives of the classes of normalized
/// 2-cocycles modulo coboundaries. Class 0 is the trivial class.
#[derive(Clone, Debug)]
pub struct H2Group {
    coefficient: FiniteGroup,
    representatives: Vec<TwoCocycle>,
    coboundaries: HashSet<TwoCocycle>,
    class_of: HashMap<TwoCocycle, usize>,
}

impl H2Group {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    pub fn representative(&self, class: usize) -> &TwoCocycle {
        &self.representatives[class]
    }

    pub fn coboundary_count(&self) -> usize {
        self.coboundaries.len()
    }

    /// Class of a normalized 2-cocycle, or `None` if it is not one.
    pub fn classify(&self, c: &TwoCocycle) -> Option<usize> {
        self.class_of.get(c).copied()
    }

    /// Index of the class of the pointwise product.
    pub fn add(&self, x: usize, y: usize) -> usize {
        let sum = self.representatives[x].times(&self.representatives[y], &self.coefficient);
        self.class_of[&sum]
    }
}

/// Enumerates normalized 2-cocycles by backtracking and divides out the
/// coboundaries `(g, h) ↦ f(h)^g·f(gh)⁻¹·f(g)`.
pub fn h2_abelian(action: &GroupAction, bound: u128) -> Result<H2Group> {
    let gamma = action.actor();
    let coeff = action.coefficient();
    if !coeff.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = gamma.order();
    let m = coeff.order();
    let free = (n - 1) * (n - 1);
    let needed = (m as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
    if needed > bound {
        return Err(Error::EnumerationBoundExceeded {
            what: "normalized 2-cochains",
            needed,
            bound,
        });
    }

    let id = coeff.identity();
    let mut cocycles = Vec::new();
    let mut values = vec![id; n * n];
    let slots: Vec<(usize, usize)> = (1..n).flat_map(|g| (1..n).map(move |h| (g, h))).collect();
    backtrack(action, &slots, 0, &mut values, &mut cocycles);

    let cochain_count = (m as u128).checked_pow(n as u32 - 1).unwrap_or(u128::MAX);
    if cochain_count > bound {
        return Err(Error::EnumerationBoundExceeded {
            what: "normalized 1-cochains",
            needed: cochain_count,
            bound,
        });
    }
    let mut coboundaries = HashSet::new();
    let mut f = vec![id; n];
    for idx in 0..cochain_count as usize {
        let mut rest = idx;
        for slot in f.iter_mut().skip(1) {
            *slot = (rest % m) as Elem;
            rest /= m;
        }
        let mut vals = vec![id; n * n];
        for g in 0..n as Elem {
            for h in 0..n as Elem {
                let v = coeff.mul(
                    coeff.mul(action.act(g, f[h as usize]), coeff.inv(f[gamma.mul(g, h) as usize])),
                    f[g as usize],
                );
                vals[g as usize * n + h as usize] = v;
            }
        }
        coboundaries.insert(TwoCocycle { n, values: vals });
    }

    let mut class_of: HashMap<TwoCocycle, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let mut sorted_bounds: Vec<&TwoCocycle> = coboundaries.iter().collect();
    sorted_bounds.sort();
    for c in &cocycles {
        if class_of.contains_key(c) {
            continue;
        }
        let class = representatives.len();
        for b in &sorted_bounds {
            class_of.insert(c.times(b, coeff), class);
        }
        representatives.push(c.clone());
    }
    Ok(H2Group {
        coefficient: coeff.clone(),
        representatives,
        coboundaries,
        class_of,
    })
}

fn backtrack(
    action: &GroupAction,
    slots: &[(usize, usize)],
    depth: usize,
    values: &mut Vec<Elem>,
    out: &mut Vec<TwoCocycle>,
) {
    let n = action.actor().order();
    if depth == slots.len() {
        out.push(TwoCocycle { n, values: values.clone() });
        return;
    }
    let (g, h) = slots[depth];
    for a in 0..action.coefficient().order() as Elem {
        values[g * n + h] = a;
        if consistent(action, values, depth, slots) {
            backtrack(action, slots, depth + 1, values, out);
        }
    }
    values[g * n + h] = action.coefficient().identity();
}

/// Checks every triple whose four entries are already assigned and involve
/// the slot just set.
fn consistent(action: &GroupAction, values: &[Elem], depth: usize, slots: &[(usize, usize)]) -> bool {
    let gamma = action.actor();
    let coeff = action.coefficient();
    let n = gamma.order();
    let pos = |g: usize, h: usize| -> usize {
        if g == 0 || h == 0 {
            0
        } else {
            (g - 1) * (n - 1) + (h - 1)
        }
    };
    let assigned = |g: usize, h: usize| pos(g, h) <= depth || g == 0 || h == 0;
    let (g0, h0) = slots[depth];
    let touches = |g: usize, h: usize, k: usize, gh: usize, hk: usize| {
        (h, k) == (g0, h0) || (g, hk) == (g0, h0) || (gh, k) == (g0, h0) || (g, h) == (g0, h0)
    };
    for g in 1..n {
        for h in 1..n {
            for k in 1..n {
                let gh = gamma.mul(g as Elem, h as Elem) as usize;
                let hk = gamma.mul(h as Elem, k as Elem) as usize;
                if !touches(g, h, k, gh, hk) {
                    continue;
                }
                if !(assigned(h, k) && assigned(g, hk) && assigned(gh, k) && assigned(g, h)) {
                    continue;
                }
                let lhs = coeff.mul(action.act(g as Elem, values[h * n + k]), values[g * n + hk]);
                let rhs = coeff.mul(values[gh * n + k], values[g * n + h]);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// The connecting map `H¹(Γ, B/A) → H²(Γ, A)` for a central `Γ`-stable `A`.
#[derive(Clone, Debug)]
pub struct CentralConnecting {
    /// The quotient `B/A` as a permutation group on left cosets.
    pub quotient: FiniteGroup,
    /// `projection[b]` is the image of `b` in the quotient.
    pub projection: Vec<Elem>,
    pub quotient_action: GroupAction,
    pub h1_quotient: H1Set,
    pub h1_full: H1Set,
    pub h2: H2Group,
    /// `H²` class of each `H¹(Γ, B/A)` class.
    pub images: Vec<usize>,
    /// Classes of `H¹(Γ, B/A)` sent to the trivial `H²` class.
    pub kernel: Vec<usize>,
    /// Image of `H¹(Γ, B) → H¹(Γ, B/A)`.
    pub image_from_full: Vec<usize>,
    /// Whether `image_from_full` equals `kernel`.
    pub exact: bool,
}

pub fn central_connecting(act_b: &GroupAction, sub: &Subgroup) -> Result<CentralConnecting> {
    let big = act_b.coefficient();
    for &a in &sub.embedding {
        for &b in big.generators() {
            if big.mul(a, b) != big.mul(b, a) {
                return Err(Error::NotCentral);
            }
        }
    }
    let act_a = act_b.restrict_coefficient(sub)?;

    // left multiplication on cosets; its kernel is the core of A, which is A
    let mut coset_of = vec![usize::MAX; big.order()];
    let mut reps = Vec::new();
    for b in 0..big.order() as Elem {
        if coset_of[b as usize] == usize::MAX {
            for &a in &sub.embedding {
                coset_of[big.mul(b, a) as usize] = reps.len();
            }
            reps.push(b);
        }
    }
    let k = reps.len();
    let perm_of = |b: Elem| -> Perm {
        Perm::from_images(reps.iter().map(|&r| coset_of[big.mul(b, r) as usize] as u32).collect())
            .expect("left multiplication permutes cosets")
    };
    let gens: Vec<Perm> = big.generators().iter().map(|&b| perm_of(b)).filter(|p| !p.is_identity()).collect();
    let quotient = FiniteGroup::from_generators(k, &gens)?;
    let projection: Vec<Elem> = (0..big.order() as Elem)
        .map(|b| quotient.index_of(&perm_of(b)).expect("image lies in the quotient"))
        .collect();
    let mut lift = vec![Elem::MAX; quotient.order()];
    for (b, &q) in projection.iter().enumerate() {
        if lift[q as usize] == Elem::MAX {
            lift[q as usize] = b as Elem;
        }
    }

    let gamma = act_b.actor().clone();
    let autos: Vec<Vec<Elem>> = gamma
        .generators()
        .iter()
        .map(|&g| {
            (0..quotient.order())
                .map(|q| projection[act_b.act(g, lift[q]) as usize])
                .collect()
        })
        .collect();
    let quotient_action = GroupAction::from_generator_automorphisms(gamma.clone(), quotient.clone(), autos)?;

    let h1_quotient = enumerate_h1(&quotient_action, DEFAULT_H1_BOUND)?;
    let h1_full = enumerate_h1(act_b, DEFAULT_H1_BOUND)?;
    let h2 = h2_abelian(&act_a, DEFAULT_H2_BOUND)?;

    let n = gamma.order();
    let mut images = Vec::with_capacity(h1_quotient.len());
    for rep in h1_quotient.representatives() {
        let s: Vec<Elem> = rep.values().iter().map(|&q| lift[q as usize]).collect();
        let mut vals = vec![act_a.coefficient().identity(); n * n];
        for g in 0..n as Elem {
            for h in 0..n as Elem {
                let v = big.mul(
                    big.mul(s[g as usize], act_b.act(g, s[h as usize])),
                    big.inv(s[gamma.mul(g, h) as usize]),
                );
                vals[g as usize * n + h as usize] = sub.locate(big, v).expect("lift defect lies in A");
            }
        }
        let c = TwoCocycle::new(n, vals);
        images.push(h2.classify(&c).ok_or_else(|| {
            Error::EquivarianceViolation("lift defect is not a normalized 2-cocycle".into())
        })?);
    }
    let kernel: Vec<usize> = (0..images.len()).filter(|&i| images[i] == 0).collect();

    let proj_map = CoefficientMap {
        restriction: (0..n as Elem).collect(),
        map: ElemMap::Table(projection.clone()),
    };
    let induced = induced_map(act_b, &h1_full, &quotient_action, &h1_quotient, &proj_map)?;
    let image_from_full: Vec<usize> = induced.images.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let exact = image_from_full == kernel;

    Ok(CentralConnecting {
        quotient,
        projection,
        quotient_action,
        h1_quotient,
        h1_full,
        h2,
        images,
        kernel,
        image_from_full,
        exact,
    })
}
