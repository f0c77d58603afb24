use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::groups::{Action, Elem, FiniteGroup, Group, GroupAction, Subgroup};

use super::{enumerate_h1, induced_map, CoefficientMap, Cocycle, H1Set, DEFAULT_H1_BOUND};

/// Left cosets `bA` of a subgroup, each named by its smallest element code.
struct Cosets {
    /// `coset_of[b]` is the index of `bA`.
    coset_of: Vec<usize>,
    reps: Vec<Elem>,
}

fn left_cosets(group: &FiniteGroup, sub: &Subgroup) -> Cosets {
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for b in 0..n as Elem {
        if coset_of[b as usize] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(b);
        for &a in &sub.embedding {
            coset_of[group.mul(b, a) as usize] = idx;
        }
    }
    Cosets { coset_of, reps }
}

/// The cocycle `γ ↦ b⁻¹·b^γ`, located in `A`; `None` if some value leaves `A`.
fn coset_cocycle(act_b: &GroupAction, sub: &Subgroup, b: Elem) -> Option<Cocycle> {
    let big = act_b.coefficient();
    let b_inv = big.inv(b);
    (0..act_b.actor().order() as Elem)
        .map(|g| sub.locate(big, big.mul(b_inv, act_b.act(g, b))))
        .collect::<Option<Vec<_>>>()
        .map(Cocycle::new)
}

/// The orbits of `B^Γ` on `(B/A)^Γ` matched against `ker(H¹(Γ, A) → H¹(Γ, B))`.
#[derive(Clone, Debug)]
pub struct ClassifierOrbits {
    /// Smallest element of every left coset `bA`.
    pub coset_reps: Vec<Elem>,
    /// Indices (into `coset_reps`) of the `Γ`-invariant cosets.
    pub invariant: Vec<usize>,
    /// `B^Γ`-orbits of invariant cosets, each sorted, ordered by first member.
    pub orbits: Vec<Vec<usize>>,
    /// For each orbit, the `H¹(Γ, A)` class of `γ ↦ b⁻¹·b^γ` at its first coset.
    pub orbit_classes: Vec<usize>,
    /// `ker(H¹(Γ, A) → H¹(Γ, B))`.
    pub kernel: Vec<usize>,
    /// Whether `orbit_classes` is a bijection onto `kernel`.
    pub bijective: bool,
    pub h1_sub: H1Set,
    pub h1_full: H1Set,
}

/// Computes `(B/A)^Γ / B^Γ` and its map into `H¹(Γ, A)`, for a `Γ`-stable
/// subgroup `A` of the coefficient group `B` of `act_b`.
pub fn classifier_orbits(act_b: &GroupAction, sub: &Subgroup) -> Result<ClassifierOrbits> {
    let act_a = act_b.restrict_coefficient(sub)?;
    let big = act_b.coefficient();
    let cosets = left_cosets(big, sub);

    let invariant: Vec<usize> = (0..cosets.reps.len())
        .filter(|&i| {
            let b = cosets.reps[i];
            act_b
                .actor()
                .generators()
                .iter()
                .all(|&g| cosets.coset_of[act_b.act(g, b) as usize] == i)
        })
        .collect();

    let fixed = act_b.invariants();
    let mut orbit_of = vec![usize::MAX; cosets.reps.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for &i in &invariant {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let members: BTreeSet<usize> = fixed
            .iter()
            .map(|&c| cosets.coset_of[big.mul(c, cosets.reps[i]) as usize])
            .collect();
        for &m in &members {
            orbit_of[m] = orbits.len();
        }
        orbits.push(members.into_iter().collect());
    }

    let h1_sub = enumerate_h1(&act_a, DEFAULT_H1_BOUND)?;
    let h1_full = enumerate_h1(act_b, DEFAULT_H1_BOUND)?;
    let incl = CoefficientMap::inclusion(act_b.actor(), sub);
    let induced = induced_map(&act_a, &h1_sub, act_b, &h1_full, &incl)?;

    let mut orbit_classes = Vec::with_capacity(orbits.len());
    for orbit in &orbits {
        let b = cosets.reps[orbit[0]];
        let cocycle = coset_cocycle(act_b, sub, b)
            .ok_or_else(|| Error::EquivarianceViolation("invariant coset gave a value outside A".into()))?;
        let class = h1_sub
            .classify(&cocycle)
            .ok_or_else(|| Error::EquivarianceViolation("coset map is not a cocycle".into()))?
            .class;
        orbit_classes.push(class);
    }
    let image: BTreeSet<usize> = orbit_classes.iter().copied().collect();
    let bijective = image.len() == orbit_classes.len() && image.iter().copied().eq(induced.kernel.iter().copied());

    Ok(ClassifierOrbits {
        coset_reps: cosets.reps,
        invariant,
        orbits,
        orbit_classes,
        kernel: induced.kernel,
        bijective,
        h1_sub,
        h1_full,
    })
}

/// The map `(B/A)^Γ → H¹(Γ, A)` for a normal `Γ`-stable subgroup `A`.
#[derive(Clone, Debug)]
pub struct ConnectingMap {
    /// Smallest element of each invariant coset.
    pub invariant_cosets: Vec<Elem>,
    /// Class of `γ ↦ b⁻¹·b^γ` for each invariant coset.
    pub classes: Vec<usize>,
    /// `ker(H¹(Γ, A) → H¹(Γ, B))`.
    pub kernel: Vec<usize>,
    /// Whether the image of `classes` equals `kernel`.
    pub exact: bool,
    pub h1_sub: H1Set,
    pub h1_full: H1Set,
}

pub fn connecting_invariants(act_b: &GroupAction, sub: &Subgroup) -> Result<ConnectingMap> {
    if !act_b.coefficient().is_normal(&sub.embedding) {
        return Err(Error::NotNormal);
    }
    let report = classifier_orbits(act_b, sub)?;
    let mut classes = Vec::with_capacity(report.invariant.len());
    for &i in &report.invariant {
        let b = report.coset_reps[i];
        let cocycle = coset_cocycle(act_b, sub, b).expect("invariant coset");
        classes.push(report.h1_sub.classify(&cocycle).expect("enumerated").class);
    }
    let image: BTreeSet<usize> = classes.iter().copied().collect();
    let exact = image.iter().copied().eq(report.kernel.iter().copied());
    Ok(ConnectingMap {
        invariant_cosets: report.invariant.iter().map(|&i| report.coset_reps[i]).collect(),
        classes,
        kernel: report.kernel,
        exact,
        h1_sub: report.h1_sub,
        h1_full: report.h1_full,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Perm;

    fn c4_inversion() -> GroupAction {
        GroupAction::from_generator_images(
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(4),
            &[vec![Perm::parse_cycles(4, "(0 3 2 1)").unwrap()]],
        )
        .unwrap()
    }

    #[test]
    fn whole_group_gives_single_orbit() {
        let act = c4_inversion();
        let all: Vec<Elem> = (0..4).collect();
        let sub = act.coefficient().subgroup_from_elements(&all).unwrap();
        let r = classifier_orbits(&act, &sub).unwrap();
        assert_eq!(r.orbits.len(), 1);
        assert_eq!(r.kernel, vec![r.h1_sub.base_point()]);
        assert!(r.bijective);
    }

    #[test]
    fn transposition_in_s3() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let act = GroupAction::trivial(FiniteGroup::cyclic(2), s3.clone());
        let sub = s3.subgroup_from_perms(&[Perm::parse_cycles(3, "(0 1)").unwrap()]).unwrap();
        let r = classifier_orbits(&act, &sub).unwrap();
        // H¹(C2, C2) has two classes and both survive in H¹(C2, S3)
        assert_eq!(r.h1_sub.len(), 2);
        assert_eq!(r.orbits.len(), r.kernel.len());
        assert!(r.bijective);
    }

    #[test]
    fn inversion_on_c4() {
        let act = c4_inversion();
        let c4 = act.coefficient().clone();
        let sub = c4.subgroup_from_perms(&[Perm::parse_cycles(4, "(0 2)(1 3)").unwrap()]).unwrap();
        let r = classifier_orbits(&act, &sub).unwrap();
        assert_eq!(r.orbits.len(), r.kernel.len());
        assert!(r.bijective);

        let c = connecting_invariants(&act, &sub).unwrap();
        assert!(c.exact);
        // the identity coset goes to the trivial class
        assert_eq!(c.invariant_cosets[0], 0);
        assert_eq!(c.classes[0], c.h1_sub.base_point());
    }

    #[test]
    fn unstable_and_non_normal_subgroups() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let act = GroupAction::by_conjugation(
            FiniteGroup::cyclic(2),
            s3.clone(),
            &[Perm::parse_cycles(3, "(1 2)").unwrap()],
        )
        .unwrap();
        let sub = s3.subgroup_from_perms(&[Perm::parse_cycles(3, "(0 1)").unwrap()]).unwrap();
        assert!(matches!(classifier_orbits(&act, &sub), Err(Error::NotStable)));

        let triv = GroupAction::trivial(FiniteGroup::cyclic(2), s3.clone());
        assert!(matches!(connecting_invariants(&triv, &sub), Err(Error::NotNormal)));
    }
}
