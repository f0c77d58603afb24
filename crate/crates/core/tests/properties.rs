mod common;

use galcoh::cohomology::{
    classifier_orbits, enumerate_h1, genus_kernel, induced_map, CoefficientMap, LocalMap, DEFAULT_H1_BOUND,
};
use galcoh::etale::classify_etale;
use galcoh::groups::{all_homs, Group, DEFAULT_HOM_BOUND};
use galcoh::lattices::{det_class, det_class_product};
use galcoh::par;
use galcoh::quadfields::QuadField;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn h1_agrees_with_exhaustive_search(seed in any::<u64>()) {
        let inst = random_instances(seed, 1, 2e5).pop().unwrap();
        let h1 = enumerate_h1(&inst.action, DEFAULT_H1_BOUND).unwrap();
        let (cocycles, classes) = naive_h1(&inst.action);
        prop_assert_eq!(h1.cocycles().len(), cocycles, "{}", inst.name);
        prop_assert_eq!(h1.len(), classes, "{}", inst.name);
        prop_assert!(h1.representatives().all(|c| c.is_cocycle(&inst.action)));
    }

    #[test]
    fn sequential_and_parallel_enumeration_agree(seed in any::<u64>()) {
        let inst = random_instances(seed, 1, 2e5).pop().unwrap();
        let a = enumerate_h1(&inst.action, DEFAULT_H1_BOUND).unwrap();
        let b = par::sequential(|| enumerate_h1(&inst.action, DEFAULT_H1_BOUND).unwrap());
        prop_assert_eq!(a.cocycles(), b.cocycles());
        let reps_a: Vec<_> = a.representatives().cloned().collect();
        let reps_b: Vec<_> = b.representatives().cloned().collect();
        prop_assert_eq!(reps_a, reps_b);
    }

    #[test]
    fn induced_maps_compose(seed in any::<u64>()) {
        let inst = random_instances(seed, 1, 2e5).pop().unwrap();
        let act_c = &inst.action;
        let gamma = act_c.actor().clone();
        let c = act_c.coefficient();
        let subs_c = stable_subgroups(act_c);
        let sub_b = &subs_c[seed as usize % subs_c.len()];
        let act_b = act_c.restrict_coefficient(sub_b).unwrap();
        let subs_b = stable_subgroups(&act_b);
        let sub_a = &subs_b[(seed >> 8) as usize % subs_b.len()];
        let act_a = act_b.restrict_coefficient(sub_a).unwrap();
        let a_in_c: Vec<u32> = sub_a.embedding.iter().map(|&x| sub_b.embedding[x as usize]).collect();
        let sub_ac = c.subgroup_from_elements(&a_in_c).unwrap();

        let (h_a, h_b, h_c) = (
            enumerate_h1(&act_a, DEFAULT_H1_BOUND).unwrap(),
            enumerate_h1(&act_b, DEFAULT_H1_BOUND).unwrap(),
            enumerate_h1(act_c, DEFAULT_H1_BOUND).unwrap(),
        );
        let ab = induced_map(&act_a, &h_a, &act_b, &h_b, &CoefficientMap::inclusion(&gamma, sub_a)).unwrap();
        let bc = induced_map(&act_b, &h_b, act_c, &h_c, &CoefficientMap::inclusion(&gamma, sub_b)).unwrap();
        let ac = induced_map(&act_a, &h_a, act_c, &h_c, &CoefficientMap::inclusion(&gamma, &sub_ac)).unwrap();
        for (i, &j) in ab.images.iter().enumerate() {
            prop_assert_eq!(ac.images[i], bc.images[j]);
        }
        prop_assert!(ab.images[h_a.base_point()] == h_b.base_point());
    }

    #[test]
    fn classifier_matches_coset_count(seed in any::<u64>()) {
        let inst = random_instances(seed, 1, 2e5).pop().unwrap();
        for sub in stable_subgroups(&inst.action) {
            let r = classifier_orbits(&inst.action, &sub).unwrap();
            prop_assert!(r.bijective);
            prop_assert_eq!(r.orbits.len(), naive_coset_orbits(&inst.action, &sub));
            prop_assert_eq!(r.kernel.len(), naive_kernel_size(&inst.action, &sub));
        }
    }

    #[test]
    fn more_localizations_shrink_the_genus(seed in any::<u64>()) {
        let inst = random_instances(seed, 1, 2e5).pop().unwrap();
        let action = &inst.action;
        let gamma = action.actor();
        let h1 = enumerate_h1(action, DEFAULT_H1_BOUND).unwrap();
        let mut locals: Vec<LocalMap> = (0..gamma.order() as u32)
            .map(|g| LocalMap::restriction(action, &gamma.subgroup(&[g])))
            .collect();
        locals.push(LocalMap::to_trivial(action));
        let mut previous: Vec<usize> = (0..h1.len()).collect();
        for k in 0..=locals.len() {
            let g = genus_kernel(action, &h1, &locals[..k]).unwrap();
            prop_assert!(g.genus.iter().all(|c| previous.contains(c)));
            prop_assert!(g.genus.contains(&h1.base_point()));
            previous = g.genus;
        }
        // Restricting to the whole actor detects every class.
        let whole = genus_kernel(action, &h1, &[LocalMap::restriction(action, &gamma.subgroup(gamma.generators()))]).unwrap();
        prop_assert_eq!(whole.genus, vec![h1.base_point()]);
    }

    #[test]
    fn det_class_is_multiplicative(seed in any::<u64>(), di in 0usize..5, n1 in 1usize..3, n2 in 1usize..3) {
        let d = [-1, -2, -3, -7, -11][di];
        let field = QuadField::new(d).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let c1 = gl_cocycle(&random_lattice(&mut rng, &field, n1));
        let c2 = gl_cocycle(&random_lattice(&mut rng, &field, n2));
        let (x, y) = (det_class(&c1).unwrap(), det_class(&c2).unwrap());
        let sum = det_class(&c1.direct_sum(&c2).unwrap()).unwrap();
        prop_assert_eq!(sum.class, det_class_product(&field, &x, &y).unwrap());
    }
}

#[test]
fn etale_classes_match_conjugacy_orbits() {
    for (name, gamma) in catalog().into_iter().filter(|(_, g)| g.order() <= 8) {
        for n in 1..=4 {
            let r = classify_etale(&gamma, n).unwrap();
            let sym = r.symmetric.clone();
            let homs = all_homs(&gamma, &sym, DEFAULT_HOM_BOUND).unwrap();
            let tables: Vec<Vec<_>> = homs
                .iter()
                .map(|h| h.images().iter().map(|&x| sym.element(x).clone()).collect())
                .collect();
            assert_eq!(r.hom_count, homs.len(), "{name}, n = {n}");
            assert_eq!(r.classes.len(), naive_conjugacy_orbits(&tables, n), "{name}, n = {n}");
        }
    }
}
