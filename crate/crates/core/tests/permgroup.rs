use std::collections::{BTreeSet, HashSet};

use nilblock::permgroup::builders::{alternating, dihedral, symmetric};
use nilblock::permgroup::{
    pprime_decomposition, ClassStructure, GroupFile, PermGroup, Permutation,
};
use proptest::prelude::*;

/// Naive closure by breadth-first multiplication.
fn brute_elements(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
    let mut seen = HashSet::new();
    let id = Permutation::identity(degree);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn gens_strategy() -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (3usize..=6).prop_flat_map(|n| (Just(n), prop::collection::vec(perm_strategy(n), 1..=3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn order_matches_brute_closure((n, gens) in gens_strategy()) {
        let g = PermGroup::new(n, gens.clone()).unwrap();
        let brute = brute_elements(n, &gens);
        prop_assert_eq!(g.order(), brute.len() as u64);
        for x in &brute {
            prop_assert!(g.contains(x));
        }
        let listed: HashSet<Permutation> = g.elements().into_iter().collect();
        prop_assert_eq!(listed, brute);
    }

    #[test]
    fn permutation_axioms(a in perm_strategy(6), b in perm_strategy(6), c in perm_strategy(6)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inv()).is_identity());
        prop_assert_eq!(a.pow(a.order() as i64), Permutation::identity(6));
        prop_assert_eq!(a.conj(&b).order(), a.order());
        let text = a.to_cycle_string();
        prop_assert_eq!(Permutation::parse_cycles(6, &text).unwrap(), a);
    }

    #[test]
    fn pprime_parts_commute_and_multiply(a in perm_strategy(7), p in prop::sample::select(vec![2u64, 3, 5])) {
        let (u, s) = pprime_decomposition(&a, p);
        prop_assert_eq!(u.mul(&s), a.clone());
        prop_assert_eq!(u.mul(&s), s.mul(&u));
        prop_assert_eq!(nilblock::exactnum::arith::p_part(u.order(), p), u.order());
        prop_assert_ne!(s.order() % p, 0);
    }

    #[test]
    fn centralizers_and_classes_match_brute_force((n, gens) in gens_strategy()) {
        let g = PermGroup::new(n, gens.clone()).unwrap();
        prop_assume!(g.order() <= 720);
        let elements = g.elements();
        let x = &elements[elements.len() / 2];
        let brute: Vec<&Permutation> = elements.iter().filter(|y| y.mul(x) == x.mul(y)).collect();
        prop_assert_eq!(g.centralizer(x).unwrap().order(), brute.len() as u64);
        let classes = ClassStructure::compute(&g).unwrap();
        let total: u64 = classes.classes().iter().map(|c| c.size).sum();
        prop_assert_eq!(total, g.order());
        let k = classes.class_of(x).unwrap();
        let brute_class: BTreeSet<Permutation> = elements.iter().map(|h| x.conj(h)).collect();
        prop_assert_eq!(classes.class(k).size, brute_class.len() as u64);
    }

    #[test]
    fn sylow_and_derived_subgroups((n, gens) in gens_strategy(), p in prop::sample::select(vec![2u64, 3])) {
        let g = PermGroup::new(n, gens.clone()).unwrap();
        let s = g.sylow_subgroup(p).unwrap();
        prop_assert_eq!(s.order(), nilblock::exactnum::arith::p_part(g.order(), p));
        prop_assert!(s.is_subgroup_of(&g));
        let d = g.derived_subgroup();
        prop_assert!(d.is_normal_in(&g));
        let elements = g.elements();
        let comms: Vec<Permutation> = elements
            .iter()
            .flat_map(|a| gens.iter().map(move |b| Permutation::commutator(a, b)))
            .collect();
        prop_assert_eq!(d.order(), brute_elements(n, &comms).len() as u64);
    }
}

#[test]
fn known_orders() {
    assert_eq!(symmetric(5).order(), 120);
    assert_eq!(alternating(5).order(), 60);
    assert_eq!(dihedral(6).unwrap().order(), 12);
    assert_eq!(alternating(5).derived_subgroup().order(), 60);
    assert_eq!(symmetric(4).o_upper_p(2).unwrap().order(), 12);
    assert_eq!(symmetric(4).o_upper_p(3).unwrap().order(), 24);
}

#[test]
fn solvability_flags() {
    let s4 = symmetric(4);
    assert!(s4.is_p_solvable(2).unwrap());
    assert!(!s4.is_p_nilpotent(2).unwrap());
    assert!(alternating(4).is_p_nilpotent(3).unwrap());
    assert!(!alternating(4).is_p_nilpotent(2).unwrap());
    assert!(!alternating(5).is_p_solvable(2).unwrap());
    assert!(dihedral(5).unwrap().is_p_nilpotent(2).unwrap());
}

#[test]
fn group_file_rejects_bad_input() {
    let good = "name = \"v4\"\ndegree = 4\ngenerators = [\"(1,2)(3,4)\", \"(1,3)(2,4)\"]\n";
    assert_eq!(GroupFile::parse(good).unwrap().build().unwrap().order(), 4);
    let out_of_range = "name = \"x\"\ndegree = 3\ngenerators = [\"(1,4)\"]\n";
    assert!(GroupFile::parse(out_of_range).unwrap().build().is_err());
    let repeated = "name = \"x\"\ndegree = 3\ngenerators = [\"(1,2,1)\"]\n";
    assert!(GroupFile::parse(repeated).unwrap().build().is_err());
    assert!(GroupFile::parse("name = 3").is_err());
}
