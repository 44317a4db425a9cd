use std::collections::BTreeSet;

use nilblock::blocks::{block_partition, Block};
use nilblock::chartab::{character_table, CharacterTable};
use nilblock::cli::catalog::{build_catalog_entry, CATALOG};
use nilblock::exactnum::arith::{p_part, prime_divisors};
use nilblock::exactnum::Cyclotomic;
use nilblock::fusion::{
    block_fusion_system, focal_subgroup, group_fusion_system, hyperfocal_subgroup,
};
use nilblock::permgroup::{PermGroup, Permutation, DEFAULT_SUBGROUP_CAP};
use nilblock::star::{linear_characters_mod_focal, StarContext};
use nilblock::verdicts::{block_verdict, FocalMethod};
use proptest::prelude::*;

fn nu(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Blocks as connected components of `χ ~ ψ` iff `Σ_{g p-regular} χ(g)ψ(g⁻¹) ≠ 0`.
fn linkage_components(t: &CharacterTable, p: u64) -> Vec<BTreeSet<usize>> {
    let classes = t.classes();
    let regular: Vec<usize> = (0..classes.len())
        .filter(|&k| classes.class(k).representative.order() % p != 0)
        .collect();
    let r = t.len();
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for i in 0..r {
        for j in i + 1..r {
            let mut s = Cyclotomic::zero(t.field());
            for &k in &regular {
                let size = nilblock::exactnum::Rational::from_int(classes.class(k).size as i64);
                s = &s + &(t.value(i, k) * &t.value(j, k).conj()).scale(&size);
            }
            if !s.is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut comps: std::collections::BTreeMap<usize, BTreeSet<usize>> = Default::default();
    for i in 0..r {
        let root = find(&mut parent, i);
        comps.entry(root).or_default().insert(i);
    }
    comps.into_values().collect()
}

fn as_sets(blocks: &[Block]) -> BTreeSet<BTreeSet<usize>> {
    blocks
        .iter()
        .map(|b| b.members.iter().copied().collect())
        .collect()
}

#[test]
fn blocks_match_osima_linkage() {
    for e in CATALOG.iter().filter(|e| e.order <= 200) {
        let g = e.build().unwrap();
        let t = character_table(&g).unwrap();
        for p in prime_divisors(g.order()) {
            let blocks = block_partition(&t, p).unwrap();
            let oracle: BTreeSet<BTreeSet<usize>> = linkage_components(&t, p).into_iter().collect();
            assert_eq!(as_sets(&blocks), oracle, "{} at {p}", e.name);
            let a = nu(g.order(), p);
            for b in &blocks {
                let least = b.members.iter().map(|&m| nu(t.degree(m), p)).min().unwrap();
                assert_eq!(b.defect, a - least, "{} at {p}", e.name);
                assert_eq!(b.defect_group.order(), p.pow(b.defect));
                assert!(b.defect_group.is_subgroup_of(&g));
            }
        }
    }
}

/// `⟨x⁻¹y : x, y ∈ P conjugate in G⟩`.
fn brute_focal(g: &PermGroup, p_group: &PermGroup) -> PermGroup {
    let elements = g.elements();
    let ps = p_group.elements();
    let mut gens: Vec<Permutation> = Vec::new();
    for x in &ps {
        for h in &elements {
            let y = x.conj(h);
            if p_group.contains(&y) {
                let c = x.inv().mul(&y);
                if !c.is_identity() && !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
    }
    p_group.subgroup(gens)
}

fn brute_aut_order(g: &PermGroup, q: &PermGroup) -> u64 {
    let elements = g.elements();
    let qs = q.elements();
    let normalizing = elements
        .iter()
        .filter(|h| qs.iter().all(|u| q.contains(&u.conj(h))))
        .count();
    let centralizing = elements
        .iter()
        .filter(|h| qs.iter().all(|u| u.conj(h) == *u))
        .count();
    (normalizing / centralizing) as u64
}

#[test]
fn group_fusion_matches_brute_force() {
    for name in [
        "s3",
        "a4",
        "s4",
        "d10",
        "dicyclic12",
        "sl23",
        "frobenius20",
        "frobenius21",
        "s3xs3",
    ] {
        let g = build_catalog_entry(name).unwrap();
        for p in prime_divisors(g.order()) {
            let s = g.sylow_subgroup(p).unwrap();
            let f = group_fusion_system(&g, p, &s, DEFAULT_SUBGROUP_CAP).unwrap();
            assert!(f.complete);
            for a in &f.subgroups {
                assert_eq!(
                    a.aut_order(),
                    brute_aut_order(&g, &a.subgroup),
                    "{name} at {p}"
                );
            }
            let total: usize = f.subgroups.iter().map(|a| a.class_length).sum();
            assert!(total >= f.subgroups.len());
            assert!(
                focal_subgroup(&f)
                    .unwrap()
                    .same_subgroup(&brute_focal(&g, &s)),
                "{name} at {p}"
            );
            let hyp = hyperfocal_subgroup(&f).unwrap();
            assert!(hyp.is_subgroup_of(&focal_subgroup(&f).unwrap()));
        }
    }
}

#[test]
fn dicyclic_nonprincipal_block_at_three() {
    let g = build_catalog_entry("dicyclic12").unwrap();
    let t = character_table(&g).unwrap();
    let blocks = block_partition(&t, 3).unwrap();
    assert_eq!(blocks.len(), 2);
    let b = &blocks[1];
    let mut irr0: Vec<u64> = b.height_zero_chars().iter().map(|&r| t.degree(r)).collect();
    irr0.sort();
    assert_eq!(irr0, vec![1, 1, 2]);
    let f = block_fusion_system(&t, b, DEFAULT_SUBGROUP_CAP).unwrap();
    let top = f
        .subgroups
        .iter()
        .find(|a| a.subgroup.same_subgroup(&b.defect_group))
        .unwrap();
    assert_eq!(top.aut_order(), 2);
    let v = block_verdict("dicyclic12", &t, 1, b, DEFAULT_SUBGROUP_CAP).unwrap();
    assert_eq!((v.m, v.focal_index), (6, Some(1)));
    assert_eq!(
        (v.cond_i, v.cond_iii, v.cond_iv),
        (Some(false), Some(false), Some(false))
    );
    assert_eq!(v.focal_method, FocalMethod::FusionEnumeration);
}

#[test]
fn star_action_axioms_on_catalog() {
    for (name, p) in [
        ("s4", 2),
        ("d8", 2),
        ("frobenius20", 2),
        ("c3xs3", 3),
        ("sl23", 3),
    ] {
        let g = build_catalog_entry(name).unwrap();
        let t = character_table(&g).unwrap();
        let b = &block_partition(&t, p).unwrap()[0];
        let f = group_fusion_system(&g, p, &b.defect_group, DEFAULT_SUBGROUP_CAP).unwrap();
        let foc = focal_subgroup(&f).unwrap();
        let lambdas = linear_characters_mod_focal(&b.defect_group, &foc).unwrap();
        assert_eq!(lambdas.len() as u64, b.defect_group.order() / foc.order());
        let ctx = StarContext::new(&t, p, &b.defect_group).unwrap();
        for chi in b.height_zero_chars() {
            for l in &lambdas {
                for m in &lambdas {
                    let lm = ctx.apply_row(&l.mul(m), chi).unwrap();
                    let nested = ctx.apply_row(l, ctx.apply_row(m, chi).unwrap()).unwrap();
                    assert_eq!(lm, nested, "{name}");
                }
                let image = ctx.apply_row(l, chi).unwrap();
                assert!(b.contains(image));
                assert_eq!(ctx.apply_row(&l.inv(), image).unwrap(), chi);
            }
        }
    }
}

fn small_group() -> impl Strategy<Value = PermGroup> {
    (3usize..=6).prop_flat_map(|n| {
        let perm = Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap());
        prop::collection::vec(perm, 1..=2).prop_map(move |gens| PermGroup::new(n, gens).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn verdict_invariants(g in small_group(), pick in 0usize..3) {
        prop_assume!(g.order() > 1);
        let primes = prime_divisors(g.order());
        let p = primes[pick % primes.len()];
        let t = character_table(&g).unwrap();
        let blocks = block_partition(&t, p).unwrap();
        for (i, b) in blocks.iter().enumerate() {
            let v = block_verdict("random", &t, i, b, DEFAULT_SUBGROUP_CAP).unwrap();
            prop_assert!(v.consistent);
            if let (Some(rhs), Some(f)) = (v.rhs, v.focal_index) {
                prop_assert_eq!(p.pow(v.nu_m) % rhs, 0);
                prop_assert_eq!(v.irr0_count as u64 % f, 0);
            }
            prop_assert_eq!(v.sylow_index_sq, (p_part(g.order(), p) / b.defect_group.order()).pow(2));
            if i == 0 {
                prop_assert_eq!(v.cond_iv, Some(g.is_p_nilpotent(p).unwrap()));
            }
        }
    }
}
