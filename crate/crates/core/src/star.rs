//! The *-construction: linear characters of `P/foc` acting on `Irr(B)`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::blocks::Block;
use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::exactnum::Cyclotomic;
use crate::permgroup::{pprime_decomposition, ElementIndex, PermGroup, Permutation};

/// Cosets of `foc` in `P`, shared by all characters of `P/foc`.
struct Cosets {
    index: ElementIndex,
    coset_of: Vec<usize>,
    /// Values are powers of a primitive `modulus`-th root of unity.
    modulus: u64,
}

/// A linear character of `P` trivial on `foc`.
#[derive(Clone)]
pub struct LinearCharacter {
    cosets: Arc<Cosets>,
    /// `λ` on coset `c` is `ζ_m^{exponents[c]}`.
    exponents: Vec<u64>,
}

impl std::fmt::Debug for LinearCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LinearCharacter")
            .field("modulus", &self.cosets.modulus)
            .field("exponents", &self.exponents)
            .finish()
    }
}

impl PartialEq for LinearCharacter {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.cosets, &other.cosets) && self.exponents == other.exponents
    }
}

impl LinearCharacter {
    pub fn p_group(&self) -> &PermGroup {
        self.cosets.index.group()
    }

    pub fn modulus(&self) -> u64 {
        self.cosets.modulus
    }

    /// `k` with `λ(u) = ζ_m^k`; `None` if `u ∉ P`.
    pub fn exponent_at(&self, u: &Permutation) -> Option<u64> {
        let i = self.cosets.index.index_of(u)?;
        Some(self.exponents[self.cosets.coset_of[i]])
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.modulus();
        LinearCharacter {
            cosets: Arc::clone(&self.cosets),
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| (a + b) % m)
                .collect(),
        }
    }

    pub fn inv(&self) -> Self {
        let m = self.modulus();
        LinearCharacter {
            cosets: Arc::clone(&self.cosets),
            exponents: self.exponents.iter().map(|a| (m - a) % m).collect(),
        }
    }
}

/// All `|P:foc|` linear characters of `P/foc`, trivial one first.
pub fn linear_characters_mod_focal(
    p_group: &PermGroup,
    foc: &PermGroup,
) -> Result<Vec<LinearCharacter>> {
    if !foc.is_normal_in(p_group) || !p_group.derived_subgroup().is_subgroup_of(foc) {
        return Err(Error::Domain(
            "focal subgroup must be normal and contain P′".into(),
        ));
    }
    let index = ElementIndex::new(p_group)?;
    let foc_gens: Vec<usize> = foc
        .generators()
        .iter()
        .map(|g| index.index_of_member(g))
        .collect();
    let n = index.len();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for start in 0..n {
        if coset_of[start] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(start);
        coset_of[start] = c;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &f in &foc_gens {
                let y = index.mul(x, f);
                if coset_of[y] == usize::MAX {
                    coset_of[y] = c;
                    stack.push(y);
                }
            }
        }
    }
    let count = reps.len();
    let cosets = Arc::new(Cosets {
        modulus: p_group.exponent(),
        index,
        coset_of,
    });
    let idx = &cosets.index;
    let coset_mul = |a: usize, b: usize| cosets.coset_of[idx.mul(reps[a], reps[b])];
    // Generators of P/foc chosen greedily from the generators of P.
    let mut gens: Vec<usize> = Vec::new();
    let mut span: BTreeSet<usize> = BTreeSet::from([cosets.coset_of[0]]);
    for g in p_group.generators() {
        let c = cosets.coset_of[idx.index_of_member(g)];
        if span.contains(&c) {
            continue;
        }
        gens.push(c);
        let mut frontier: Vec<usize> = span.iter().copied().collect();
        while let Some(a) = frontier.pop() {
            for &s in &gens {
                let b = coset_mul(a, s);
                if span.insert(b) {
                    frontier.push(b);
                }
            }
        }
    }
    let m = cosets.modulus;
    let identity_coset = cosets.coset_of[0];
    let mut out = Vec::new();
    let mut choice = vec![0u64; gens.len()];
    loop {
        // Propagate λ from the identity coset along generator edges.
        let mut values = vec![u64::MAX; count];
        values[identity_coset] = 0;
        let mut stack = vec![identity_coset];
        let mut ok = true;
        while ok {
            let Some(a) = stack.pop() else { break };
            for (s, &k) in gens.iter().zip(&choice) {
                let b = coset_mul(a, *s);
                let v = (values[a] + k) % m;
                if values[b] == u64::MAX {
                    values[b] = v;
                    stack.push(b);
                } else if values[b] != v {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.push(LinearCharacter {
                cosets: Arc::clone(&cosets),
                exponents: values,
            });
        }
        // Next tuple of generator exponents.
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < m {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
    }
    if out.len() != count {
        return Err(Error::InternalConsistency(format!(
            "found {} linear characters of a quotient of order {count}",
            out.len()
        )));
    }
    Ok(out)
}

/// Per-class data for applying the *-construction to one table.
pub struct StarContext<'a> {
    table: &'a CharacterTable,
    /// For each class: the p-parts of its representative as elements of `P`
    /// up to `G`-conjugacy, or empty if the p-part is not conjugate into `P`.
    p_conjugates: Vec<Vec<Permutation>>,
}

impl<'a> StarContext<'a> {
    pub fn new(table: &'a CharacterTable, p: u64, p_group: &PermGroup) -> Result<Self> {
        let classes = table.classes();
        let mut by_class: HashMap<usize, Vec<Permutation>> = HashMap::new();
        p_group.for_each_element(|y| {
            if let Some(k) = classes.class_of(y) {
                by_class.entry(k).or_default().push(y.clone());
            }
            true
        });
        let p_conjugates = classes
            .classes()
            .iter()
            .map(|c| {
                let (u, _) = pprime_decomposition(&c.representative, p);
                let k = classes.class_of(&u).expect("power of a group element");
                by_class.get(&k).cloned().unwrap_or_default()
            })
            .collect();
        Ok(StarContext {
            table,
            p_conjugates,
        })
    }

    /// `λ * χ` as a class function.
    pub fn apply(&self, lambda: &LinearCharacter, row: usize) -> Result<Vec<Cyclotomic>> {
        let e = self.table.exponent();
        let m = lambda.modulus();
        if e % m != 0 {
            return Err(Error::Domain(
                "character values need a larger cyclotomic field".into(),
            ));
        }
        let mut out = Vec::with_capacity(self.p_conjugates.len());
        for (k, conj) in self.p_conjugates.iter().enumerate() {
            let chi = self.table.value(row, k);
            if conj.is_empty() {
                if !chi.is_zero() {
                    return Err(Error::InternalConsistency(
                        "character nonzero off the sections meeting P".into(),
                    ));
                }
                out.push(chi.clone());
                continue;
            }
            let exps: BTreeSet<u64> = conj
                .iter()
                .map(|u| lambda.exponent_at(u).expect("element of P"))
                .collect();
            if exps.len() != 1 {
                return Err(Error::WellDefinedness(format!(
                    "linear character takes {} values on the fused p-parts of class {k}",
                    exps.len()
                )));
            }
            let root = exps.into_iter().next().unwrap() * (e / m);
            out.push(chi.mul_root(root));
        }
        Ok(out)
    }

    /// Row of `λ * χ`, identified by inner products.
    pub fn apply_row(&self, lambda: &LinearCharacter, row: usize) -> Result<usize> {
        let theta = self.apply(lambda, row)?;
        let mults = self.table.decompose(&theta)?;
        let nonzero: Vec<(usize, u64)> = mults
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, m)| *m > 0)
            .collect();
        match nonzero.as_slice() {
            [(j, 1)] => Ok(*j),
            _ => Err(Error::InternalConsistency(
                "λ * χ is not irreducible".into(),
            )),
        }
    }
}

pub fn star_apply(
    table: &CharacterTable,
    p: u64,
    lambda: &LinearCharacter,
    row: usize,
) -> Result<Vec<Cyclotomic>> {
    StarContext::new(table, p, lambda.p_group())?.apply(lambda, row)
}

/// Orbits of `P/foc` on `Irr_0(B)`, each sorted, ordered by least member.
pub fn star_orbits(
    table: &CharacterTable,
    block: &Block,
    lambdas: &[LinearCharacter],
) -> Result<Vec<Vec<usize>>> {
    let Some(first) = lambdas.first() else {
        return Err(Error::Domain("no linear characters given".into()));
    };
    let ctx = StarContext::new(table, block.prime, first.p_group())?;
    let irr0 = block.height_zero_chars();
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for &chi in &irr0 {
        if seen.contains(&chi) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for lambda in lambdas {
            let j = ctx.apply_row(lambda, chi)?;
            if !block.contains(j) {
                return Err(Error::InternalConsistency("λ * χ left the block".into()));
            }
            orbit.insert(j);
        }
        seen.extend(orbit.iter().copied());
        orbits.push(orbit.into_iter().collect());
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::block_partition;
    use crate::chartab::character_table;
    use crate::fusion::principal_oracles;
    use crate::permgroup::builders::{alternating, cyclic, dihedral, symmetric};

    fn principal_setup(g: &PermGroup, p: u64) -> (CharacterTable, Block, Vec<LinearCharacter>) {
        let t = character_table(g).unwrap();
        let b = block_partition(&t, p).unwrap().remove(0);
        let (foc, _) = principal_oracles(g, p, &b.defect_group).unwrap();
        let lambdas = linear_characters_mod_focal(&b.defect_group, &foc).unwrap();
        (t, b, lambdas)
    }

    #[test]
    fn counting_linear_characters() {
        let c2 = cyclic(2);
        assert_eq!(
            linear_characters_mod_focal(&c2, &PermGroup::trivial(2))
                .unwrap()
                .len(),
            2
        );
        let d8 = dihedral(4).unwrap();
        assert_eq!(linear_characters_mod_focal(&d8, &d8).unwrap().len(), 1);
        let v4 = d8.normal_closure(&[Permutation::parse_cycles(4, "(1,3)").unwrap()]);
        assert_eq!(v4.order(), 4);
        assert_eq!(linear_characters_mod_focal(&d8, &v4).unwrap().len(), 2);
        let center = d8.center();
        assert_eq!(linear_characters_mod_focal(&d8, &center).unwrap().len(), 4);
        assert!(matches!(
            linear_characters_mod_focal(&d8, &PermGroup::trivial(4)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn s3_sign_from_trivial() {
        let (t, b, lambdas) = principal_setup(&symmetric(3), 2);
        let ctx = StarContext::new(&t, 2, &b.defect_group).unwrap();
        assert_eq!(ctx.apply_row(&lambdas[0], 0).unwrap(), 0);
        assert_eq!(ctx.apply_row(&lambdas[1], 0).unwrap(), 1);
        assert_eq!(star_orbits(&t, &b, &lambdas).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn orbit_shapes() {
        let (t, b, lambdas) = principal_setup(&alternating(4), 3);
        let orbits = star_orbits(&t, &b, &lambdas).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].len(), 3);
        let (t, b, lambdas) = principal_setup(&alternating(5), 2);
        let orbits = star_orbits(&t, &b, &lambdas).unwrap();
        assert_eq!(orbits.len(), 4);
        assert!(orbits.iter().all(|o| o.len() == 1));
        assert_eq!(t.len(), 5);
    }

    #[test]
    fn action_axioms() {
        let (t, b, lambdas) = principal_setup(&symmetric(4), 2);
        let ctx = StarContext::new(&t, 2, &b.defect_group).unwrap();
        for l in &lambdas {
            for mu in &lambdas {
                for &chi in &b.members {
                    let inner = ctx.apply_row(mu, chi).unwrap();
                    assert_eq!(
                        ctx.apply(&l.mul(mu), chi).unwrap(),
                        ctx.apply(l, inner).unwrap()
                    );
                }
            }
        }
    }
}
