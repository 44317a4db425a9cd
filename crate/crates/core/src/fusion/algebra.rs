//! Sparse elements of group algebras over `F_{p^m}`, block idempotents and
//! the Brauer homomorphism.

use std::collections::{BTreeMap, HashMap};

use crate::blocks::{block_partition_with, Block};
use crate::chartab::{character_table, CharacterTable};
use crate::error::{Error, Result};
use crate::exactnum::{build_reduction_map, Cyclotomic, FFElement, Rational, ReductionMap};
use crate::permgroup::group::check_prime;
use crate::permgroup::{PermGroup, Permutation};

/// Largest group whose block idempotents are formed explicitly.
pub const IDEMPOTENT_BOUND: u64 = 5000;

/// `Σ a_x x` with nonzero coefficients only. Ordering is lexicographic on the
/// sorted support, which makes "least idempotent" well defined.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupAlgebraElement {
    terms: BTreeMap<Permutation, FFElement>,
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        GroupAlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(degree: usize, one: FFElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Permutation::identity(degree), one);
        GroupAlgebraElement { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Permutation, FFElement)>) -> Self {
        let mut out = Self::zero();
        for (x, a) in terms {
            out.add_term(x, a);
        }
        out
    }

    fn add_term(&mut self, x: Permutation, a: FFElement) {
        if a.is_zero() {
            return;
        }
        match self.terms.get_mut(&x) {
            Some(b) => {
                let s = &*b + &a;
                if s.is_zero() {
                    self.terms.remove(&x);
                } else {
                    *b = s;
                }
            }
            None => {
                self.terms.insert(x, a);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &FFElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, x: &Permutation) -> Option<&FFElement> {
        self.terms.get(x)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, a) in &other.terms {
            out.add_term(x.clone(), a.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: HashMap<Permutation, FFElement> = HashMap::new();
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let c = a * b;
                let xy = x.mul(y);
                match acc.get_mut(&xy) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(xy, c);
                    }
                }
            }
        }
        GroupAlgebraElement {
            terms: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// `g⁻¹ z g`.
    pub fn conj(&self, g: &Permutation) -> Self {
        GroupAlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(x, a)| (x.conj(g), a.clone()))
                .collect(),
        }
    }

    pub fn is_invariant_under(&self, q: &PermGroup) -> bool {
        q.generators().iter().all(|g| self.conj(g) == *self)
    }

    /// Part of the support lying in `h`.
    pub fn truncate_to(&self, h: &PermGroup) -> Self {
        GroupAlgebraElement {
            terms: self
                .terms
                .iter()
                .filter(|(x, _)| h.contains(x))
                .map(|(x, a)| (x.clone(), a.clone()))
                .collect(),
        }
    }
}

/// `Br_Q(z)`: the part of the support centralizing `Q`. Domain error unless
/// `z` is `Q`-invariant.
pub fn brauer_homomorphism(z: &GroupAlgebraElement, q: &PermGroup) -> Result<GroupAlgebraElement> {
    if !z.is_invariant_under(q) {
        return Err(Error::Domain(
            "element is not invariant under the subgroup".into(),
        ));
    }
    Ok(GroupAlgebraElement {
        terms: z
            .terms
            .iter()
            .filter(|(x, _)| q.generators().iter().all(|s| x.mul(s) == s.mul(x)))
            .map(|(x, a)| (x.clone(), a.clone()))
            .collect(),
    })
}

/// `C_G(Q)` by filtering the centralizer of one generator.
pub fn centralizer_of_subgroup(g: &PermGroup, q: &PermGroup) -> Result<PermGroup> {
    let gens = q.generators();
    let Some(first) = gens.first() else {
        return Ok(g.clone());
    };
    let c = g.centralizer(first)?;
    if gens.len() == 1 {
        return Ok(c);
    }
    let mut out = PermGroup::trivial(g.degree());
    c.for_each_element(|x| {
        if !out.contains(x) && gens[1..].iter().all(|s| x.mul(s) == s.mul(x)) {
            out = out.closure(std::slice::from_ref(x));
        }
        true
    });
    Ok(out)
}

/// Reduction of `Σ_{χ∈B} (χ(1)/|G|) Σ_g χ(g⁻¹) g`.
pub fn block_idempotent(
    table: &CharacterTable,
    block: &Block,
    reduction: &ReductionMap,
) -> Result<GroupAlgebraElement> {
    let classes = table.classes();
    let order = table.group().order() as i128;
    let mut terms = Vec::new();
    for k in 0..classes.len() {
        let mut coeff = Cyclotomic::zero(table.field());
        for &row in &block.members {
            let v = table
                .value(row, k)
                .conj()
                .scale(&Rational::new(table.degree(row) as i128, 1));
            coeff = coeff + v;
        }
        let c = reduction.reduce(&coeff.scale(&Rational::new(1, order)))?;
        if c.is_zero() {
            continue;
        }
        for x in classes.class_elements(k) {
            terms.push((x, c.clone()));
        }
    }
    Ok(GroupAlgebraElement::from_terms(terms))
}

/// Block idempotents of `kH` in block order, with coefficients reduced by
/// `reduction` (whose conductor must be a multiple of `exp(H)`).
pub fn block_idempotents_with(
    h: &PermGroup,
    reduction: &ReductionMap,
) -> Result<Vec<(GroupAlgebraElement, Block)>> {
    if h.order() > IDEMPOTENT_BOUND {
        return Err(Error::capacity(
            "group order for block idempotents",
            IDEMPOTENT_BOUND,
        ));
    }
    let table = character_table(h)?;
    let blocks = block_partition_with(&table, reduction)?;
    blocks
        .into_iter()
        .map(|b| Ok((block_idempotent(&table, &b, reduction)?, b)))
        .collect()
}

pub fn block_idempotents_mod_p(h: &PermGroup, p: u64) -> Result<Vec<(GroupAlgebraElement, Block)>> {
    check_prime(p)?;
    block_idempotents_with(h, &build_reduction_map(h.exponent(), p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::builders::{cyclic, symmetric};

    fn check_decomposition(h: &PermGroup, p: u64) -> usize {
        let idems = block_idempotents_mod_p(h, p).unwrap();
        let one = build_reduction_map(h.exponent(), p).one();
        let mut total = GroupAlgebraElement::zero();
        for (i, (e, _)) in idems.iter().enumerate() {
            assert_eq!(e.mul(e), *e);
            for (f, _) in &idems[i + 1..] {
                assert!(e.mul(f).is_zero());
            }
            total = total.add(e);
        }
        assert_eq!(total, GroupAlgebraElement::identity(h.degree(), one));
        idems.len()
    }

    #[test]
    fn idempotents_decompose_one() {
        assert_eq!(check_decomposition(&symmetric(3), 2), 2);
        assert_eq!(check_decomposition(&symmetric(3), 3), 1);
        assert_eq!(check_decomposition(&cyclic(3), 3), 1);
        assert_eq!(check_decomposition(&cyclic(3), 2), 3);
        // principal {1, sign, 2} and two defect-zero blocks of degree 3
        assert_eq!(check_decomposition(&symmetric(4), 3), 3);
    }

    #[test]
    fn brauer_map_basics() {
        let g = symmetric(4);
        let idems = block_idempotents_mod_p(&g, 2).unwrap();
        let (b, _) = &idems[0];
        let p = g.sylow_subgroup(2).unwrap();
        assert!(!brauer_homomorphism(b, &p).unwrap().is_zero());
        let trivial = PermGroup::trivial(4);
        assert_eq!(brauer_homomorphism(b, &trivial).unwrap(), *b);
        let x = Permutation::parse_cycles(4, "(1,2)").unwrap();
        let lone = GroupAlgebraElement::from_terms([(x, build_reduction_map(1, 2).one())]);
        let q = g.subgroup(vec![Permutation::parse_cycles(4, "(1,2,3)").unwrap()]);
        assert!(matches!(
            brauer_homomorphism(&lone, &q),
            Err(Error::Domain(_))
        ));
    }
}
