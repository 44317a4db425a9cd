//! Permutation groups and the standard subgroup constructions.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chain::StabChain;
use super::perm::{pprime_decomposition, Permutation};
use crate::error::{Error, Result};
use crate::exactnum::arith::{is_prime, p_part};

/// Base image of an element with respect to its group's base; determines the element.
pub type ElementKey = Vec<u32>;

const RANDOM_ATTEMPTS: usize = 256;

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Arc<StabChain>,
    order: u64,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::MalformedInput("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::MalformedInput(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let generators: Vec<Permutation> = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        let chain = StabChain::new(degree, &generators);
        let order = u64::try_from(chain.order())
            .map_err(|_| Error::capacity("group order exceeds 64 bits", u64::MAX))?;
        Ok(PermGroup {
            degree,
            generators,
            chain: Arc::new(chain),
            order,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group")
    }

    /// Subgroup generated by elements of the same degree.
    pub fn subgroup(&self, generators: Vec<Permutation>) -> PermGroup {
        PermGroup::new(self.degree, generators).expect("subgroup of a valid group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.chain.strong_generators()
    }

    pub fn key(&self, g: &Permutation) -> ElementKey {
        self.chain
            .levels
            .iter()
            .map(|l| g.image(l.base_point) as u32)
            .collect()
    }

    /// Key of `a·b` without forming the product.
    pub fn key_of_product(&self, a: &Permutation, b: &Permutation) -> ElementKey {
        self.chain
            .levels
            .iter()
            .map(|l| b.image(a.image(l.base_point)) as u32)
            .collect()
    }

    pub fn element_from_key(&self, key: &[u32]) -> Option<Permutation> {
        self.chain.element_from_base_image(key)
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> Permutation {
        let digits: Vec<usize> = self
            .chain
            .levels
            .iter()
            .map(|l| rng.random_range(0..l.orbit.len()))
            .collect();
        self.chain.element_from_digits(&digits)
    }

    /// Visits every element (in a fixed order). `f` returns `false` to stop early.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation) -> bool) {
        let levels = &self.chain.levels;
        if levels.is_empty() {
            f(&self.identity());
            return;
        }
        // Depth-first over digits, building u_{L-1} ⋯ u_l incrementally.
        fn rec(
            chain: &StabChain,
            level: usize,
            prefix: &Permutation,
            f: &mut dyn FnMut(&Permutation) -> bool,
        ) -> bool {
            let lvl = &chain.levels[level];
            for t in &lvl.transversal {
                let g = prefix.mul(t);
                let keep_going = if level == 0 {
                    f(&g)
                } else {
                    rec(chain, level - 1, &g, f)
                };
                if !keep_going {
                    return false;
                }
            }
            true
        }
        rec(&self.chain, levels.len() - 1, &self.identity(), &mut f);
    }

    /// Visits the key of every element without forming full permutations.
    pub fn for_each_key(&self, mut f: impl FnMut(&[u32]) -> bool) {
        let levels = &self.chain.levels;
        let len = levels.len();
        if len == 0 {
            f(&[]);
            return;
        }
        let base: Vec<usize> = self.base();
        // key(u_{L-1} ⋯ u_0)[i] = u_0(⋯ u_{L-1}(b_i))
        fn rec(
            chain: &StabChain,
            level: usize,
            points: &[usize],
            f: &mut dyn FnMut(&[u32]) -> bool,
            buf: &mut Vec<u32>,
        ) -> bool {
            for t in &chain.levels[level].transversal {
                let next: Vec<usize> = points.iter().map(|&x| t.image(x)).collect();
                let keep_going = if level == 0 {
                    buf.clear();
                    buf.extend(next.iter().map(|&x| x as u32));
                    f(buf)
                } else {
                    rec(chain, level - 1, &next, f, buf)
                };
                if !keep_going {
                    return false;
                }
            }
            true
        }
        let mut buf = Vec::with_capacity(len);
        rec(&self.chain, len - 1, &base, &mut f, &mut buf);
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.order as usize);
        self.for_each_element(|g| {
            out.push(g.clone());
            true
        });
        out
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && other.order % self.order == 0
            && self.generators.iter().all(|g| other.contains(g))
    }

    /// Equality as subgroups of the symmetric group.
    pub fn same_subgroup(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// Whether every generator of `self` normalises `h`.
    pub fn normalizes(&self, h: &PermGroup) -> bool {
        self.generators
            .iter()
            .all(|g| h.generators.iter().all(|x| h.contains(&x.conj(g))))
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g) && g.normalizes(self)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        p_part(self.order, p) == self.order
    }

    /// `⟨self, extra⟩`, adding only elements not already present.
    pub fn closure(&self, extra: &[Permutation]) -> PermGroup {
        let mut gens = self.generators.clone();
        let mut current = self.clone();
        for x in extra {
            if !current.contains(x) {
                gens.push(x.clone());
                current = PermGroup::new(self.degree, gens.clone()).expect("closure");
            }
        }
        current
    }

    /// Smallest subgroup normalised by `self` containing `elements`.
    pub fn normal_closure(&self, elements: &[Permutation]) -> PermGroup {
        let mut n = PermGroup::trivial(self.degree).closure(elements);
        loop {
            let mut added = Vec::new();
            for x in n.generators() {
                for g in &self.generators {
                    let y = x.conj(g);
                    if !n.contains(&y) && !added.contains(&y) {
                        added.push(y);
                    }
                }
            }
            if added.is_empty() {
                return n;
            }
            n = n.closure(&added);
        }
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = Permutation::commutator(a, b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    pub fn centralizer(&self, x: &Permutation) -> Result<PermGroup> {
        if !self.contains(x) {
            return Err(Error::Domain(format!("{x} is not an element of the group")));
        }
        let orbit = ConjugationOrbit::new(self, x);
        let target = self.order / orbit.len() as u64;
        let mut c = PermGroup::trivial(self.degree);
        if target == 1 {
            return Ok(c);
        }
        'search: for k in 0..orbit.len() {
            let t = orbit.transversal(self, k);
            let y = x.conj(&t);
            for s in &self.generators {
                let image = orbit.index_of(self, &y.conj(s));
                let t2 = orbit.transversal(self, image);
                let schreier = t.mul(s).mul(&t2.inv());
                if !c.contains(&schreier) {
                    c = c.closure(&[schreier]);
                    if c.order == target {
                        break 'search;
                    }
                }
            }
        }
        debug_assert_eq!(c.order, target);
        Ok(c)
    }

    /// Brute force over the elements of `self`.
    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        if !h.is_subgroup_of(self) {
            return Err(Error::Domain("not a subgroup".into()));
        }
        let mut n = h.clone();
        let mut pending = Vec::new();
        self.for_each_element(|g| {
            if n.order == self.order {
                return false;
            }
            if !n.contains(g) && h.generators.iter().all(|x| h.contains(&x.conj(g))) {
                pending.push(g.clone());
                n = n.closure(&pending);
                pending.clear();
            }
            true
        });
        Ok(n)
    }

    /// Intersection by enumerating the smaller group.
    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        let (small, large) = if self.order <= other.order {
            (self, other)
        } else {
            (other, self)
        };
        if small.is_subgroup_of(large) {
            return small.clone();
        }
        let mut meet = PermGroup::trivial(self.degree);
        small.for_each_element(|g| {
            if large.contains(g) && !meet.contains(g) {
                meet = meet.closure(std::slice::from_ref(g));
            }
            true
        });
        meet
    }

    pub fn sylow_subgroup(&self, p: u64) -> Result<PermGroup> {
        check_prime(p)?;
        let target = p_part(self.order, p);
        let mut s = PermGroup::trivial(self.degree);
        if target == 1 {
            return Ok(s);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5710 ^ p);
        let mut misses = 0;
        while s.order < target && misses < RANDOM_ATTEMPTS {
            let g = self.random_element(&mut rng);
            let (u, _) = pprime_decomposition(&g, p);
            if u.is_identity() || s.contains(&u) {
                misses += 1;
                continue;
            }
            let h = s.closure(&[u]);
            if h.is_p_group(p) {
                s = h;
                misses = 0;
            } else {
                misses += 1;
            }
        }
        if s.order < target {
            // Any p-element of N(S) outside S extends S.
            let mut found = true;
            while s.order < target && found {
                found = false;
                let current = s.clone();
                self.for_each_element(|g| {
                    let (u, _) = pprime_decomposition(g, p);
                    if current.contains(&u) {
                        return true;
                    }
                    if current
                        .generators
                        .iter()
                        .all(|x| current.contains(&x.conj(&u)))
                    {
                        let mut v = u.clone();
                        while !current.contains(&v.pow(p as i64)) {
                            v = v.pow(p as i64);
                        }
                        s = current.closure(&[v]);
                        found = true;
                        return false;
                    }
                    true
                });
            }
        }
        if s.order != target {
            return Err(Error::InternalConsistency("Sylow search stalled".into()));
        }
        Ok(s)
    }

    /// Subgroup generated by the `p′`-elements.
    pub fn o_upper_p(&self, p: u64) -> Result<PermGroup> {
        check_prime(p)?;
        self.generated_by_parts(p, false)
    }

    /// Subgroup generated by the `p`-elements.
    pub fn o_upper_p_prime(&self, p: u64) -> Result<PermGroup> {
        check_prime(p)?;
        self.generated_by_parts(p, true)
    }

    fn generated_by_parts(&self, p: u64, p_elements: bool) -> Result<PermGroup> {
        let part = |g: &Permutation| {
            let (u, s) = pprime_decomposition(g, p);
            if p_elements {
                u
            } else {
                s
            }
        };
        let done = |n: &PermGroup| {
            let index = self.order / n.order;
            if p_elements {
                p_part(index, p) == 1
            } else {
                p_part(index, p) == index
            }
        };
        let seeds: Vec<Permutation> = self.generators.iter().map(part).collect();
        let mut n = self.normal_closure(&seeds);
        let mut rng = ChaCha8Rng::seed_from_u64(0x0b5e_ed00 ^ p);
        let mut misses = 0;
        while !done(&n) && misses < RANDOM_ATTEMPTS {
            let x = part(&self.random_element(&mut rng));
            if n.contains(&x) {
                misses += 1;
            } else {
                n = self.normal_closure(&n.closure(&[x]).generators);
                misses = 0;
            }
        }
        while !done(&n) {
            let current = n.clone();
            let mut extra = None;
            self.for_each_element(|g| {
                let x = part(g);
                if current.contains(&x) {
                    true
                } else {
                    extra = Some(x);
                    false
                }
            });
            let x = extra.ok_or_else(|| Error::InternalConsistency("generation stalled".into()))?;
            n = self.normal_closure(&n.closure(&[x]).generators);
        }
        Ok(n)
    }

    /// Counts elements of order prime to `p` and compares with `|G|_{p′}`.
    pub fn is_p_nilpotent(&self, p: u64) -> Result<bool> {
        check_prime(p)?;
        let mut count = 0u64;
        self.for_each_element(|g| {
            if g.order() % p != 0 {
                count += 1;
            }
            true
        });
        Ok(count == self.order / p_part(self.order, p))
    }

    /// Alternately strips `O^{p′}` and `O^p` until reaching the trivial group.
    pub fn is_p_solvable(&self, p: u64) -> Result<bool> {
        let mut h = self.clone();
        loop {
            if h.is_trivial() {
                return Ok(true);
            }
            let a = h.o_upper_p_prime(p)?;
            let b = a.o_upper_p(p)?;
            if b.order == h.order {
                return Ok(false);
            }
            h = b;
        }
    }

    pub fn center(&self) -> PermGroup {
        let mut z = PermGroup::trivial(self.degree);
        self.for_each_element(|g| {
            if !z.contains(g) && self.generators.iter().all(|x| x.mul(g) == g.mul(x)) {
                z = z.closure(std::slice::from_ref(g));
            }
            true
        });
        z
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        let mut e = 1;
        self.for_each_element(|g| {
            e = crate::exactnum::arith::lcm(e, g.order());
            true
        });
        e
    }
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{p} is not a prime")))
    }
}

/// Conjugation orbit of an element stored as keys plus a Schreier tree.
pub(crate) struct ConjugationOrbit {
    keys: Vec<ElementKey>,
    index: std::collections::HashMap<ElementKey, u32>,
    /// (parent index, generator index); the root has parent `u32::MAX`.
    tree: Vec<(u32, u32)>,
}

impl ConjugationOrbit {
    pub fn new(g: &PermGroup, x: &Permutation) -> Self {
        let mut keys = vec![g.key(x)];
        let mut index = std::collections::HashMap::new();
        index.insert(keys[0].clone(), 0u32);
        let mut tree = vec![(u32::MAX, 0)];
        let mut queue = std::collections::VecDeque::from([(0u32, x.clone())]);
        while let Some((k, y)) = queue.pop_front() {
            for (j, s) in g.generators().iter().enumerate() {
                let z = y.conj(s);
                let key = g.key(&z);
                if !index.contains_key(&key) {
                    let id = keys.len() as u32;
                    index.insert(key.clone(), id);
                    keys.push(key);
                    tree.push((k, j as u32));
                    queue.push_back((id, z));
                }
            }
        }
        ConjugationOrbit { keys, index, tree }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn index_of(&self, g: &PermGroup, y: &Permutation) -> usize {
        self.index[&g.key(y)] as usize
    }

    /// An element `t` with `x^t` equal to the `k`-th orbit element.
    pub fn transversal(&self, g: &PermGroup, k: usize) -> Permutation {
        let mut path = Vec::new();
        let mut cur = k;
        while self.tree[cur].0 != u32::MAX {
            path.push(self.tree[cur].1 as usize);
            cur = self.tree[cur].0 as usize;
        }
        let mut t = g.identity();
        for &j in path.iter().rev() {
            t = t.mul(&g.generators()[j]);
        }
        t
    }
}
