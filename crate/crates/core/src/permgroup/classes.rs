//! Conjugacy classes by seeded random search completed with a full sweep.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::group::{ElementKey, PermGroup};
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::exactnum::arith::prime_divisors;

/// Largest group whose classes are enumerated.
pub const CLASS_ENUMERATION_BOUND: u64 = 1_000_000;
const CONSECUTIVE_MISSES: usize = 48;

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Lexicographically least element of the class.
    pub representative: Permutation,
    pub size: u64,
    pub centralizer_order: u64,
    pub element_order: u64,
    /// Prime `q` dividing `|G|` ↦ class of `representative^q`.
    pub power_map: BTreeMap<u64, usize>,
}

/// Classes together with an element → class lookup.
pub struct ClassStructure {
    group: PermGroup,
    classes: Vec<ConjugacyClass>,
    lookup: HashMap<ElementKey, u32>,
    inverse: Vec<usize>,
}

struct Found {
    rep: Permutation,
    size: u64,
}

fn conjugation_orbit(
    g: &PermGroup,
    x: &Permutation,
    id: u32,
    lookup: &mut HashMap<ElementKey, u32>,
) -> Found {
    let mut rep = x.clone();
    let mut size = 1u64;
    lookup.insert(g.key(x), id);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(y) = queue.pop_front() {
        for s in g.generators() {
            let z = y.conj(s);
            let key = g.key(&z);
            if let std::collections::hash_map::Entry::Vacant(e) = lookup.entry(key) {
                e.insert(id);
                size += 1;
                if z < rep {
                    rep = z.clone();
                }
                queue.push_back(z);
            }
        }
    }
    Found { rep, size }
}

impl ClassStructure {
    pub fn compute(group: &PermGroup) -> Result<Self> {
        let order = group.order();
        if order > CLASS_ENUMERATION_BOUND {
            return Err(Error::capacity(
                "conjugacy class enumeration",
                CLASS_ENUMERATION_BOUND,
            ));
        }
        let mut lookup: HashMap<ElementKey, u32> = HashMap::with_capacity(order as usize);
        let mut found: Vec<Found> = Vec::new();
        let mut covered = 0u64;

        let try_add = |x: &Permutation,
                       lookup: &mut HashMap<ElementKey, u32>,
                       found: &mut Vec<Found>,
                       covered: &mut u64|
         -> bool {
            if lookup.contains_key(&group.key(x)) {
                return false;
            }
            let f = conjugation_orbit(group, x, found.len() as u32, lookup);
            *covered += f.size;
            found.push(f);
            true
        };

        try_add(&group.identity(), &mut lookup, &mut found, &mut covered);
        let mut rng = ChaCha8Rng::seed_from_u64(0xc1a55e5);
        let mut misses = 0;
        while covered < order && misses < CONSECUTIVE_MISSES {
            let g = group.random_element(&mut rng);
            if try_add(&g, &mut lookup, &mut found, &mut covered) {
                misses = 0;
                let m = g.order();
                let mut power = g.clone();
                for _ in 2..m {
                    power = power.mul(&g);
                    try_add(&power, &mut lookup, &mut found, &mut covered);
                }
            } else {
                misses += 1;
            }
        }
        if covered < order {
            let mut missing: Vec<ElementKey> = Vec::new();
            group.for_each_key(|key| {
                if !lookup.contains_key(key) {
                    missing.push(key.to_vec());
                }
                true
            });
            for key in missing {
                if !lookup.contains_key(&key) {
                    let x = group.element_from_key(&key).expect("valid key");
                    try_add(&x, &mut lookup, &mut found, &mut covered);
                }
            }
        }
        if covered != order {
            return Err(Error::InternalConsistency(format!(
                "class sizes sum to {covered}, group order {order}"
            )));
        }

        // Sort by size, then by representative.
        let mut perm: Vec<usize> = (0..found.len()).collect();
        perm.sort_by(|&a, &b| {
            found[a]
                .size
                .cmp(&found[b].size)
                .then_with(|| found[a].rep.cmp(&found[b].rep))
        });
        let mut relabel = vec![0u32; found.len()];
        for (new, &old) in perm.iter().enumerate() {
            relabel[old] = new as u32;
        }
        for v in lookup.values_mut() {
            *v = relabel[*v as usize];
        }
        let primes = prime_divisors(order);
        let mut classes: Vec<ConjugacyClass> = perm
            .iter()
            .map(|&old| {
                let f = &found[old];
                ConjugacyClass {
                    representative: f.rep.clone(),
                    size: f.size,
                    centralizer_order: order / f.size,
                    element_order: f.rep.order(),
                    power_map: BTreeMap::new(),
                }
            })
            .collect();
        let cls = |x: &Permutation| lookup[&group.key(x)] as usize;
        let inverse: Vec<usize> = classes
            .iter()
            .map(|c| cls(&c.representative.inv()))
            .collect();
        for c in classes.iter_mut() {
            for &q in &primes {
                let target = cls(&c.representative.pow(q as i64));
                c.power_map.insert(q, target);
            }
        }
        Ok(ClassStructure {
            group: group.clone(),
            classes,
            lookup,
            inverse,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, i: usize) -> &ConjugacyClass {
        &self.classes[i]
    }

    pub fn class_of_key(&self, key: &[u32]) -> Option<usize> {
        self.lookup.get(key).map(|&c| c as usize)
    }

    /// Class of an element; `None` if it is not in the group.
    pub fn class_of(&self, x: &Permutation) -> Option<usize> {
        if !self.group.contains(x) {
            return None;
        }
        self.class_of_key(&self.group.key(x))
    }

    /// Class of a product of two group elements.
    pub fn class_of_product(&self, a: &Permutation, b: &Permutation) -> usize {
        self.lookup[&self.group.key_of_product(a, b)] as usize
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Class of `representative^t` for any integer `t`.
    pub fn power_class(&self, i: usize, t: i64) -> usize {
        let c = &self.classes[i];
        let t = t.rem_euclid(c.element_order as i64);
        if let Some(&j) = c.power_map.get(&(t as u64)) {
            return j;
        }
        self.lookup[&self.group.key(&c.representative.pow(t))] as usize
    }

    /// All elements of class `i`.
    pub fn class_elements(&self, i: usize) -> Vec<Permutation> {
        let x = &self.classes[i].representative;
        let mut seen: HashMap<ElementKey, ()> = HashMap::new();
        seen.insert(self.group.key(x), ());
        let mut out = vec![x.clone()];
        let mut k = 0;
        while k < out.len() {
            for s in self.group.generators() {
                let z = out[k].conj(s);
                if seen.insert(self.group.key(&z), ()).is_none() {
                    out.push(z);
                }
            }
            k += 1;
        }
        out
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.classes
            .iter()
            .fold(1, |e, c| crate::exactnum::arith::lcm(e, c.element_order))
    }
}

pub fn conjugacy_classes(group: &PermGroup) -> Result<Vec<ConjugacyClass>> {
    Ok(ClassStructure::compute(group)?.classes)
}
