//! Explicit element lists for small groups.

use std::collections::HashMap;

use super::group::{ElementKey, PermGroup};
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Largest group whose elements are listed explicitly.
pub const ENUMERATION_BOUND: u64 = 100_000;
const TABLE_BOUND: usize = 2048;

/// Elements of a group indexed `0..|H|`; index 0 is the identity.
pub struct ElementIndex {
    group: PermGroup,
    elements: Vec<Permutation>,
    index: HashMap<ElementKey, u32>,
    inverse: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl ElementIndex {
    pub fn new(group: &PermGroup) -> Result<Self> {
        if group.order() > ENUMERATION_BOUND {
            return Err(Error::capacity(
                "explicit element enumeration",
                ENUMERATION_BOUND,
            ));
        }
        let elements = group.elements();
        let index: HashMap<ElementKey, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (group.key(g), i as u32))
            .collect();
        let inverse = elements
            .iter()
            .map(|g| index[&group.key(&g.inv())])
            .collect();
        let n = elements.len();
        let table = (n <= TABLE_BOUND).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&group.key_of_product(a, b)]);
                }
            }
            t
        });
        Ok(ElementIndex {
            group: group.clone(),
            elements,
            index,
            inverse,
            table,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        if !self.group.contains(g) {
            return None;
        }
        self.index.get(&self.group.key(g)).map(|&i| i as usize)
    }

    /// Index of an element known to lie in the group.
    pub fn index_of_member(&self, g: &Permutation) -> usize {
        self.index[&self.group.key(g)] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => {
                self.index[&self
                    .group
                    .key_of_product(&self.elements[a], &self.elements[b])] as usize
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `b⁻¹ a b`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn order_of(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}
