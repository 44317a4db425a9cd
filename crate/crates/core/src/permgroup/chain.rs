//! Deterministic Schreier–Sims with explicit transversals.

use super::perm::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base_point: usize,
    /// Strong generators fixing all earlier base points.
    pub gens: Vec<Permutation>,
    pub orbit: Vec<u32>,
    /// Point → position in `orbit`, or `NOT_IN_ORBIT`.
    pub pos: Vec<u32>,
    /// `transversal[k]` maps the base point to `orbit[k]`.
    pub transversal: Vec<Permutation>,
    pub transversal_inv: Vec<Permutation>,
    /// For generator `j`, orbit positions `< checked[j]` have verified Schreier generators.
    checked: Vec<usize>,
}

impl Level {
    fn new(n: usize, base_point: usize) -> Self {
        let mut pos = vec![NOT_IN_ORBIT; n];
        pos[base_point] = 0;
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point as u32],
            pos,
            transversal: vec![Permutation::identity(n)],
            transversal_inv: vec![Permutation::identity(n)],
            checked: Vec::new(),
        }
    }

    #[inline]
    pub fn position(&self, point: usize) -> Option<usize> {
        match self.pos[point] {
            NOT_IN_ORBIT => None,
            k => Some(k as usize),
        }
    }

    fn add_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        self.checked.push(0);
        // Extend the orbit; existing transversal elements are left untouched.
        let mut k = 0;
        while k < self.orbit.len() {
            let pt = self.orbit[k] as usize;
            for j in 0..self.gens.len() {
                let img = self.gens[j].image(pt);
                if self.pos[img] == NOT_IN_ORBIT {
                    self.pos[img] = self.orbit.len() as u32;
                    self.orbit.push(img as u32);
                    let t = self.transversal[k].mul(&self.gens[j]);
                    self.transversal_inv.push(t.inv());
                    self.transversal.push(t);
                }
            }
            k += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<&Permutation> = gens.iter().filter(|g| !g.is_identity()).collect();
        for g in &gens {
            if chain
                .levels
                .iter()
                .all(|l| g.image(l.base_point) == l.base_point)
            {
                let b = g.first_moved_point().unwrap();
                chain.levels.push(Level::new(degree, b));
            }
        }
        for g in &gens {
            for l in 0..chain.levels.len() {
                if (0..l).all(|k| g.image(chain.levels[k].base_point) == chain.levels[k].base_point)
                {
                    chain.levels[l].add_gen((*g).clone());
                }
            }
        }
        chain.complete();
        chain
    }

    /// Sifts `g` starting at `from`; returns the residue and the level where
    /// sifting stopped (`levels.len()` if it passed every level).
    pub fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.image(level.base_point);
            match level.position(beta) {
                None => return (h, l),
                Some(k) => {
                    if k != 0 {
                        h = h.mul(&level.transversal_inv[k]);
                    }
                }
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, _) = self.sift(g, 0);
        h.is_identity()
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let mut j = 0;
            while j < self.levels[lvl].gens.len() {
                while self.levels[lvl].checked[j] < self.levels[lvl].orbit.len() {
                    let k = self.levels[lvl].checked[j];
                    let level = &self.levels[lvl];
                    let pt = level.orbit[k] as usize;
                    let s = &level.gens[j];
                    let img = s.image(pt);
                    let k2 = level.position(img).expect("orbit closed");
                    let schreier = level.transversal[k].mul(s).mul(&level.transversal_inv[k2]);
                    let (h, stop) = if schreier.is_identity() {
                        (schreier, self.levels.len())
                    } else {
                        self.sift(&schreier, lvl + 1)
                    };
                    if stop == self.levels.len() && h.is_identity() {
                        self.levels[lvl].checked[j] += 1;
                        continue;
                    }
                    let deepest = if stop == self.levels.len() {
                        let b = h.first_moved_point().unwrap();
                        self.levels.push(Level::new(self.degree, b));
                        self.levels.len() - 1
                    } else {
                        stop
                    };
                    for l in lvl + 1..=deepest {
                        self.levels[l].add_gen(h.clone());
                    }
                    i = deepest as isize;
                    continue 'outer;
                }
                j += 1;
            }
            i -= 1;
        }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Strong generators of the whole group (level 0), or an empty list.
    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels
            .first()
            .map(|l| l.gens.as_slice())
            .unwrap_or(&[])
    }

    /// Element with the given transversal positions `digits[l]` at each level:
    /// `u_{L-1} ⋯ u_0`.
    pub fn element_from_digits(&self, digits: &[usize]) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for (l, level) in self.levels.iter().enumerate().rev() {
            g = g.mul(&level.transversal[digits[l]]);
        }
        g
    }

    /// Reconstructs the element with the given base image.
    pub fn element_from_base_image(&self, image: &[u32]) -> Option<Permutation> {
        let mut img: Vec<usize> = image.iter().map(|&x| x as usize).collect();
        let mut digits = Vec::with_capacity(self.levels.len());
        for (l, level) in self.levels.iter().enumerate() {
            let k = level.position(img[l])?;
            digits.push(k);
            if k != 0 {
                let t = &level.transversal_inv[k];
                for x in img.iter_mut().skip(l + 1) {
                    *x = t.image(*x);
                }
            }
        }
        let g = self.element_from_digits(&digits);
        let consistent = self
            .levels
            .iter()
            .zip(image)
            .all(|(level, &x)| g.image(level.base_point) == x as usize);
        consistent.then_some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn symmetric_orders() {
        let c = StabChain::new(5, &[p(5, "(1,2,3,4,5)"), p(5, "(1,2)")]);
        assert_eq!(c.order(), 120);
        let c = StabChain::new(8, &[p(8, "(1,2,3,4,5,6,7,8)"), p(8, "(1,2)")]);
        assert_eq!(c.order(), 40320);
        assert!(c.contains(&p(8, "(3,7)(1,5,2)")));
        let a = StabChain::new(6, &[p(6, "(1,2,3)"), p(6, "(2,3,4,5,6)")]);
        assert_eq!(a.order(), 360);
        assert!(!a.contains(&p(6, "(1,2)")));
    }

    #[test]
    fn reconstruction_from_base_image() {
        let c = StabChain::new(6, &[p(6, "(1,2,3,4,5,6)"), p(6, "(1,2)")]);
        let g = p(6, "(1,4,2)(3,6)");
        let key: Vec<u32> = c.base().iter().map(|&b| g.image(b) as u32).collect();
        assert_eq!(c.element_from_base_image(&key).unwrap(), g);
    }
}
