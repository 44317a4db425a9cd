//! Permutations of `{0, …, n-1}` acting on the right.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::arith::{crt_split_exponents, lcm};

/// A permutation stored as its image array. Products follow the right-action
/// convention: `a.mul(&b)` first applies `a`, then `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::MalformedInput(format!(
                    "image array {images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Builds a permutation of degree `n` from 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n {
                    return Err(Error::MalformedInput(format!(
                        "point {} exceeds degree {n}",
                        a + 1
                    )));
                }
                if touched[a] {
                    return Err(Error::MalformedInput(format!(
                        "point {} repeated in cycles",
                        a + 1
                    )));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Parses 1-based cycle notation such as `"(1,2,3)(4,5)"`; `"()"` is the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::MalformedInput(format!("expected '(' in {text:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::MalformedInput(format!("unclosed cycle in {text:?}")))?;
            let inner = &body[..close];
            rest = &body[close + 1..];
            if inner.is_empty() {
                continue;
            }
            let cycle = inner
                .split(',')
                .map(|tok| match tok.parse::<usize>() {
                    Ok(0) | Err(_) => Err(Error::MalformedInput(format!(
                        "bad point {tok:?} in {text:?} (points are 1-based)"
                    ))),
                    Ok(v) => Ok(v - 1),
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
        }
        Permutation::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Apply `self`, then `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inv(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let mut base = if exp < 0 { self.inv() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `g⁻¹·self·g`.
    pub fn conj(&self, g: &Permutation) -> Permutation {
        // (g⁻¹ x g)(g(i)) = g(x(i))
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images }
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inv().mul(&b.inv()).mul(a).mul(b)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Cycle notation with 1-based points; the identity renders as `()`.
    pub fn to_cycle_string(&self) -> String {
        let parts: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", pts.join(","))
            })
            .collect();
        if parts.is_empty() {
            "()".into()
        } else {
            parts.concat()
        }
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

/// Splits `x` into commuting `p`-part and `p′`-part, `x = u·s`.
pub fn pprime_decomposition(x: &Permutation, p: u64) -> (Permutation, Permutation) {
    let (a, b) = crt_split_exponents(x.order(), p);
    (x.pow(a as i64), x.pow(b as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_render() {
        let x = Permutation::parse_cycles(5, "(1, 2,3)( 4,5)").unwrap();
        assert_eq!(x.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(x.to_cycle_string(), "(1,2,3)(4,5)");
        assert_eq!(x.order(), 6);
        assert!(Permutation::parse_cycles(3, "()").unwrap().is_identity());
        assert!(Permutation::parse_cycles(3, "(1,4)").is_err());
        assert!(Permutation::parse_cycles(3, "(0,1)").is_err());
        assert!(Permutation::parse_cycles(3, "(1,2)(2,3)").is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn right_action() {
        let a = Permutation::parse_cycles(3, "(1,2)").unwrap();
        let b = Permutation::parse_cycles(3, "(2,3)").unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.mul(&b).image(0), 2);
        assert_eq!(a.conj(&b), b.inv().mul(&a).mul(&b));
    }

    #[test]
    fn decompositions() {
        let x = Permutation::parse_cycles(5, "(1,2,3)(4,5)").unwrap();
        let (u, s) = pprime_decomposition(&x, 2);
        assert_eq!(u, x.pow(3));
        assert_eq!(s, x.pow(4));
        assert_eq!((u.order(), s.order()), (2, 3));

        let y = Permutation::parse_cycles(7, "(1,2,3)(4,5,6,7)").unwrap();
        let (u, s) = pprime_decomposition(&y, 3);
        assert_eq!(u, y.pow(4));
        assert_eq!(s, y.pow(9));
        assert_eq!((u.order(), s.order()), (3, 4));

        let z = Permutation::parse_cycles(4, "(1,2,3,4)").unwrap();
        assert_eq!(
            pprime_decomposition(&z, 2),
            (z.clone(), Permutation::identity(4))
        );
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn group_laws(a in arb_perm(7), b in arb_perm(7), c in arb_perm(7)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.mul(&a.inv()).is_identity());
            prop_assert!(a.pow(a.order() as i64).is_identity());
        }

        #[test]
        fn pprime_parts_commute(a in arb_perm(9), pi in 0usize..3) {
            let p = [2u64, 3, 5][pi];
            let (u, s) = pprime_decomposition(&a, p);
            prop_assert_eq!(u.mul(&s), a.clone());
            prop_assert_eq!(s.mul(&u), a.clone());
            prop_assert_eq!(crate::exactnum::arith::gcd(u.order(), s.order()), 1);
            prop_assert_eq!(crate::exactnum::arith::p_part(u.order(), p), u.order());
            prop_assert_eq!(crate::exactnum::arith::p_part(s.order(), p), 1);
        }
    }
}
