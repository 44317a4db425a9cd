//! Dixon–Schneider: common eigenvectors of the class matrices over `F_q`,
//! lifted to exact cyclotomic values through eigenvalue multiplicities.

use std::sync::Arc;

use super::modular::{charpoly, nullspace, roots, rref, Row};
use crate::error::{Error, Result};
use crate::exactnum::arith::{inv_mod, is_prime, isqrt, mul_mod, pow_mod, primitive_root};
use crate::exactnum::CyclotomicField;
use crate::permgroup::ClassStructure;

const MAX_PRIME_ATTEMPTS: usize = 16;

/// `a_{ijk} = #{(x, y) ∈ C_i × C_j : xy = z_k}` for fixed `z_k ∈ C_k`.
pub fn class_mult_coefficients(classes: &ClassStructure, i: usize, j: usize) -> Vec<u64> {
    let r = classes.len();
    let mut out = vec![0u64; r];
    let reps: Vec<_> = (0..r)
        .map(|k| classes.class(k).representative.clone())
        .collect();
    for x in classes.class_elements(i) {
        let x_inv = x.inv();
        for (k, z) in reps.iter().enumerate() {
            if classes.class_of_product(&x_inv, z) == j {
                out[k] += 1;
            }
        }
    }
    out
}

/// `(A_j)_{kl} = a_{jkl}`, so that central characters are right eigenvectors:
/// `A_j ω = ω_j ω`.
pub(crate) fn class_matrix(classes: &ClassStructure, j: usize) -> Vec<Vec<u32>> {
    let r = classes.len();
    let reps: Vec<_> = (0..r)
        .map(|k| classes.class(k).representative.clone())
        .collect();
    let mut m = vec![vec![0u32; r]; r];
    for x in classes.class_elements(j) {
        let x_inv = x.inv();
        for (l, z) in reps.iter().enumerate() {
            let k = classes.class_of_product(&x_inv, z);
            m[k][l] += 1;
        }
    }
    m
}

/// Admissible lifting primes: `q ≡ 1 (mod e)`, `q > 2√|G|`, increasing.
pub fn lifting_primes(order: u64, e: u64) -> impl Iterator<Item = u64> {
    let four_n = 4 * order as u128;
    (1u64..)
        .map(move |k| k * e + 1)
        .filter(move |&q| (q as u128) * (q as u128) > four_n && is_prime(q))
}

pub(crate) struct DixonResult {
    pub prime: u64,
    pub degrees: Vec<u64>,
    /// Integer coordinates in the power basis of `Q(ζ_e)`; rows × classes.
    pub values: Vec<Vec<Vec<i64>>>,
}

struct Attempt<'a> {
    classes: &'a ClassStructure,
    field: &'a Arc<CyclotomicField>,
    power_classes: &'a [Vec<usize>],
    matrices: &'a mut Vec<Option<Vec<Vec<u32>>>>,
}

impl Attempt<'_> {
    fn matrix_mod(&mut self, j: usize, q: u64) -> Vec<Row> {
        if self.matrices[j].is_none() {
            self.matrices[j] = Some(class_matrix(self.classes, j));
        }
        self.matrices[j]
            .as_ref()
            .unwrap()
            .iter()
            .map(|row| row.iter().map(|&x| x as u64 % q).collect())
            .collect()
    }

    /// Splits `F_q^r` into common eigenlines; `None` if splitting fails for this `q`.
    fn eigenvectors(&mut self, q: u64) -> Option<Vec<Row>> {
        let r = self.classes.len();
        let mut identity: Vec<Row> = (0..r)
            .map(|i| (0..r).map(|k| u64::from(i == k)).collect())
            .collect();
        rref(&mut identity, q);
        let mut spaces: Vec<Vec<Row>> = vec![identity];
        for j in 1..r {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let a = self.matrix_mod(j, q);
            let mut next = Vec::new();
            for basis in spaces {
                let d = basis.len();
                if d == 1 {
                    next.push(basis);
                    continue;
                }
                let pivots: Vec<usize> = basis
                    .iter()
                    .map(|b| b.iter().position(|&x| x != 0).unwrap())
                    .collect();
                // restricted[i][m] = (A_j b_m)[pivot_i]
                let restricted: Vec<Row> = pivots
                    .iter()
                    .map(|&p| {
                        basis
                            .iter()
                            .map(|b| {
                                a[p].iter()
                                    .zip(b)
                                    .fold(0u64, |acc, (&x, &y)| (acc + mul_mod(x, y, q)) % q)
                            })
                            .collect()
                    })
                    .collect();
                let eig = roots(&charpoly(&restricted, q), q);
                if eig.iter().map(|&(_, m)| m).sum::<usize>() != d {
                    return None;
                }
                if eig.len() == 1 {
                    next.push(basis);
                    continue;
                }
                let mut total = 0;
                for &(lambda, _) in &eig {
                    let shifted: Vec<Row> = restricted
                        .iter()
                        .enumerate()
                        .map(|(i, row)| {
                            row.iter()
                                .enumerate()
                                .map(|(m, &x)| if i == m { (x + q - lambda) % q } else { x })
                                .collect()
                        })
                        .collect();
                    let coords = nullspace(&shifted, q);
                    total += coords.len();
                    let mut sub: Vec<Row> = coords
                        .iter()
                        .map(|c| {
                            let mut v = vec![0u64; r];
                            for (cm, b) in c.iter().zip(&basis) {
                                if *cm == 0 {
                                    continue;
                                }
                                for (x, &y) in v.iter_mut().zip(b) {
                                    *x = (*x + mul_mod(*cm, y, q)) % q;
                                }
                            }
                            v
                        })
                        .collect();
                    rref(&mut sub, q);
                    next.push(sub);
                }
                if total != d {
                    return None;
                }
            }
            spaces = next;
        }
        if spaces.iter().any(|s| s.len() != 1) {
            return None;
        }
        Some(spaces.into_iter().map(|mut s| s.pop().unwrap()).collect())
    }

    fn run(&mut self, q: u64) -> Option<DixonResult> {
        let cs = self.classes;
        let r = cs.len();
        let order = cs.group().order();
        let e = self.field.conductor();
        let lines = self.eigenvectors(q)?;
        let sizes: Vec<u64> = cs.classes().iter().map(|c| c.size % q).collect();
        let zeta = pow_mod(primitive_root(q), (q - 1) / e, q);
        let mut degrees = Vec::with_capacity(r);
        let mut values = Vec::with_capacity(r);
        for line in lines {
            if line[0] == 0 {
                return None;
            }
            let norm = inv_mod(line[0], q)?;
            let w: Vec<u64> = line.iter().map(|&x| mul_mod(x, norm, q)).collect();
            let mut s = 0u64;
            for k in 0..r {
                let term = mul_mod(
                    mul_mod(w[k], w[cs.inverse_class(k)], q),
                    inv_mod(sizes[k], q)?,
                    q,
                );
                s = (s + term) % q;
            }
            let sq = mul_mod(order % q, inv_mod(s, q)?, q);
            let d = (1..=isqrt(order)).find(|&d| mul_mod(d, d, q) == sq)?;
            let chi: Vec<u64> = (0..r)
                .map(|k| mul_mod(mul_mod(w[k], d % q, q), inv_mod(sizes[k], q).unwrap(), q))
                .collect();
            let mut row = Vec::with_capacity(r);
            for k in 0..r {
                let o = cs.class(k).element_order;
                let zeta_o = pow_mod(zeta, e / o, q);
                let zeta_o_inv = inv_mod(zeta_o, q)?;
                let o_inv = inv_mod(o % q, q)?;
                let mut coords = vec![0i64; self.field.degree()];
                let mut total = 0u64;
                for l in 0..o {
                    // m_l = (1/o) Σ_t χ(x^t) ζ_o^{-lt}
                    let step = pow_mod(zeta_o_inv, l, q);
                    let mut acc = 0u64;
                    let mut root = 1u64;
                    for t in 0..o as usize {
                        acc = (acc + mul_mod(chi[self.power_classes[k][t]], root, q)) % q;
                        root = mul_mod(root, step, q);
                    }
                    let m = mul_mod(acc, o_inv, q);
                    if m > d {
                        return None;
                    }
                    total += m;
                    if m > 0 {
                        for (c, &b) in coords.iter_mut().zip(self.field.power(l * (e / o))) {
                            *c += m as i64 * b;
                        }
                    }
                }
                if total != d {
                    return None;
                }
                row.push(coords);
            }
            degrees.push(d);
            values.push(row);
        }
        if degrees.iter().map(|d| d * d).sum::<u64>() != order {
            return None;
        }
        Some(DixonResult {
            prime: q,
            degrees,
            values,
        })
    }
}

/// Runs Dixon–Schneider over successive lifting primes until the result
/// passes `accept` (exact verification by the caller).
pub(crate) fn dixon_schneider(
    classes: &ClassStructure,
    field: &Arc<CyclotomicField>,
    mut accept: impl FnMut(&DixonResult) -> bool,
) -> Result<DixonResult> {
    let r = classes.len();
    let power_classes: Vec<Vec<usize>> = (0..r)
        .map(|k| {
            let o = classes.class(k).element_order;
            (0..o as i64).map(|t| classes.power_class(k, t)).collect()
        })
        .collect();
    let mut matrices = vec![None; r];
    let mut attempt = Attempt {
        classes,
        field,
        power_classes: &power_classes,
        matrices: &mut matrices,
    };
    for q in lifting_primes(classes.group().order(), field.conductor()).take(MAX_PRIME_ATTEMPTS) {
        if let Some(res) = attempt.run(q) {
            if accept(&res) {
                return Ok(res);
            }
        }
    }
    Err(Error::InternalConsistency(format!(
        "eigenspace splitting failed for {MAX_PRIME_ATTEMPTS} lifting primes"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifting_prime_choice() {
        // |S3| = 6, e = 6: need q ≡ 1 mod 6 and q > 2√6 ≈ 4.9.
        assert_eq!(lifting_primes(6, 6).next(), Some(7));
        // |A5| = 60, e = 30: q > 2√60 ≈ 15.5 → 31.
        assert_eq!(lifting_primes(60, 30).next(), Some(31));
        assert_eq!(lifting_primes(1, 1).next(), Some(3));
    }
}
