//! Prime fields, polynomials over `F_p`, equal-degree factorisation and the
//! extension fields `F_{p^m} = F_p[x]/(f)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::arith::{inv_mod, mul_mod};

/// Dense polynomial over `F_p`, constant term first, no trailing zeros.
pub type FpPoly = Vec<u64>;

pub fn poly_trim(a: &mut FpPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn poly_degree(a: &FpPoly) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn poly_add(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    poly_trim(&mut out);
    out
}

pub fn poly_sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    poly_trim(&mut out);
    out
}

pub fn poly_mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn poly_divrem(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], p).expect("leading coefficient invertible");
    let mut rem = a.clone();
    poly_trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut q = vec![0u64; rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = mul_mod(rem[k + db], lead_inv, p);
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p - mul_mod(c, bj, p)) % p;
        }
    }
    poly_trim(&mut rem);
    poly_trim(&mut q);
    (q, rem)
}

pub fn poly_rem(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    poly_divrem(a, b, p).1
}

pub fn poly_monic(a: &FpPoly, p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lead) => {
            let inv = inv_mod(lead, p).unwrap();
            a.iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

pub fn poly_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    poly_monic(&a, p)
}

pub fn poly_mulmod(a: &FpPoly, b: &FpPoly, f: &FpPoly, p: u64) -> FpPoly {
    poly_rem(&poly_mul(a, b, p), f, p)
}

pub fn poly_powmod(a: &FpPoly, mut exp: u64, f: &FpPoly, p: u64) -> FpPoly {
    let mut acc: FpPoly = poly_rem(&vec![1], f, p);
    let mut base = poly_rem(a, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        exp >>= 1;
    }
    acc
}

/// Reduces an integer polynomial modulo `p`.
pub fn poly_from_ints(coeffs: &[i64], p: u64) -> FpPoly {
    let mut out: FpPoly = coeffs
        .iter()
        .map(|&c| (c as i128).rem_euclid(p as i128) as u64)
        .collect();
    poly_trim(&mut out);
    out
}

/// Splits a squarefree monic `f` whose irreducible factors all have degree `d`
/// (Cantor–Zassenhaus). Factors are returned monic and sorted.
pub fn equal_degree_factorization(f: &FpPoly, d: usize, p: u64, seed: u64) -> Vec<FpPoly> {
    let n = poly_degree(f).expect("nonzero polynomial");
    assert!(d > 0 && n % d == 0, "degree {n} is not a multiple of {d}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = Vec::new();
    let mut todo = vec![poly_monic(f, p)];
    while let Some(g) = todo.pop() {
        let deg = g.len() - 1;
        if deg == d {
            done.push(g);
            continue;
        }
        loop {
            let mut a: FpPoly = (0..deg).map(|_| rng.random_range(0..p)).collect();
            poly_trim(&mut a);
            if a.is_empty() {
                continue;
            }
            let b = if p == 2 {
                // trace map a + a^2 + … + a^{2^{d-1}}
                let mut t = a.clone();
                let mut sq = a.clone();
                for _ in 1..d {
                    sq = poly_mulmod(&sq, &sq, &g, p);
                    t = poly_add(&t, &sq, p);
                }
                t
            } else {
                // a^{(p^d - 1)/2} = (a · a^p · … · a^{p^{d-1}})^{(p-1)/2}
                let mut norm = a.clone();
                let mut frob = a.clone();
                for _ in 1..d {
                    frob = poly_powmod(&frob, p, &g, p);
                    norm = poly_mulmod(&norm, &frob, &g, p);
                }
                let h = poly_powmod(&norm, (p - 1) / 2, &g, p);
                poly_sub(&h, &vec![1], p)
            };
            let h = poly_gcd(&b, &g, p);
            let dh = h.len().saturating_sub(1);
            if dh > 0 && dh < deg {
                let (q, _) = poly_divrem(&g, &h, p);
                todo.push(poly_monic(&q, p));
                todo.push(h);
                break;
            }
        }
    }
    done.sort_by(|a, b| lex_cmp(a, b));
    done
}

/// Lexicographic order on coefficient sequences, constant term first.
pub fn lex_cmp(a: &FpPoly, b: &FpPoly) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// The field `F_p[x]/(f)` for an irreducible monic `f` of degree `m`.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct GaloisField {
    p: u64,
    modulus: FpPoly,
}

impl GaloisField {
    pub fn new(p: u64, modulus: FpPoly) -> Arc<Self> {
        assert!(
            modulus.len() >= 2 && *modulus.last().unwrap() == 1,
            "modulus must be monic"
        );
        Arc::new(GaloisField { p, modulus })
    }

    pub fn prime_field(p: u64) -> Arc<Self> {
        GaloisField::new(p, vec![0, 1])
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.degree() as u32)
    }
}

/// An element of `F_{p^m}`; coordinates in the basis `1, x, …, x^{m-1}`.
#[derive(Clone)]
pub struct FFElement {
    field: Arc<GaloisField>,
    coeffs: Vec<u64>,
}

impl FFElement {
    fn from_poly(field: &Arc<GaloisField>, mut poly: FpPoly) -> Self {
        let m = field.degree();
        poly = poly_rem(&poly, &field.modulus, field.p);
        poly.resize(m, 0);
        FFElement {
            field: Arc::clone(field),
            coeffs: poly,
        }
    }

    pub fn zero(field: &Arc<GaloisField>) -> Self {
        FFElement {
            field: Arc::clone(field),
            coeffs: vec![0; field.degree()],
        }
    }

    pub fn from_int(field: &Arc<GaloisField>, n: u64) -> Self {
        Self::from_poly(field, vec![n % field.p])
    }

    pub fn one(field: &Arc<GaloisField>) -> Self {
        Self::from_int(field, 1)
    }

    /// The residue class of `x`.
    pub fn generator(field: &Arc<GaloisField>) -> Self {
        Self::from_poly(field, vec![0, 1])
    }

    pub fn from_coeffs(field: &Arc<GaloisField>, coeffs: Vec<u64>) -> Self {
        let p = field.p;
        Self::from_poly(field, coeffs.into_iter().map(|c| c % p).collect())
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: u64) -> Self {
        let p = self.field.p;
        FFElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|&c| mul_mod(c, k % p, p)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = FFElement::one(&self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn frobenius(&self) -> Self {
        self.pow(self.field.p)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.field.p;
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        let (mut r0, mut r1) = (self.field.modulus.clone(), a);
        let (mut s0, mut s1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1, p);
            let s = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant
        let c = inv_mod(r0[0], p)?;
        Some(Self::from_poly(
            &self.field,
            s0.iter().map(|&x| mul_mod(x, c, p)).collect(),
        ))
    }

    /// Multiplicative order (for nonzero elements).
    pub fn multiplicative_order(&self) -> u64 {
        assert!(!self.is_zero());
        let mut k = 1;
        let mut x = self.clone();
        while !x.is_one() {
            x = &x * self;
            k += 1;
        }
        k
    }
}

impl PartialEq for FFElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for FFElement {}

impl Hash for FFElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Ord for FFElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl PartialOrd for FFElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => c.to_string(),
                1 if c == 1 => "x".into(),
                1 => format!("{c}*x"),
                _ if c == 1 => format!("x^{i}"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Add for &FFElement {
    type Output = FFElement;
    fn add(self, rhs: &FFElement) -> FFElement {
        debug_assert!(self.field == rhs.field);
        let p = self.field.p;
        FFElement {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        }
    }
}

impl Sub for &FFElement {
    type Output = FFElement;
    fn sub(self, rhs: &FFElement) -> FFElement {
        self + &(-rhs)
    }
}

impl Neg for &FFElement {
    type Output = FFElement;
    fn neg(self) -> FFElement {
        let p = self.field.p;
        FFElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|&a| (p - a) % p).collect(),
        }
    }
}

impl Mul for &FFElement {
    type Output = FFElement;
    fn mul(self, rhs: &FFElement) -> FFElement {
        debug_assert!(self.field == rhs.field);
        let p = self.field.p;
        if self.coeffs.len() == 1 {
            return FFElement {
                field: Arc::clone(&self.field),
                coeffs: vec![mul_mod(self.coeffs[0], rhs.coeffs[0], p)],
            };
        }
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        let mut b = rhs.coeffs.clone();
        poly_trim(&mut b);
        FFElement::from_poly(&self.field, poly_mul(&a, &b, p))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FFElement {
            type Output = FFElement;
            fn $m(self, rhs: FFElement) -> FFElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::cyclotomic::cyclotomic_polynomial;

    #[test]
    fn factor_cyclotomic_mod_p() {
        // Φ_8 over F_7 splits into two quadratics.
        let f = poly_from_ints(&cyclotomic_polynomial(8), 7);
        let factors = equal_degree_factorization(&f, 2, 7, 1);
        assert_eq!(factors.len(), 2);
        let prod = poly_mul(&factors[0], &factors[1], 7);
        assert_eq!(prod, f);
        // Φ_7 over F_2: two cubics, x^3+x^2+1 first (constant term first ordering).
        let f = poly_from_ints(&cyclotomic_polynomial(7), 2);
        let factors = equal_degree_factorization(&f, 3, 2, 9);
        assert_eq!(factors, vec![vec![1, 0, 1, 1], vec![1, 1, 0, 1]]);
    }

    #[test]
    fn factorization_independent_of_seed() {
        let f = poly_from_ints(&cyclotomic_polynomial(13), 3);
        let a = equal_degree_factorization(&f, 3, 3, 1);
        let b = equal_degree_factorization(&f, 3, 3, 77);
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn inverse_in_f9() {
        let field = GaloisField::new(3, vec![1, 0, 1]);
        let x = FFElement::generator(&field);
        let inv = x.inv().unwrap();
        assert!((&x * &inv).is_one());
        assert_eq!(x.multiplicative_order(), 4);
    }
}
