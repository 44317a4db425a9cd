//! Exact arithmetic in cyclotomic fields `Q(ζ_e)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(e)-1}` after
//! reduction modulo the `e`-th cyclotomic polynomial. Since `Z[ζ_e]` is the
//! ring of integers, algebraic integers have integer coordinates.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::arith::{divisors, lcm, moebius, totient};
use super::rational::Rational;

/// The field `Q(ζ_e)` with precomputed reductions of `ζ^j`, `0 ≤ j < e`.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u64,
    phi: usize,
    modulus: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial.
fn poly_div_exact(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i128; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db];
        q[k] = c;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// Integer coefficients (constant term first) of the `e`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(e: u64) -> Vec<i64> {
    let mut num = vec![1i128];
    let mut den = vec![1i128];
    for d in divisors(e) {
        let mut f = vec![0i128; d as usize + 1];
        f[0] = -1;
        f[d as usize] = 1;
        match moebius(e / d) {
            1 => num = poly_mul(&num, &f),
            -1 => den = poly_mul(&den, &f),
            _ => {}
        }
    }
    poly_div_exact(&num, &den)
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Arc<Self> {
        assert!(conductor > 0, "conductor must be positive");
        let modulus = cyclotomic_polynomial(conductor);
        let phi = totient(conductor) as usize;
        debug_assert_eq!(modulus.len(), phi + 1);
        let mut powers = Vec::with_capacity(conductor as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..conductor {
            powers.push(cur.clone());
            // multiply by ζ and reduce the overflow term
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for i in 0..phi {
                cur[i] -= top * modulus[i];
            }
        }
        Arc::new(CyclotomicField {
            conductor,
            phi,
            modulus,
            powers,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Reduced coordinates of `ζ^k`.
    pub fn power(&self, k: u64) -> &[i64] {
        &self.powers[(k % self.conductor) as usize]
    }

    /// Reduces `Σ coeffs[j] ζ^j` (any length; exponents taken mod `e`).
    pub fn reduce_int(self: &Arc<Self>, coeffs: &[i128]) -> Cyclotomic {
        let mut acc = vec![0i128; self.phi];
        for (j, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let p = &self.powers[j % self.conductor as usize];
            for (a, &b) in acc.iter_mut().zip(p) {
                *a += c * b as i128;
            }
        }
        Cyclotomic {
            field: Arc::clone(self),
            coeffs: acc.into_iter().map(|c| Rational::new(c, 1)).collect(),
        }
    }
}

/// An element of `Q(ζ_e)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic {
            field: Arc::clone(field),
            coeffs: vec![Rational::zero(); field.phi],
        }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, r: Rational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(field: &Arc<CyclotomicField>, n: i64) -> Self {
        Self::from_rational(field, Rational::from_int(n))
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_int(field, 1)
    }

    /// `ζ_e^k`.
    pub fn root_of_unity(field: &Arc<CyclotomicField>, k: u64) -> Self {
        Cyclotomic {
            field: Arc::clone(field),
            coeffs: field
                .power(k)
                .iter()
                .map(|&c| Rational::from_int(c))
                .collect(),
        }
    }

    /// Builds an element from power-basis coordinates (length `φ(e)`).
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: Vec<Rational>) -> Self {
        assert_eq!(
            coeffs.len(),
            field.phi,
            "coordinate vector has wrong length"
        );
        Cyclotomic {
            field: Arc::clone(field),
            coeffs,
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Integer coordinates, if all coordinates are integers fitting `i64`.
    pub fn int_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(Rational::to_i64).collect()
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// Applies `ζ ↦ ζ^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: u64) -> Self {
        let e = self.field.conductor;
        let mut acc = vec![Rational::zero(); self.field.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = self.field.power((j as u64 * k) % e);
            for (a, &b) in acc.iter_mut().zip(p) {
                if b != 0 {
                    *a = &*a + &(c * &Rational::from_int(b));
                }
            }
        }
        Cyclotomic {
            field: Arc::clone(&self.field),
            coeffs: acc,
        }
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let e = self.field.conductor;
        self.galois(e - 1)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplies by `ζ^k` (cheap: a rotation followed by reduction).
    pub fn mul_root(&self, k: u64) -> Self {
        let e = self.field.conductor;
        let mut acc = vec![Rational::zero(); self.field.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = self.field.power((j as u64 + k) % e);
            for (a, &b) in acc.iter_mut().zip(p) {
                if b != 0 {
                    *a = &*a + &(c * &Rational::from_int(b));
                }
            }
        }
        Cyclotomic {
            field: Arc::clone(&self.field),
            coeffs: acc,
        }
    }

    /// Re-expresses the element over a field whose conductor is a multiple of ours.
    pub fn coerce_to(&self, target: &Arc<CyclotomicField>) -> Self {
        let e = self.field.conductor;
        let f = target.conductor;
        assert!(f % e == 0, "conductor {e} does not divide {f}");
        if e == f {
            return Cyclotomic {
                field: Arc::clone(target),
                coeffs: self.coeffs.clone(),
            };
        }
        let step = f / e;
        let mut acc = vec![Rational::zero(); target.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = target.power(j as u64 * step);
            for (a, &b) in acc.iter_mut().zip(p) {
                if b != 0 {
                    *a = &*a + &(c * &Rational::from_int(b));
                }
            }
        }
        Cyclotomic {
            field: Arc::clone(target),
            coeffs: acc,
        }
    }

    fn unify(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let f = lcm(a.conductor(), b.conductor());
        let field = if f == a.conductor() {
            Arc::clone(&a.field)
        } else if f == b.conductor() {
            Arc::clone(&b.field)
        } else {
            CyclotomicField::new(f)
        };
        (a.coerce_to(&field), b.coerce_to(&field))
    }

    fn same_field(&self, other: &Cyclotomic) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.conductor() == other.conductor()
    }

    /// Renders as a polynomial in `z = ζ_e`, e.g. `-1 - 2*z^3`.
    pub fn to_poly_string(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = if c.is_negative() { -c } else { c.clone() };
            let body = match (j, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "z".to_string(),
                (1, false) => format!("{mag}*z"),
                (_, true) => format!("z^{j}"),
                (_, false) => format!("{mag}*z^{j}"),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() {
                    format!("-{body}")
                } else {
                    body
                });
            } else {
                parts.push(format!(
                    "{} {body}",
                    if c.is_negative() { "-" } else { "+" }
                ));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Cyclotomic[e={}]({})",
            self.conductor(),
            self.to_poly_string()
        )
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly_string())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.same_field(other) {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Cyclotomic::unify(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.conductor().hash(state);
        self.coeffs.hash(state);
    }
}

impl Ord for Cyclotomic {
    /// Lexicographic on coordinates; only meaningful within one field.
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor()
            .cmp(&other.conductor())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if !self.same_field(rhs) {
            let (a, b) = Cyclotomic::unify(self, rhs);
            return &a + &b;
        }
        Cyclotomic {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if !self.same_field(rhs) {
            let (a, b) = Cyclotomic::unify(self, rhs);
            return &a * &b;
        }
        let field = &self.field;
        // Integer fast path.
        if let (Some(a), Some(b)) = (self.int_coeffs(), rhs.int_coeffs()) {
            let mut prod = vec![0i128; 2 * field.phi - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] += x as i128 * y as i128;
                }
            }
            return field.reduce_int(&prod);
        }
        let mut prod = vec![Rational::zero(); 2 * field.phi - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = &prod[i + j] + &(x * y);
                }
            }
        }
        let mut acc = vec![Rational::zero(); field.phi];
        for (k, c) in prod.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, &b) in acc.iter_mut().zip(field.power(k as u64)) {
                if b != 0 {
                    *a = &*a + &(c * &Rational::from_int(b));
                }
            }
        }
        Cyclotomic {
            field: Arc::clone(field),
            coeffs: acc,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

/// Exact `Σ_k w_k · a_k · b_k` for integer coordinate vectors `a_k`, `b_k`
/// (callers pass conjugated values as `b_k`), accumulated in `i128` and
/// reduced once at the end.
pub fn weighted_product_sum(
    field: &Arc<CyclotomicField>,
    weights: &[i64],
    a: &[Vec<i64>],
    b: &[Vec<i64>],
) -> Cyclotomic {
    let phi = field.phi;
    let mut acc = vec![0i128; 2 * phi - 1];
    for ((w, x), y) in weights.iter().zip(a).zip(b) {
        let w = *w as i128;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let wx = w * xi as i128;
            for (j, &yj) in y.iter().enumerate() {
                acc[i + j] += wx * yj as i128;
            }
        }
    }
    field.reduce_int(&acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).iter().any(|&c| c == -2));
    }

    #[test]
    fn roots_sum_to_mobius() {
        for e in 1..40u64 {
            let f = CyclotomicField::new(e);
            let mut s = Cyclotomic::zero(&f);
            for k in 0..e {
                if num_integer::gcd(k, e) == 1 {
                    s = &s + &Cyclotomic::root_of_unity(&f, k);
                }
            }
            assert_eq!(s, Cyclotomic::from_int(&f, moebius(e) as i64), "e = {e}");
        }
    }

    #[test]
    fn conjugation_norm_is_rational() {
        let f = CyclotomicField::new(12);
        let x = &Cyclotomic::root_of_unity(&f, 1) + &Cyclotomic::root_of_unity(&f, 4);
        let n = &x * &x.conj();
        assert!(n.to_rational().is_some());
        assert!(!n.to_rational().unwrap().is_negative());
    }

    #[test]
    fn coercion_by_dilation() {
        let f3 = CyclotomicField::new(3);
        let f12 = CyclotomicField::new(12);
        let w = Cyclotomic::root_of_unity(&f3, 1);
        assert_eq!(w.coerce_to(&f12), Cyclotomic::root_of_unity(&f12, 4));
        let r = Rational::new(3, 7);
        assert_eq!(
            Cyclotomic::from_rational(&f3, r.clone()).to_rational(),
            Some(r)
        );
    }

    #[test]
    fn poly_rendering() {
        let f = CyclotomicField::new(3);
        let x = &Cyclotomic::root_of_unity(&f, 1) * &Cyclotomic::from_int(&f, -2);
        assert_eq!(x.to_poly_string(), "-2*z");
        assert_eq!(Cyclotomic::root_of_unity(&f, 2).to_poly_string(), "-1 - z");
    }
}
