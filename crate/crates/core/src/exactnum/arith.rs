//! Integer helpers: primality, factorisation, p-parts and modular arithmetic.

use crate::error::{Error, Result};

/// Largest `a` with `p^a | n`.
pub fn valuation(n: i128, p: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain("valuation of zero".into()));
    }
    if p < 2 {
        return Err(Error::Domain(format!("{p} is not a prime")));
    }
    let p = p as i128;
    let mut n = n.abs();
    let mut a = 0;
    while n % p == 0 {
        n /= p;
        a += 1;
    }
    Ok(a)
}

/// The `p`-part of a positive integer.
pub fn p_part(n: u64, p: u64) -> u64 {
    assert!(n > 0, "p-part of zero");
    let mut n = n;
    let mut part = 1;
    while n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}

/// The `p'`-part of a positive integer.
pub fn p_prime_part(n: u64, p: u64) -> u64 {
    n / p_part(n, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Prime factorisation as `(prime, exponent)` pairs.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    prime_divisors(n)
        .into_iter()
        .map(|p| {
            let mut k = 0;
            let mut m = n;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            (p, k)
        })
        .collect()
}

/// Renders `2^2·3^2·43`.
pub fn factorization_string(n: u64) -> String {
    if n == 1 {
        return "1".into();
    }
    factorize(n)
        .iter()
        .map(|&(p, k)| {
            if k == 1 {
                p.to_string()
            } else {
                format!("{p}^{k}")
            }
        })
        .collect::<Vec<_>>()
        .join("·")
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Multiplicative order of `a` modulo `n` (requires `gcd(a, n) = 1`).
pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    assert!(gcd(a, n) == 1, "order of a non-unit");
    if n == 1 {
        return 1;
    }
    let mut k = 1;
    let mut x = a % n;
    while x != 1 {
        x = mul_mod(x, a, n);
        k += 1;
    }
    k
}

/// Least primitive root modulo the prime `q`.
pub fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let factors = prime_divisors(q - 1);
    (2..q)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, (q - 1) / f, q) != 1))
        .expect("every prime has a primitive root")
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// Möbius function.
pub fn moebius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Exponents `(a, b)` with `a ≡ 1, b ≡ 0 (mod p-part)` and `a ≡ 0, b ≡ 1 (mod p'-part)`,
/// so that `x^a` is the p-part and `x^b` the p'-part of an element of order `m`.
pub fn crt_split_exponents(m: u64, p: u64) -> (u64, u64) {
    let pp = p_part(m, p);
    let rest = m / pp;
    if rest == 1 {
        return (1, 0);
    }
    if pp == 1 {
        return (0, 1);
    }
    // a = rest * (rest^{-1} mod pp)
    let a = rest * inv_mod(rest % pp, pp).expect("coprime") % m;
    let b = (m + 1 - a) % m;
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(valuation(1548, 3).unwrap(), 2);
        assert_eq!(valuation(1, 5).unwrap(), 0);
        assert_eq!(valuation(34992, 3).unwrap(), 7);
        assert_eq!(valuation(-12, 2).unwrap(), 2);
        assert!(matches!(valuation(0, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn factorization_render() {
        assert_eq!(factorization_string(1548), "2^2·3^2·43");
        assert_eq!(factorization_string(34992), "2^4·3^7");
    }

    #[test]
    fn crt_exponents() {
        assert_eq!(crt_split_exponents(6, 2), (3, 4));
        assert_eq!(crt_split_exponents(12, 3), (4, 9));
        assert_eq!(crt_split_exponents(9, 3), (1, 0));
        assert_eq!(crt_split_exponents(5, 3), (0, 1));
    }

    #[test]
    fn orders_and_roots() {
        assert_eq!(multiplicative_order(7, 8), 2);
        assert_eq!(multiplicative_order(2, 3), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(totient(36), 12);
        assert_eq!(moebius(30), -1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
