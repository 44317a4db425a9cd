//! Reduction of cyclotomic integers modulo a prime ideal above `p`.

use std::sync::Arc;

use super::arith::{inv_mod, multiplicative_order, p_part};
use super::cyclotomic::{cyclotomic_polynomial, Cyclotomic};
use super::finite_field::{
    equal_degree_factorization, poly_from_ints, FFElement, FpPoly, GaloisField,
};
use super::rational::Rational;
use crate::error::{Error, Result};

/// The map `Z[ζ_e]_(p) → F_{p^m}` determined by one irreducible factor of the
/// `e′`-th cyclotomic polynomial mod `p`.
#[derive(Clone, Debug)]
pub struct ReductionMap {
    e: u64,
    e_prime: u64,
    p: u64,
    factor: FpPoly,
    field: Arc<GaloisField>,
    /// `powers[k]` is the image of `ζ_e^k`, indexed mod `e′`.
    powers: Vec<FFElement>,
}

/// Canonical map: the lexicographically least irreducible factor.
pub fn build_reduction_map(e: u64, p: u64) -> ReductionMap {
    build_reduction_map_with_factor(e, p, 0)
}

/// Same as [`build_reduction_map`] but choosing the `index`-th factor in
/// lexicographic order (wrapping around). Used to check that block data does
/// not depend on the choice of prime ideal.
pub fn build_reduction_map_with_factor(e: u64, p: u64, index: usize) -> ReductionMap {
    assert!(e > 0);
    let e_prime = e / p_part(e, p);
    let m = multiplicative_order(p % e_prime, e_prime) as usize;
    let phi = poly_from_ints(&cyclotomic_polynomial(e_prime), p);
    let factors = if phi.len() - 1 == m {
        vec![phi]
    } else {
        equal_degree_factorization(&phi, m, p, 0x5eed ^ e_prime)
    };
    let factor = factors[index % factors.len()].clone();

    // Degree-one factors x - r are realised inside the prime field.
    let (field, root) = if m == 1 {
        let field = GaloisField::prime_field(p);
        let r = (p - factor[0]) % p;
        let root = FFElement::from_int(&field, r);
        (field, root)
    } else {
        let field = GaloisField::new(p, factor.clone());
        let root = FFElement::generator(&field);
        (field, root)
    };

    // ζ_e ↦ root^s with s·p^a ≡ 1 (mod e′), so that ζ_e^{p^a} = ζ_{e′} ↦ root.
    let s = if e_prime == 1 {
        0
    } else {
        inv_mod(p_part(e, p) % e_prime, e_prime).expect("coprime")
    };
    let step = root.pow(s);
    let mut powers = Vec::with_capacity(e_prime as usize);
    let mut acc = FFElement::one(&field);
    for _ in 0..e_prime {
        powers.push(acc.clone());
        acc = &acc * &step;
    }
    ReductionMap {
        e,
        e_prime,
        p,
        factor,
        field,
        powers,
    }
}

impl ReductionMap {
    pub fn conductor(&self) -> u64 {
        self.e
    }

    pub fn p_prime_conductor(&self) -> u64 {
        self.e_prime
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> usize {
        self.factor.len() - 1
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    /// The chosen factor, constant coefficient first.
    pub fn factor(&self) -> &FpPoly {
        &self.factor
    }

    /// Image of `ζ_e^k`.
    pub fn root_image(&self, k: u64) -> &FFElement {
        &self.powers[(k % self.e_prime) as usize]
    }

    pub fn zero(&self) -> FFElement {
        FFElement::zero(&self.field)
    }

    pub fn one(&self) -> FFElement {
        FFElement::one(&self.field)
    }

    pub fn reduce_rational(&self, r: &Rational) -> Result<FFElement> {
        let v = r.mod_p(self.p).ok_or(Error::NotPIntegral(self.p))?;
        Ok(FFElement::from_int(&self.field, v))
    }

    /// Reduces a cyclotomic number whose conductor divides `e`.
    pub fn reduce(&self, x: &Cyclotomic) -> Result<FFElement> {
        let c = x.conductor();
        if self.e % c != 0 {
            return Err(Error::Domain(format!(
                "conductor {c} does not divide the map's conductor {}",
                self.e
            )));
        }
        let dil = self.e / c;
        let mut acc = self.zero();
        for (i, r) in x.coeffs().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let v = r.mod_p(self.p).ok_or(Error::NotPIntegral(self.p))?;
            if v == 0 {
                continue;
            }
            acc = &acc + &self.root_image(i as u64 * dil).scale(v);
        }
        Ok(acc)
    }

    /// `"p=3 e=12 e'=4 f=1+x^2"`, for reports.
    pub fn describe(&self) -> String {
        let terms: Vec<String> = self
            .factor
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        format!(
            "p={} e={} e'={} f={}",
            self.p,
            self.e,
            self.e_prime,
            terms.join("+")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::cyclotomic::CyclotomicField;
    use proptest::prelude::*;

    #[test]
    fn extension_degrees() {
        let m = build_reduction_map(3, 2);
        assert_eq!(m.extension_degree(), 2);
        assert_eq!(m.factor(), &vec![1, 1, 1]);

        let m = build_reduction_map(4, 2);
        assert_eq!(m.p_prime_conductor(), 1);
        assert_eq!(m.extension_degree(), 1);
        for k in 0..4 {
            assert!(m.root_image(k).is_one());
        }

        let m = build_reduction_map(8, 7);
        assert_eq!(m.p_prime_conductor(), 8);
        assert_eq!(m.extension_degree(), 2);
    }

    #[test]
    fn reduce_examples() {
        let m = build_reduction_map(6, 3);
        let f = CyclotomicField::new(6);
        assert!(m.reduce(&Cyclotomic::from_int(&f, 6)).unwrap().is_zero());

        let m = build_reduction_map(3, 2);
        let f = CyclotomicField::new(3);
        let s = &Cyclotomic::root_of_unity(&f, 1) + &Cyclotomic::root_of_unity(&f, 2);
        assert!(m.reduce(&s).unwrap().is_one());

        let m = build_reduction_map(4, 3);
        let f = CyclotomicField::new(4);
        let i = m.reduce(&Cyclotomic::root_of_unity(&f, 1)).unwrap();
        assert_eq!(m.field().order(), 9);
        assert_eq!((&i * &i), -&m.one());
    }

    #[test]
    fn not_p_integral() {
        let m = build_reduction_map(3, 3);
        let f = CyclotomicField::new(3);
        let third = Cyclotomic::from_rational(&f, Rational::new(1, 3));
        assert_eq!(m.reduce(&third), Err(Error::NotPIntegral(3)));
        assert!(m
            .reduce(&Cyclotomic::from_rational(&f, Rational::new(1, 2)))
            .is_ok());
    }

    #[test]
    fn root_orders() {
        for (e, p) in [(12u64, 2u64), (12, 3), (15, 2), (20, 3), (21, 2), (24, 5)] {
            let m = build_reduction_map(e, p);
            let f = CyclotomicField::new(e);
            for k in 0..e {
                let img = m.reduce(&Cyclotomic::root_of_unity(&f, k)).unwrap();
                let ord = e / crate::exactnum::arith::gcd(e, k);
                assert_eq!(
                    img.multiplicative_order(),
                    ord / p_part(ord, p),
                    "e={e} p={p} k={k}"
                );
            }
        }
    }

    #[test]
    fn second_factor_differs_but_is_valid() {
        let a = build_reduction_map_with_factor(7, 2, 0);
        let b = build_reduction_map_with_factor(7, 2, 1);
        assert_ne!(a.factor(), b.factor());
        let f = CyclotomicField::new(7);
        let z = Cyclotomic::root_of_unity(&f, 1);
        assert_eq!(b.reduce(&z).unwrap().multiplicative_order(), 7);
    }

    fn cyc_int(f: &Arc<CyclotomicField>, coeffs: &[i64]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(f);
        for (k, &c) in coeffs.iter().enumerate() {
            let term = Cyclotomic::root_of_unity(f, k as u64).scale(&Rational::from_int(c));
            acc = &acc + &term;
        }
        acc
    }

    proptest! {
        #[test]
        fn reduction_is_ring_homomorphism(
            choice in 0usize..6,
            xs in proptest::collection::vec(-5i64..5, 24),
            ys in proptest::collection::vec(-5i64..5, 24),
        ) {
            let (e, p) = [(12u64, 2u64), (12, 3), (9, 2), (8, 7), (15, 2), (24, 5)][choice];
            let f = CyclotomicField::new(e);
            let m = build_reduction_map(e, p);
            let x = cyc_int(&f, &xs[..e as usize]);
            let y = cyc_int(&f, &ys[..e as usize]);
            let rx = m.reduce(&x).unwrap();
            let ry = m.reduce(&y).unwrap();
            prop_assert_eq!(m.reduce(&(&x + &y)).unwrap(), &rx + &ry);
            prop_assert_eq!(m.reduce(&(&x * &y)).unwrap(), &rx * &ry);
        }
    }
}
