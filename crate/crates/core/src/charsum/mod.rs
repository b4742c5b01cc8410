//! Multiplicative characters mod `p`, Jacobi sums in `Z[zeta_lambda]`, and
//! Gauss sums in `Z[zeta_lambda, zeta_p]`.
//!
//! Sign convention: `J(chi^i, chi^k) = -sum_t chi^i(t) chi^k(1-t)`, and
//! `psi_{i,k} = -J` is the quotient of Gauss sums `g_i g_k / g_{i+k}`.

mod checks;
mod gauss;

use std::sync::Arc;

use serde::Serialize;

use crate::cyclotomic::{CycElt, CycRing};
use crate::error::{Error, Result};
use crate::exact::integer::{is_prime, least_primitive_root, mul_mod, Integer};

pub use checks::{
    binomial_congruence, fc_check, fc_expected, quartic_demo, stickelberger_check,
    BinomialReport, FcCase, FcReport, QuarticReport, StickelbergerReport, StickelbergerRow,
};
pub use gauss::{GaussElt, GaussSumRing};

/// The character of order `lambda` mod `p` with `chi(g) = zeta`, `g` the
/// least primitive root.
#[derive(Clone, Debug)]
pub struct Character {
    p: u64,
    order: u64,
    g: u64,
    ring: Arc<CycRing>,
    /// `dlog[t] = a` with `g^a = t`, for `1 <= t < p`.
    dlog: Vec<u64>,
}

impl Character {
    pub fn new(p: u64, order: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if order < 2 || !(p - 1).is_multiple_of(order) {
            return Err(Error::InvalidArgument(format!(
                "character order {order} must be at least 2 and divide {}",
                p - 1
            )));
        }
        let g = least_primitive_root(p)?;
        let mut dlog = vec![0u64; p as usize];
        let mut t = 1u64;
        for a in 0..p - 1 {
            dlog[t as usize] = a;
            t = mul_mod(t, g, p);
        }
        Ok(Character { p, order, g, ring: CycRing::new(order)?, dlog })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn primitive_root(&self) -> u64 {
        self.g
    }

    /// `(p - 1) / order`.
    pub fn m(&self) -> u64 {
        (self.p - 1) / self.order
    }

    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn dlog(&self, t: u64) -> Option<u64> {
        let t = t % self.p;
        (t != 0).then(|| self.dlog[t as usize])
    }

    /// Exponent `e` with `chi^i(t) = zeta^e`, or `None` for `t = 0 mod p`.
    pub fn exponent(&self, i: i64, t: u64) -> Option<u64> {
        let ii = i.rem_euclid(self.order as i64) as u64;
        self.dlog(t).map(|a| (a % self.order) * ii % self.order)
    }

    /// `chi^i(t)` in `Z[zeta]`; zero at `t = 0`.
    pub fn value(&self, i: i64, t: u64) -> CycElt {
        match self.exponent(i, t) {
            Some(e) => CycElt::alpha_pow(&self.ring, e as i64),
            None => CycElt::zero(&self.ring),
        }
    }

    /// `sum_t chi^i(t) chi^k(1 - t)`, by direct summation.
    pub fn raw_sum(&self, i: i64, k: i64) -> CycElt {
        let n = self.order as usize;
        let mut counts = vec![Integer::from(0); n];
        for t in 2..self.p {
            let a = self.exponent(i, t).expect("t is a unit");
            let b = self.exponent(k, self.p + 1 - t).expect("1 - t is a unit");
            counts[((a + b) % self.order) as usize] += 1;
        }
        CycElt::from_poly(&self.ring, counts)
    }

    /// `J(chi^i, chi^k) = -sum_t chi^i(t) chi^k(1 - t)`.
    pub fn jacobi_sum(&self, i: i64, k: i64) -> CycElt {
        self.raw_sum(i, k).neg()
    }

    fn check_nondegenerate(&self, i: i64, k: i64) -> Result<()> {
        let n = self.order as i64;
        if i.rem_euclid(n) == 0 || k.rem_euclid(n) == 0 || (i + k).rem_euclid(n) == 0 {
            return Err(Error::DegenerateIndex { i, k, order: self.order });
        }
        Ok(())
    }
}

/// `J(chi^i, chi^k)` for the order-`order` character mod `p`.
pub fn jacobi_sum(chi: &Character, i: i64, k: i64) -> CycElt {
    chi.jacobi_sum(i, k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflectionReport {
    pub p: u64,
    pub order: u64,
    pub i: i64,
    pub k: i64,
    pub j: String,
    pub psi: String,
    /// `J * sigma_{-1}(J)`.
    pub product: String,
    pub pass: bool,
}

/// Checks `J * sigma_{-1}(J) = p` for nondegenerate indices.
pub fn reflection_identity(chi: &Character, i: i64, k: i64) -> Result<ReflectionReport> {
    chi.check_nondegenerate(i, k)?;
    let j = chi.jacobi_sum(i, k);
    let product = j.mul(&j.conjugate(-1)?);
    let pass = product.as_integer() == Some(Integer::from(chi.p));
    Ok(ReflectionReport {
        p: chi.p,
        order: chi.order,
        i,
        k,
        j: j.to_string(),
        psi: j.neg().to_string(),
        product: product.to_string(),
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::integer::{gcd_u64, int, primes_below};

    #[test]
    fn character_basics() {
        let chi = Character::new(13, 4).unwrap();
        assert_eq!(chi.primitive_root(), 2);
        assert_eq!(chi.m(), 3);
        assert_eq!(chi.value(1, 2), CycElt::alpha_pow(chi.ring(), 1));
        assert!(chi.value(1, 13).is_zero());
        // chi is a homomorphism
        for a in 1..13 {
            for b in 1..13 {
                assert_eq!(chi.value(1, a * b % 13), chi.value(1, a).mul(&chi.value(1, b)));
            }
        }
        assert!(Character::new(13, 5).is_err());
        assert!(Character::new(15, 2).is_err());
        assert!(Character::new(13, 1).is_err());
    }

    #[test]
    fn jacobi_sum_examples() {
        let chi = Character::new(13, 4).unwrap();
        let j = chi.jacobi_sum(1, 1);
        let (a, b) = (j.coeffs()[0].clone(), j.coeffs()[1].clone());
        assert_eq!(&a * &a + &b * &b, int(13));
        let chi7 = Character::new(7, 2).unwrap();
        let j = chi7.jacobi_sum(1, 1);
        assert_eq!(j.mul(&j.conjugate(-1).unwrap()), CycElt::from_i64(chi7.ring(), &[1]));
        // the quadratic J(chi, chi) = -chi(-1) is a unit; the reflection
        // identity needs i + k nonzero mod the order
        assert_eq!(
            reflection_identity(&chi7, 1, 1).unwrap_err(),
            Error::DegenerateIndex { i: 1, k: 1, order: 2 }
        );
    }

    #[test]
    fn reflection_examples() {
        for (p, order, i, k) in [(11u64, 5u64, 1i64, 1i64), (13, 3, 1, 1), (13, 12, 3, 4)] {
            let chi = Character::new(p, order).unwrap();
            let r = reflection_identity(&chi, i, k).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!(r.product, p.to_string());
        }
    }

    #[test]
    fn reflection_up_to_50_and_galois_equivariance() {
        for p in primes_below(51).into_iter().filter(|&p| p > 2) {
            for order in crate::exact::integer::divisors(p - 1).into_iter().filter(|&l| l >= 2) {
                let chi = Character::new(p, order).unwrap();
                let n = order as i64;
                for i in 1..n {
                    for k in 1..n {
                        let j = chi.jacobi_sum(i, k);
                        if (i + k) % n != 0 {
                            assert!(reflection_identity(&chi, i, k).unwrap().pass);
                        }
                        for s in (1..n).filter(|&s| gcd_u64(s as u64, order) == 1) {
                            assert_eq!(j.conjugate(s).unwrap(), chi.jacobi_sum(i * s, k * s));
                        }
                    }
                }
            }
        }
    }
}
