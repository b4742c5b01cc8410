//! Finite fields `F_{p^f} = F_p[X]/(P)` for an explicit irreducible `P`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use super::integer::Integer;
use super::poly_mod::{is_irreducible, PolyModP};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    modulus: PolyModP,
}

impl FiniteField {
    /// Builds the field from a monic irreducible defining polynomial.
    pub fn new(defining: PolyModP) -> Result<Arc<Self>> {
        if !is_irreducible(&defining)? {
            return Err(Error::InvalidArgument(format!(
                "{defining} is not irreducible mod {}",
                defining.modulus()
            )));
        }
        Ok(Arc::new(FiniteField { modulus: defining.monic() }))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Arc<Self>> {
        Self::new(PolyModP::x(p))
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus.modulus()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("defining polynomial has positive degree")
    }

    pub fn defining_polynomial(&self) -> &PolyModP {
        &self.modulus
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.characteristic()).pow(self.degree() as u32)
    }
}

/// Element of a [`FiniteField`], stored as a residue polynomial of degree < f.
#[derive(Clone, Debug)]
pub struct FFElement {
    field: Arc<FiniteField>,
    value: PolyModP,
}

impl PartialEq for FFElement {
    fn eq(&self, o: &Self) -> bool {
        self.value == o.value && *self.field == *o.field
    }
}

impl Eq for FFElement {}

impl FFElement {
    pub fn new(field: &Arc<FiniteField>, value: PolyModP) -> Self {
        let value = value.rem(&field.modulus);
        FFElement { field: Arc::clone(field), value }
    }

    pub fn from_u64(field: &Arc<FiniteField>, c: u64) -> Self {
        Self::new(field, PolyModP::new(field.characteristic(), vec![c]))
    }

    pub fn from_int(field: &Arc<FiniteField>, c: &Integer) -> Self {
        Self::from_u64(field, super::integer::reduce_int(c, field.characteristic()))
    }

    pub fn zero(field: &Arc<FiniteField>) -> Self {
        Self::from_u64(field, 0)
    }

    pub fn one(field: &Arc<FiniteField>) -> Self {
        Self::from_u64(field, 1)
    }

    /// The class of `X`, a root of the defining polynomial.
    pub fn generator(field: &Arc<FiniteField>) -> Self {
        Self::new(field, PolyModP::x(field.characteristic()))
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn residue(&self) -> &PolyModP {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// The element as a prime-field residue, if it lies in `F_p`.
    pub fn as_prime_field(&self) -> Option<u64> {
        match self.value.degree() {
            None => Some(0),
            Some(0) => Some(self.value.coeff(0)),
            _ => None,
        }
    }

    fn check(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &o.field) || self.field == o.field,
            "finite field mismatch"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        Self::new(&self.field, self.value.add(&o.value))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        Self::new(&self.field, self.value.sub(&o.value))
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.value.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        Self::new(&self.field, self.value.mul(&o.value))
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(&self.field, self.value.scale(c % self.field.characteristic()))
    }

    pub fn pow(&self, e: u64) -> Self {
        Self::new(&self.field, self.value.pow_mod(&BigUint::from(e), &self.field.modulus))
    }

    pub fn pow_big(&self, e: &BigUint) -> Self {
        Self::new(&self.field, self.value.pow_mod(e, &self.field.modulus))
    }

    /// Multiplicative inverse via `a^(q-2)`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let e = self.field.order() - 2u32;
        Some(self.pow_big(&e))
    }

    /// Evaluates an integer coefficient sequence (lowest degree first) at self.
    pub fn eval_ints(&self, coeffs: &[Integer]) -> Self {
        let p = self.field.characteristic();
        let mut acc = Self::zero(&self.field);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&Self::from_u64(&self.field, super::integer::reduce_int(c, p)));
        }
        acc
    }

    /// Integer encoding `sum c_i p^i`; orders elements as base-`p` numbers.
    pub fn encoding(&self) -> BigUint {
        let p = BigUint::from(self.field.characteristic());
        self.value
            .coeffs()
            .iter()
            .rev()
            .fold(BigUint::default(), |acc, &c| acc * &p + c)
    }

    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        self.encoding().cmp(&o.encoding())
    }

    pub fn frobenius(&self) -> Self {
        self.pow(self.field.characteristic())
    }
}

impl fmt::Display for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_prime_field() {
            Some(c) => write!(f, "{c}"),
            None => super::poly_int::write_poly(
                f,
                self.value.coeffs().iter().map(|&c| Integer::from(c)),
                "z",
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f16_from_phi5() {
        let field = FiniteField::new(PolyModP::from_i64(2, &[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(field.order(), BigUint::from(16u32));
        let xi = FFElement::generator(&field);
        assert_eq!(xi.pow(5), FFElement::one(&field));
        assert_ne!(xi.pow(1), FFElement::one(&field));
        // every nonzero element is invertible
        for n in 1u64..16 {
            let digits: Vec<u64> = (0..4).map(|i| (n >> i) & 1).collect();
            let a = FFElement::new(&field, PolyModP::new(2, digits));
            assert_eq!(a.mul(&a.inv().unwrap()), FFElement::one(&field));
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(FiniteField::new(PolyModP::from_i64(5, &[1, 0, 1])).is_err());
        assert!(FiniteField::new(PolyModP::from_i64(7, &[1, 0, 1])).is_ok());
    }

    #[test]
    fn prime_field_elements() {
        let f = FiniteField::prime(11).unwrap();
        let three = FFElement::from_u64(&f, 3);
        assert_eq!(three.pow(5).as_prime_field(), Some(1));
        assert_eq!(three.inv().unwrap().as_prime_field(), Some(4));
        assert_eq!(FFElement::from_int(&f, &Integer::from(-2)).as_prime_field(), Some(9));
        assert_eq!(three.to_string(), "3");
    }
}
