//! Dense polynomials over `Z/pZ` and their complete factorization.
//!
//! Factoring runs in three stages: square-free decomposition, distinct-degree
//! splitting, and equal-degree splitting. The equal-degree stage draws its
//! trial elements from a fixed counter sequence (the polynomials whose base-`p`
//! digit encodings are 2, 3, 4, ...), so every factorization is reproducible.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::integer::{inv_mod, is_prime, mul_mod, Integer};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyModP { p, coeffs }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| super::integer::reduce_i64(c, p)).collect())
    }

    pub fn from_ints(p: u64, coeffs: &[Integer]) -> Self {
        Self::new(p, coeffs.iter().map(|c| super::integer::reduce_int(c, p)).collect())
    }

    pub fn zero(p: u64) -> Self {
        PolyModP { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            self.p,
            (0..n).map(|i| (self.coeff(i) + self.p - o.coeff(i)) % self.p).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect())
    }

    pub fn scale(&self, s: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| mul_mod(c, s, self.p)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::new(self.p, out.into_iter().map(|c| c as u64).collect())
    }

    /// Quotient and remainder; the divisor's leading coefficient must be a unit.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let inv = inv_mod(d.leading(), self.p).expect("leading coefficient must be invertible");
        let dd = d.deg();
        if self.coeffs.len() <= dd {
            return (Self::zero(self.p), self.clone());
        }
        let p = self.p;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = mul_mod(rem[k], inv, p);
            if c == 0 {
                continue;
            }
            for j in 0..=dd {
                let t = mul_mod(c, d.coeffs[j], p);
                rem[k - dd + j] = (rem[k - dd + j] + p - t) % p;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p).expect("leading coefficient must be invertible");
        self.scale(inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    /// Canonical ordering: by degree, then lexicographically on the
    /// coefficient sequence (lowest degree first).
    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&o.coeffs.len())
            .then_with(|| self.coeffs.cmp(&o.coeffs))
    }

    /// Polynomial whose coefficients are the base-`p` digits of `n`.
    fn from_counter(p: u64, mut n: u64) -> Self {
        let mut digits = Vec::new();
        while n > 0 {
            digits.push(n % p);
            n /= p;
        }
        Self::new(p, digits)
    }
}

impl fmt::Display for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::poly_int::write_poly(f, self.coeffs.iter().map(|&c| Integer::from(c)), "X")
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted canonically. The leading coefficient of `g` is dropped.
pub fn factor_mod_p(g: &PolyModP) -> Result<Vec<(PolyModP, u32)>> {
    let p = g.modulus();
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if g.is_zero() {
        return Err(Error::InvalidArgument("cannot factor the zero polynomial".into()));
    }
    let mut out: Vec<(PolyModP, u32)> = Vec::new();
    for (part, mult) in square_free(&g.monic()) {
        for (block, d) in distinct_degree(&part) {
            for fac in equal_degree(&block, d) {
                match out.iter_mut().find(|(f, _)| *f == fac) {
                    Some(entry) => entry.1 += mult,
                    None => out.push((fac, mult)),
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

/// True when `g` (degree >= 1) is irreducible over `F_p`.
pub fn is_irreducible(g: &PolyModP) -> Result<bool> {
    if g.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let f = factor_mod_p(g)?;
    Ok(f.len() == 1 && f[0].1 == 1)
}

fn square_free(f: &PolyModP) -> Vec<(PolyModP, u32)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if !c.is_one() {
        // c is a p-th power: take the p-th root coefficientwise (Frobenius is
        // the identity on F_p)
        let root = PolyModP::new(p, c.coeffs.iter().step_by(p as usize).copied().collect());
        for (g, m) in square_free(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

fn distinct_degree(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let p = f.modulus();
    let x = PolyModP::x(p);
    let pe = BigUint::from(p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&pe, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

fn equal_degree(f: &PolyModP, d: usize) -> Vec<PolyModP> {
    let n = f.deg();
    if n == d {
        return vec![f.monic()];
    }
    let p = f.modulus();
    let exponent = (BigUint::from(p).pow(d as u32) - BigUint::one()) / 2u32;
    let mut counter = p; // first non-constant polynomial
    loop {
        let t = PolyModP::from_counter(p, counter);
        counter += 1;
        if t.deg() >= n {
            // every residue class mod f has been tried; cannot happen for a
            // genuine product of degree-d irreducibles
            unreachable!("equal-degree splitting exhausted its counter sequence");
        }
        let u = if p == 2 {
            // absolute trace F_{2^d} -> F_2
            let mut acc = t.rem(f);
            let mut sq = acc.clone();
            for _ in 1..d {
                sq = sq.mul(&sq).rem(f);
                acc = acc.add(&sq);
            }
            acc
        } else {
            t.pow_mod(&exponent, f).sub(&PolyModP::one(p))
        };
        let h = u.gcd(f);
        if h.deg() > 0 && h.deg() < n {
            let mut out = equal_degree(&h, d);
            out.extend(equal_degree(&f.div_rem(&h).0, d));
            return out;
        }
    }
}
