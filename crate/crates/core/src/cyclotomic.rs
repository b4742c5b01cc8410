//! The rings `Z[a] = Z[X]/(Phi_n(X))`, their Galois conjugations, norms, and
//! Gaussian periods.
//!
//! Elements are stored in the power basis `1, a, ..., a^{d-1}` with
//! `d = phi(n)`. Products are formed in `Z[X]/(X^n - 1)` and then reduced
//! modulo `Phi_n`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::integer::{gcd_u64, is_prime, least_primitive_root, pow_mod, Integer};
use crate::exact::lattice::MultTable;
use crate::exact::poly_int::{cyclotomic_polynomial, write_poly, PolyInt};

/// `Z[X]/(Phi_n)`.
#[derive(Debug)]
pub struct CycRing {
    n: u64,
    phi: PolyInt,
    degree: usize,
    table: OnceLock<MultTable>,
}

impl PartialEq for CycRing {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n
    }
}

impl Eq for CycRing {}

impl CycRing {
    pub fn new(n: u64) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        let phi = cyclotomic_polynomial(n);
        let degree = phi.degree().expect("cyclotomic polynomial is nonzero");
        Ok(Arc::new(CycRing { n, phi, degree, table: OnceLock::new() }))
    }

    /// Ring for a prime conductor; the ideal-theoretic operations need this.
    pub fn prime(lambda: u64) -> Result<Arc<Self>> {
        if !is_prime(lambda) {
            return Err(Error::NotPrime(lambda));
        }
        Self::new(lambda)
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn phi(&self) -> &PolyInt {
        &self.phi
    }

    pub fn is_prime_conductor(&self) -> bool {
        is_prime(self.n)
    }

    /// Reduce a polynomial in `a` of any length into the power basis.
    fn reduce(&self, coeffs: Vec<Integer>) -> Vec<Integer> {
        let n = self.n as usize;
        let mut cyc = vec![Integer::zero(); n];
        for (i, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                cyc[i % n] += c;
            }
        }
        self.reduce_cyclic(cyc)
    }

    /// Reduce a length-`n` vector (an element of `Z[X]/(X^n - 1)`).
    fn reduce_cyclic(&self, mut cyc: Vec<Integer>) -> Vec<Integer> {
        let d = self.degree;
        let n = self.n as usize;
        if self.is_prime_conductor() {
            // a^{n-1} = -(1 + a + ... + a^{n-2})
            let top = std::mem::take(&mut cyc[n - 1]);
            cyc.truncate(n - 1);
            if !top.is_zero() {
                for c in cyc.iter_mut() {
                    *c -= &top;
                }
            }
            return cyc;
        }
        let phi = self.phi.coeffs();
        for k in (d..n).rev() {
            let c = std::mem::take(&mut cyc[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                if !phi[j].is_zero() {
                    cyc[k - d + j] -= &c * &phi[j];
                }
            }
        }
        cyc.truncate(d);
        cyc
    }

    /// Structure constants of the power basis.
    pub fn mult_table(self: &Arc<Self>) -> &MultTable {
        self.table.get_or_init(|| {
            let d = self.degree;
            let table = (0..d)
                .map(|i| (0..d).map(|j| CycElt::alpha_pow(self, (i + j) as i64).coeffs).collect())
                .collect();
            MultTable::new(table).expect("square structure tensor")
        })
    }
}

/// Element of `Z[a]`.
#[derive(Clone, Debug)]
pub struct CycElt {
    ring: Arc<CycRing>,
    coeffs: Vec<Integer>,
}

impl PartialEq for CycElt {
    fn eq(&self, o: &Self) -> bool {
        self.ring.n == o.ring.n && self.coeffs == o.coeffs
    }
}

impl Eq for CycElt {}

impl CycElt {
    /// Element with the given polynomial coefficients, reduced mod `Phi_n`.
    pub fn from_poly(ring: &Arc<CycRing>, coeffs: Vec<Integer>) -> Self {
        CycElt { ring: Arc::clone(ring), coeffs: ring.reduce(coeffs) }
    }

    pub fn from_i64(ring: &Arc<CycRing>, coeffs: &[i64]) -> Self {
        Self::from_poly(ring, coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    /// Element from power-basis coordinates, which must have length `d`.
    pub fn from_coords(ring: &Arc<CycRing>, coeffs: Vec<Integer>) -> Result<Self> {
        if coeffs.len() != ring.degree {
            return Err(Error::DimensionMismatch { expected: ring.degree, found: coeffs.len() });
        }
        Ok(CycElt { ring: Arc::clone(ring), coeffs })
    }

    pub fn zero(ring: &Arc<CycRing>) -> Self {
        CycElt { ring: Arc::clone(ring), coeffs: vec![Integer::zero(); ring.degree] }
    }

    pub fn from_int(ring: &Arc<CycRing>, c: Integer) -> Self {
        Self::from_poly(ring, vec![c])
    }

    pub fn one(ring: &Arc<CycRing>) -> Self {
        Self::from_int(ring, Integer::one())
    }

    /// `a^k` for any integer `k` (negative exponents use `a^n = 1`).
    pub fn alpha_pow(ring: &Arc<CycRing>, k: i64) -> Self {
        let e = k.rem_euclid(ring.n as i64) as usize;
        let mut c = vec![Integer::zero(); e + 1];
        c[e] = Integer::one();
        Self::from_poly(ring, c)
    }

    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The element as a rational integer, when it lies in `Z`.
    pub fn as_integer(&self) -> Option<Integer> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn same_ring(&self, o: &Self) -> Result<()> {
        if self.ring.n != o.ring.n {
            return Err(Error::RingMismatch { left: self.ring.n, right: o.ring.n });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_ring(o).expect("cyclotomic ring mismatch");
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        CycElt { ring: Arc::clone(&self.ring), coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_ring(o).expect("cyclotomic ring mismatch");
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        CycElt { ring: Arc::clone(&self.ring), coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| -a).collect();
        CycElt { ring: Arc::clone(&self.ring), coeffs }
    }

    pub fn scale(&self, c: &Integer) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        CycElt { ring: Arc::clone(&self.ring), coeffs }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_ring(o).expect("cyclotomic ring mismatch");
        let n = self.ring.n as usize;
        let mut cyc = vec![Integer::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    cyc[(i + j) % n] += a * b;
                }
            }
        }
        CycElt { ring: Arc::clone(&self.ring), coeffs: self.ring.reduce_cyclic(cyc) }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// True when every power-basis coordinate is divisible by `m`.
    pub fn divisible_by(&self, m: &Integer) -> bool {
        self.coeffs.iter().all(|c| c.is_multiple_of(m))
    }

    /// Exact coefficientwise division by a rational integer.
    pub fn div_exact(&self, m: &Integer) -> Option<Self> {
        if m.is_zero() || !self.divisible_by(m) {
            return None;
        }
        let coeffs = self.coeffs.iter().map(|c| c / m).collect();
        Some(CycElt { ring: Arc::clone(&self.ring), coeffs })
    }

    /// The automorphism `sigma_k: a -> a^k`.
    pub fn conjugate(&self, k: i64) -> Result<Self> {
        let n = self.ring.n;
        let kk = k.rem_euclid(n as i64) as u64;
        if gcd_u64(kk, n) != 1 {
            return Err(Error::NotCoprime { k, n });
        }
        let mut cyc = vec![Integer::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                cyc[(j as u64 * kk % n) as usize] += c;
            }
        }
        Ok(CycElt { ring: Arc::clone(&self.ring), coeffs: self.ring.reduce_cyclic(cyc) })
    }

    /// Product of the conjugates `sigma_k(x)` for `k` coprime to `n` other
    /// than `k = 1`; `x` times this equals the norm.
    pub fn norm_cofactor(&self) -> Self {
        let n = self.ring.n;
        (2..n.max(2))
            .filter(|&k| gcd_u64(k, n) == 1)
            .fold(Self::one(&self.ring), |acc, k| {
                acc.mul(&self.conjugate(k as i64).expect("k is coprime to n"))
            })
    }

    /// Absolute norm: the product of all conjugates, a rational integer.
    pub fn norm(&self) -> Integer {
        self.mul(&self.norm_cofactor())
            .as_integer()
            .expect("a product over the full Galois group is rational")
    }

    /// Power-basis coordinates as a polynomial in `X`.
    pub fn to_poly(&self) -> PolyInt {
        PolyInt::new(self.coeffs.clone())
    }
}

impl fmt::Display for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().cloned(), "a")
    }
}

/// Gaussian periods of length `f = (lambda - 1)/e` built from the least
/// primitive root `g` modulo `lambda`.
#[derive(Clone, Debug)]
pub struct PeriodSystem {
    ring: Arc<CycRing>,
    e: u64,
    f: u64,
    g: u64,
    periods: Vec<CycElt>,
    /// `class_of[k]` is the period index containing `a^k`, for `1 <= k < lambda`.
    class_of: Vec<usize>,
}

pub fn gaussian_periods(ring: &Arc<CycRing>, e: u64) -> Result<PeriodSystem> {
    let lambda = ring.conductor();
    if !is_prime(lambda) {
        return Err(Error::NotPrime(lambda));
    }
    if e == 0 || !(lambda - 1).is_multiple_of(e) {
        return Err(Error::InvalidArgument(format!("e = {e} does not divide {}", lambda - 1)));
    }
    let g = least_primitive_root(lambda)?;
    let mut class_of = vec![usize::MAX; lambda as usize];
    let mut periods = vec![CycElt::zero(ring); e as usize];
    for j in 0..lambda - 1 {
        let k = pow_mod(g, j, lambda);
        let i = (j % e) as usize;
        class_of[k as usize] = i;
        periods[i] = periods[i].add(&CycElt::alpha_pow(ring, k as i64));
    }
    Ok(PeriodSystem { ring: Arc::clone(ring), e, f: (lambda - 1) / e, g, periods, class_of })
}

impl PeriodSystem {
    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn lambda(&self) -> u64 {
        self.ring.conductor()
    }

    /// Number of periods.
    pub fn e(&self) -> u64 {
        self.e
    }

    /// Length of each period.
    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn primitive_root(&self) -> u64 {
        self.g
    }

    pub fn periods(&self) -> &[CycElt] {
        &self.periods
    }

    /// Exponents `k` with `a^k` in period `i`, ascending.
    pub fn exponents(&self, i: usize) -> Vec<u64> {
        (1..self.lambda()).filter(|&k| self.class_of[k as usize] == i).collect()
    }

    /// Coefficients `c_i` with `x = sum c_i eta_i`, or `None` when `x` is not
    /// in the period subring. Constants are absorbed since `sum eta_i = -1`.
    pub fn express(&self, x: &CycElt) -> Option<Vec<Integer>> {
        let lambda = self.lambda() as usize;
        if x.ring().conductor() != self.lambda() {
            return None;
        }
        // coordinates in the basis a, a^2, ..., a^{lambda-1}
        let c0 = &x.coeffs()[0];
        let normal: Vec<Integer> = (1..lambda)
            .map(|k| if k < lambda - 1 { &x.coeffs()[k] - c0 } else { -c0.clone() })
            .collect();
        let mut out: Vec<Option<Integer>> = vec![None; self.e as usize];
        for k in 1..lambda {
            let i = self.class_of[k];
            let v = &normal[k - 1];
            match &out[i] {
                None => out[i] = Some(v.clone()),
                Some(prev) if prev != v => return None,
                Some(_) => {}
            }
        }
        Some(out.into_iter().map(|v| v.expect("every class is nonempty")).collect())
    }

    /// `c + sum c_i eta_i`.
    pub fn combine(&self, constant: &Integer, coords: &[Integer]) -> CycElt {
        coords
            .iter()
            .zip(&self.periods)
            .fold(CycElt::from_int(&self.ring, constant.clone()), |acc, (c, eta)| {
                acc.add(&eta.scale(c))
            })
    }
}

/// Free-function form of [`PeriodSystem::express`].
pub fn express_in_periods(x: &CycElt, periods: &PeriodSystem) -> Option<Vec<Integer>> {
    periods.express(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::integer::int;
    use crate::exact::poly_int::resultant;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ring(n: u64) -> Arc<CycRing> {
        CycRing::new(n).unwrap()
    }

    #[test]
    fn conjugation_examples() {
        let r = ring(5);
        let a = CycElt::alpha_pow(&r, 1);
        assert_eq!(a.conjugate(1).unwrap(), a);
        let s2 = a.conjugate(2).unwrap();
        assert_eq!(s2, CycElt::from_i64(&r, &[0, 0, 1]));
        assert_eq!(s2.conjugate(2).unwrap(), CycElt::from_i64(&r, &[-1, -1, -1, -1]));
        assert_eq!(a.conjugate(-1).unwrap(), a.conjugate(4).unwrap());
        assert_eq!(a.conjugate(5), Err(Error::NotCoprime { k: 5, n: 5 }));
        let x = CycElt::from_i64(&r, &[3, -1, 4, 2]);
        for j in 1..5 {
            for k in 1..5 {
                let lhs = x.conjugate(j).unwrap().conjugate(k).unwrap();
                assert_eq!(lhs, x.conjugate(j * k % 5).unwrap());
            }
        }
        // composite conductor: sigma_{-1} on Z[zeta_12]
        let r12 = ring(12);
        let z = CycElt::alpha_pow(&r12, 1);
        assert_eq!(z.conjugate(-1).unwrap(), CycElt::alpha_pow(&r12, 11));
        assert!(z.conjugate(2).is_err());
    }

    #[test]
    fn norm_examples() {
        let r = ring(5);
        assert_eq!(CycElt::from_i64(&r, &[1, -1]).norm(), int(5));
        assert_eq!(CycElt::from_i64(&r, &[2, 1]).norm(), int(11));
        assert_eq!(CycElt::from_i64(&r, &[-3]).norm(), int(81));
        assert_eq!(CycElt::from_i64(&r, &[-3, 1]).norm(), int(121));
        assert_eq!(CycElt::alpha_pow(&r, 3).norm(), int(1));
    }

    #[test]
    fn norm_is_multiplicative_and_matches_resultant() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e6f726d);
        for lambda in [3u64, 5, 7, 11] {
            let r = ring(lambda);
            let d = r.degree();
            let phi = cyclotomic_polynomial(lambda);
            for _ in 0..250 {
                let x: Vec<i64> = (0..d).map(|_| rng.gen_range(-5..=5)).collect();
                let y: Vec<i64> = (0..d).map(|_| rng.gen_range(-5..=5)).collect();
                let (x, y) = (CycElt::from_i64(&r, &x), CycElt::from_i64(&r, &y));
                assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
                if !x.is_zero() {
                    assert_eq!(x.norm(), resultant(&phi, &x.to_poly()));
                }
            }
        }
    }

    #[test]
    fn composite_ring_arithmetic() {
        let r = ring(12);
        assert_eq!(r.degree(), 4);
        let z = CycElt::alpha_pow(&r, 1);
        assert_eq!(z.pow(12), CycElt::one(&r));
        assert_eq!(z.pow(6), CycElt::one(&r).neg());
        // norm over (Z/12)^x of 1 - zeta_12 is Phi_12(1) = 1
        assert_eq!(CycElt::one(&r).sub(&z).norm(), int(1));
        let r4 = ring(4);
        let i = CycElt::alpha_pow(&r4, 1);
        assert_eq!(i.mul(&i), CycElt::one(&r4).neg());
        let t = CycElt::from_i64(&r4, &[3, 2]);
        assert_eq!(t.norm(), int(13));
    }

    #[test]
    fn period_examples() {
        let r = ring(5);
        let ps = gaussian_periods(&r, 2).unwrap();
        assert_eq!(ps.primitive_root(), 2);
        assert_eq!(ps.periods()[0], CycElt::from_i64(&r, &[0, 1, 0, 0, 1]));
        assert_eq!(ps.periods()[1], CycElt::from_i64(&r, &[0, 0, 1, 1]));
        let single = gaussian_periods(&r, 4).unwrap();
        let want: Vec<CycElt> = [1, 2, 4, 3].iter().map(|&k| CycElt::alpha_pow(&r, k)).collect();
        assert_eq!(single.periods(), &want[..]);
        let r7 = ring(7);
        let ps7 = gaussian_periods(&r7, 3).unwrap();
        assert_eq!(ps7.primitive_root(), 3);
        assert_eq!(ps7.periods()[0], CycElt::from_i64(&r7, &[0, 1, 0, 0, 0, 0, 1]));
        assert_eq!(ps7.exponents(1), vec![3, 4]);
        assert!(gaussian_periods(&r, 3).is_err());
    }

    #[test]
    fn period_invariants() {
        for lambda in [3u64, 5, 7, 11, 13] {
            let r = ring(lambda);
            for e in crate::exact::integer::divisors(lambda - 1) {
                let ps = gaussian_periods(&r, e).unwrap();
                let total = ps.periods().iter().fold(CycElt::zero(&r), |a, b| a.add(b));
                assert_eq!(total, CycElt::one(&r).neg());
                let g = ps.primitive_root() as i64;
                let ge = pow_mod(g as u64, e, lambda) as i64;
                for i in 0..e as usize {
                    let eta = &ps.periods()[i];
                    let next = &ps.periods()[(i + 1) % e as usize];
                    assert_eq!(&eta.conjugate(g).unwrap(), next);
                    assert_eq!(&eta.conjugate(ge).unwrap(), eta);
                }
            }
        }
    }

    #[test]
    fn express_examples() {
        let r = ring(5);
        let ps = gaussian_periods(&r, 2).unwrap();
        assert_eq!(ps.express(&ps.periods()[0]), Some(vec![int(1), int(0)]));
        let minus_one = CycElt::from_i64(&r, &[0, 1, 1, 1, 1]);
        assert_eq!(minus_one, CycElt::from_i64(&r, &[-1]));
        assert_eq!(ps.express(&minus_one), Some(vec![int(1), int(1)]));
        assert_eq!(ps.express(&CycElt::alpha_pow(&r, 1)), None);
        // products of periods stay in the subring
        let sq = ps.periods()[0].mul(&ps.periods()[0]);
        let c = ps.express(&sq).unwrap();
        assert_eq!(ps.combine(&int(0), &c), sq);
    }
}
