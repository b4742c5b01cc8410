//! Jacobi maps `Z[a] -> F_{p^f}` and their kernels, the ideal primes.
//!
//! For `p != lambda` there is one map per irreducible factor `P_j` of
//! `Phi_lambda mod p`; the target field is `F_p[X]/(P_j)` and `a` goes to the
//! class of `X`. Degree-one factors `X - r` use the prime field with `a -> r`.
//! For `p = lambda` the single map sends `a` to `1`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;

use crate::cyclotomic::{CycElt, CycRing, PeriodSystem};
use crate::error::{Error, Result};
use crate::exact::finite_field::{FFElement, FiniteField};
use crate::exact::integer::{is_prime, multiplicative_order, Integer};
use crate::exact::lattice::IntLattice;
use crate::exact::poly_mod::{factor_mod_p, PolyModP};

#[derive(Clone, Debug)]
pub struct JacobiMap {
    ring: Arc<CycRing>,
    p: u64,
    f: usize,
    factor: PolyModP,
    xi: FFElement,
    kernel: OnceLock<IntLattice>,
    // kernel powers p^1, p^2, ... built on demand by the lattice oracle
    powers: Arc<Mutex<Vec<IntLattice>>>,
}

impl PartialEq for JacobiMap {
    fn eq(&self, o: &Self) -> bool {
        self.lambda() == o.lambda() && self.p == o.p && self.factor == o.factor
    }
}

impl Eq for JacobiMap {}

/// All Jacobi maps out of `Z[zeta_lambda]` above `p`, in canonical factor
/// order.
pub fn enumerate_jacobi_maps(lambda: u64, p: u64) -> Result<Vec<JacobiMap>> {
    let ring = CycRing::prime(lambda)?;
    maps_for_ring(&ring, p)
}

/// As [`enumerate_jacobi_maps`], sharing an existing ring.
pub fn maps_for_ring(ring: &Arc<CycRing>, p: u64) -> Result<Vec<JacobiMap>> {
    let lambda = ring.conductor();
    if !is_prime(lambda) {
        return Err(Error::NotPrime(lambda));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == lambda {
        let field = FiniteField::prime(p)?;
        let xi = FFElement::one(&field);
        return Ok(vec![JacobiMap::build(ring, PolyModP::from_i64(p, &[-1, 1]), xi)]);
    }
    let phi = PolyModP::from_ints(p, ring.phi().coeffs());
    let mut maps = Vec::new();
    for (factor, mult) in factor_mod_p(&phi)? {
        debug_assert_eq!(mult, 1, "Phi_lambda is separable mod p != lambda");
        let xi = if factor.degree() == Some(1) {
            let field = FiniteField::prime(p)?;
            FFElement::from_u64(&field, (p - factor.coeff(0)) % p)
        } else {
            FFElement::generator(&FiniteField::new(factor.clone())?)
        };
        maps.push(JacobiMap::build(ring, factor, xi));
    }
    Ok(maps)
}

impl JacobiMap {
    fn build(ring: &Arc<CycRing>, factor: PolyModP, xi: FFElement) -> Self {
        let f = xi.field().degree();
        JacobiMap {
            ring: Arc::clone(ring),
            p: factor.modulus(),
            f,
            factor,
            xi,
            kernel: OnceLock::new(),
            powers: Arc::new(Mutex::new(Vec::new())),
        }
    }

    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn lambda(&self) -> u64 {
        self.ring.conductor()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Residue degree.
    pub fn f(&self) -> usize {
        self.f
    }

    pub fn is_ramified(&self) -> bool {
        self.p == self.lambda()
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.xi.field()
    }

    /// The factor of `Phi_lambda mod p` cut out by this map (`X - 1` when ramified).
    pub fn factor(&self) -> &PolyModP {
        &self.factor
    }

    /// Image of `a`.
    pub fn xi(&self) -> &FFElement {
        &self.xi
    }

    /// Smallest Frobenius conjugate of `xi` under the base-`p` encoding; the
    /// same for every description of this kernel.
    pub fn label(&self) -> FFElement {
        let mut best = self.xi.clone();
        let mut cur = self.xi.clone();
        for _ in 1..self.f {
            cur = cur.frobenius();
            if cur.canonical_cmp(&best) == Ordering::Less {
                best = cur.clone();
            }
        }
        best
    }

    pub fn apply(&self, x: &CycElt) -> Result<FFElement> {
        if x.ring().conductor() != self.lambda() {
            return Err(Error::RingMismatch { left: self.lambda(), right: x.ring().conductor() });
        }
        Ok(self.xi.eval_ints(x.coeffs()))
    }

    /// True when `x` lies in the kernel.
    pub fn vanishes(&self, x: &CycElt) -> Result<bool> {
        Ok(self.apply(x)?.is_zero())
    }

    /// `u_i = phi(eta_i)`, each in the prime field.
    pub fn period_residues(&self, periods: &PeriodSystem) -> Result<Vec<u64>> {
        if periods.lambda() != self.lambda() {
            return Err(Error::RingMismatch { left: self.lambda(), right: periods.lambda() });
        }
        let product = periods.e() * self.f as u64;
        if product != self.lambda() - 1 {
            return Err(Error::DegreeMismatch { product, expected: self.lambda() - 1 });
        }
        periods
            .periods()
            .iter()
            .map(|eta| {
                self.apply(eta)?.as_prime_field().ok_or_else(|| {
                    Error::CheckFailed(format!("period image {eta} is not in F_{}", self.p))
                })
            })
            .collect()
    }

    /// Kernel lattice in power-basis coordinates, generated by `p` and the
    /// lifted factor times `a^k`.
    pub fn kernel(&self) -> &IntLattice {
        self.kernel.get_or_init(|| {
            let d = self.ring.degree();
            let lift: Vec<Integer> =
                self.factor.coeffs().iter().map(|&c| Integer::from(c)).collect();
            let mut gens = IntLattice::scalar(d, &Integer::from(self.p)).basis().to_vec();
            let pj = CycElt::from_poly(&self.ring, lift);
            for k in 0..d {
                let g = pj.mul(&CycElt::alpha_pow(&self.ring, k as i64));
                gens.push(g.coeffs().to_vec());
            }
            IntLattice::from_generators(gens).expect("kernel contains p * Z^d")
        })
    }

    /// `ker(phi)^n` by iterated lattice products, cached.
    pub fn kernel_power(&self, n: usize) -> IntLattice {
        let d = self.ring.degree();
        if n == 0 {
            return IntLattice::full(d);
        }
        let mut powers = self.powers.lock().expect("kernel power cache poisoned");
        if powers.is_empty() {
            powers.push(self.kernel().clone());
        }
        let table = self.ring.mult_table();
        while powers.len() < n {
            let next = powers
                .last()
                .expect("nonempty")
                .product(self.kernel(), table)
                .expect("ideal product of full-rank lattices");
            powers.push(next);
        }
        powers[n - 1].clone()
    }

    /// The map `x -> phi(sigma_k(x))`, identified with its entry in `maps`.
    pub fn twist_index(&self, k: i64, maps: &[JacobiMap]) -> Result<usize> {
        let lambda = self.lambda();
        let kk = k.rem_euclid(lambda as i64) as u64;
        if kk == 0 {
            return Err(Error::NotCoprime { k, n: lambda });
        }
        let root = self.xi.pow(kk);
        maps.iter()
            .position(|m| {
                m.p == self.p && {
                    let image = root.eval_ints(
                        &m.factor.coeffs().iter().map(|&c| Integer::from(c)).collect::<Vec<_>>(),
                    );
                    image.is_zero()
                }
            })
            .ok_or_else(|| Error::CheckFailed(format!("no map of {} has root {root}", self.p)))
    }

    /// Number of elements of the residue field.
    pub fn norm_of_prime(&self) -> BigUint {
        self.field().order()
    }
}

impl fmt::Display for JacobiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a -> {} (mod {}, f = {})", self.xi, self.factor, self.f)
    }
}

/// Expected number of maps above `p`.
pub fn expected_map_count(lambda: u64, p: u64) -> u64 {
    if p == lambda {
        1
    } else {
        (lambda - 1) / multiplicative_order(p % lambda, lambda).expect("p is a unit mod lambda")
    }
}
