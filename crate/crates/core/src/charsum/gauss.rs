//! The tensor ring `Z[X, Y]/(Phi_lambda(X), Phi_p(Y))` holding Gauss sums.
//! An element is a list of `Z[zeta_lambda]` coefficients of
//! `1, Y, ..., Y^{p-2}`.

use std::sync::Arc;

use crate::cyclotomic::CycElt;
use crate::error::{Error, Result};
use crate::exact::integer::{pow_mod, Integer};

use super::Character;

#[derive(Debug)]
pub struct GaussSumRing {
    chi: Character,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussElt {
    ring: Arc<GaussSumRing>,
    coeffs: Vec<CycElt>,
}

impl PartialEq for GaussSumRing {
    fn eq(&self, o: &Self) -> bool {
        self.chi.p == o.chi.p && self.chi.order == o.chi.order
    }
}

impl Eq for GaussSumRing {}

impl GaussSumRing {
    pub fn new(p: u64, order: u64) -> Result<Arc<Self>> {
        Ok(Arc::new(GaussSumRing { chi: Character::new(p, order)? }))
    }

    pub fn character(&self) -> &Character {
        &self.chi
    }

    pub fn p(&self) -> u64 {
        self.chi.p
    }

    pub fn order(&self) -> u64 {
        self.chi.order
    }
}

impl GaussElt {
    /// Reduce coefficients of `1, Y, ..., Y^{p-1}` using `Phi_p(Y) = 0`.
    fn from_cyclic(ring: &Arc<GaussSumRing>, mut cyc: Vec<CycElt>) -> Self {
        let top = cyc.pop().expect("length p");
        if !top.is_zero() {
            for c in cyc.iter_mut() {
                *c = c.sub(&top);
            }
        }
        GaussElt { ring: Arc::clone(ring), coeffs: cyc }
    }

    fn zero_cyclic(ring: &Arc<GaussSumRing>) -> Vec<CycElt> {
        vec![CycElt::zero(ring.chi.ring()); ring.p() as usize]
    }

    /// `x` viewed as a constant in `Y`.
    pub fn from_base(ring: &Arc<GaussSumRing>, x: &CycElt) -> Self {
        let mut cyc = Self::zero_cyclic(ring);
        cyc[0] = x.clone();
        Self::from_cyclic(ring, cyc)
    }

    pub fn coeffs(&self) -> &[CycElt] {
        &self.coeffs
    }

    /// The element as a member of `Z[zeta_lambda]`, when free of `Y`.
    pub fn as_base(&self) -> Option<CycElt> {
        self.coeffs[1..]
            .iter()
            .all(CycElt::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.ring.p() as usize;
        let mut cyc = Self::zero_cyclic(&self.ring);
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    let k = (a + b) % p;
                    cyc[k] = cyc[k].add(&x.mul(y));
                }
            }
        }
        Self::from_cyclic(&self.ring, cyc)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::from_base(&self.ring, &CycElt::one(self.ring.chi.ring()));
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

    /// The substitution `Y -> Y^j`, for `j` prime to `p`.
    pub fn substitute(&self, j: u64) -> Result<Self> {
        let p = self.ring.p();
        if j.is_multiple_of(p) {
            return Err(Error::NotCoprime { k: j as i64, n: p });
        }
        let mut cyc = Self::zero_cyclic(&self.ring);
        for (a, x) in self.coeffs.iter().enumerate() {
            let k = (a as u64 * j % p) as usize;
            cyc[k] = cyc[k].add(x);
        }
        Ok(Self::from_cyclic(&self.ring, cyc))
    }
}

/// `(a^i, x) = sum_j a^{ij} x^{g^j}`.
pub fn gauss_sum(ring: &Arc<GaussSumRing>, i: i64) -> GaussElt {
    let chi = &ring.chi;
    let p = chi.p;
    let mut cyc = GaussElt::zero_cyclic(ring);
    for j in 0..p - 1 {
        let t = pow_mod(chi.g, j, p) as usize;
        cyc[t] = cyc[t].add(&CycElt::alpha_pow(chi.ring(), i * j as i64));
    }
    GaussElt::from_cyclic(ring, cyc)
}

impl GaussSumRing {
    pub fn gauss_sum(self: &Arc<Self>, i: i64) -> GaussElt {
        gauss_sum(self, i)
    }

    /// `psi_{i,k} = g_i g_k g_{-(i+k)} / (chi^{i+k}(-1) p)`, computed in the
    /// tensor ring and brought down to `Z[zeta]`.
    pub fn psi_via_gauss(self: &Arc<Self>, i: i64, k: i64) -> Result<CycElt> {
        self.chi.check_nondegenerate(i, k)?;
        let prod = self.gauss_sum(i).mul(&self.gauss_sum(k)).mul(&self.gauss_sum(-(i + k)));
        let base = prod
            .as_base()
            .ok_or_else(|| Error::CheckFailed("g_i g_k g_-(i+k) depends on Y".into()))?;
        let p = self.chi.p;
        let sign = self.chi.exponent(i + k, p - 1).expect("-1 is a unit");
        let unit_inv = CycElt::alpha_pow(self.chi.ring(), -(sign as i64));
        base.mul(&unit_inv)
            .div_exact(&Integer::from(p))
            .ok_or_else(|| Error::CheckFailed("Gauss-sum quotient is not integral".into()))
    }

    /// `(a^i, x)^lambda`, checked to be fixed by every `Y -> Y^j` and free of
    /// `Y`.
    pub fn gauss_power_descent(self: &Arc<Self>, i: i64) -> Result<CycElt> {
        let n = self.order();
        if i.rem_euclid(n as i64) == 0 {
            return Err(Error::DegenerateIndex { i, k: 0, order: n });
        }
        let h = self.gauss_sum(i).pow(n);
        for j in 1..self.p() {
            if h.substitute(j)? != h {
                return Err(Error::CheckFailed(format!("Y -> Y^{j} moves (a^{i}, x)^{n}")));
            }
        }
        h.as_base()
            .ok_or_else(|| Error::CheckFailed(format!("(a^{i}, x)^{n} depends on Y")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::integer::int;

    #[test]
    fn trivial_character_sum() {
        let g = GaussSumRing::new(7, 3).unwrap();
        let s = g.gauss_sum(0);
        assert_eq!(s.as_base(), Some(CycElt::from_i64(g.character().ring(), &[-1])));
    }

    #[test]
    fn reflection_in_tensor_ring() {
        let g = GaussSumRing::new(7, 3).unwrap();
        let prod = g.gauss_sum(1).mul(&g.gauss_sum(2));
        // chi(-1) = 1 for odd order
        assert_eq!(prod.as_base(), Some(CycElt::from_i64(g.character().ring(), &[7])));
        let g4 = GaussSumRing::new(13, 4).unwrap();
        let prod = g4.gauss_sum(1).mul(&g4.gauss_sum(3));
        let chi_m1 = g4.character().value(1, 12);
        assert_eq!(prod.as_base(), Some(chi_m1.scale(&int(13))));
    }

    #[test]
    fn psi_matches_minus_j() {
        for (p, order) in [(11u64, 5u64), (7, 3), (13, 4), (13, 6), (13, 12)] {
            let g = GaussSumRing::new(p, order).unwrap();
            let n = order as i64;
            for i in 1..n {
                for k in 1..n {
                    if (i + k) % n == 0 {
                        continue;
                    }
                    let psi = g.psi_via_gauss(i, k).unwrap();
                    assert_eq!(psi, g.character().jacobi_sum(i, k).neg(), "p {p} i {i} k {k}");
                }
            }
        }
    }

    #[test]
    fn descent_examples() {
        let g = GaussSumRing::new(5, 2).unwrap();
        assert_eq!(g.gauss_power_descent(1).unwrap(), CycElt::from_i64(g.character().ring(), &[5]));
        for (p, order) in [(7u64, 3u64), (13, 3), (11, 5)] {
            let g = GaussSumRing::new(p, order).unwrap();
            let h = g.gauss_power_descent(1).unwrap();
            // each conjugate has absolute value p^(lambda/2)
            assert_eq!(h.norm(), int(p as i64).pow((order * (order - 1) / 2) as u32));
        }
        assert!(g.gauss_power_descent(2).is_err());
    }

    #[test]
    fn cube_is_p_times_psi() {
        for p in [7u64, 13] {
            let g = GaussSumRing::new(p, 3).unwrap();
            let cube = g.gauss_power_descent(1).unwrap();
            let psi = g.character().jacobi_sum(1, 1).neg();
            assert_eq!(cube, psi.scale(&int(p as i64)));
        }
    }
}
