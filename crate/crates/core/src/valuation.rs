//! Discrete valuations attached to Jacobi maps.
//!
//! A [`KummerPrime`] carries a uniformizer `psi` built from Gaussian periods
//! and the product `Psi` of its other conjugates over the period field. The
//! multiplicity of `x` is the largest `mu` with `x * Psi^mu` divisible by
//! `q^mu`, coefficientwise in the power basis. [`valuation_oracle`] computes
//! the same number from kernel powers and never looks at `psi`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{gaussian_periods, CycElt, CycRing, PeriodSystem};
use crate::error::{Error, Result};
use crate::exact::integer::{
    inv_mod, mul_mod, pow_mod, reduce_i64, trial_factor, valuation_int, Integer,
};
use crate::exact::lattice::IntLattice;
use crate::ideal_primes::{maps_for_ring, JacobiMap};

pub const DEFAULT_UNIFORMIZER_BOUND: u32 = 3;
pub const ESCALATED_UNIFORMIZER_BOUND: u32 = 6;
pub const DEFAULT_TRIAL_DIVISION: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub uniformizer_bound: u32,
    pub trial_division: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            uniformizer_bound: DEFAULT_UNIFORMIZER_BOUND,
            trial_division: DEFAULT_TRIAL_DIVISION,
        }
    }
}

/// A Jacobi map with a certified uniformizer.
#[derive(Clone, Debug)]
pub struct KummerPrime {
    map: JacobiMap,
    periods: PeriodSystem,
    /// `(c, c_1, ...)`: period coordinates of `psi`, or power-basis
    /// coordinates when ramified.
    coords: Vec<Integer>,
    psi: CycElt,
    big_psi: CycElt,
    /// `psi * Psi`, a rational integer exactly divisible by `q`.
    certificate: Integer,
}

impl KummerPrime {
    /// Uniformizer search starting at `bound`, escalating to
    /// [`ESCALATED_UNIFORMIZER_BOUND`], then falling back to
    /// [`KummerPrime::constructive`].
    pub fn new(map: &JacobiMap, bound: u32) -> Result<Self> {
        let periods = natural_periods(map)?;
        let found = match search(map, &periods, 1, bound) {
            Err(Error::BoundExceeded { .. }) if bound < ESCALATED_UNIFORMIZER_BOUND => {
                search(map, &periods, bound + 1, ESCALATED_UNIFORMIZER_BOUND)
            }
            other => other,
        };
        match found {
            Err(Error::BoundExceeded { .. }) => Self::constructive(map),
            other => other,
        }
    }

    /// A uniformizer from linear algebra mod `q`: `psi = sum w_i eta_i` with
    /// `phi(psi) = 0` and `phi'(psi) = 1` for the other maps above `q`, plus
    /// `q` if `psi` lands in the square of the prime.
    pub fn constructive(map: &JacobiMap) -> Result<Self> {
        let periods = natural_periods(map)?;
        let ring = map.ring();
        let q = map.p();
        if map.is_ramified() {
            let psi = CycElt::from_i64(ring, &[1, -1]);
            let big_psi = psi.norm_cofactor();
            let coords = psi.coeffs().to_vec();
            return certify(map, &periods, &coords, psi, big_psi)
                .ok_or_else(|| Error::CheckFailed("1 - a is not a uniformizer".into()));
        }
        if periods.e() == 1 {
            return search(map, &periods, 1, 1);
        }
        let u = map.period_residues(&periods)?;
        let e = u.len();
        // row s: the map with eta_i -> u_{i+s}
        let mut rows: Vec<Vec<u64>> = (0..e)
            .map(|s| {
                let mut r: Vec<u64> = (0..e).map(|i| u[(i + s) % e]).collect();
                r.push(if s == 0 { 0 } else { 1 });
                r
            })
            .collect();
        let w = solve_mod(&mut rows, q)
            .ok_or_else(|| Error::CheckFailed(format!("period matrix singular mod {q}")))?;
        let centered: Vec<Integer> = w
            .iter()
            .map(|&c| if c > q / 2 { Integer::from(c) - q } else { Integer::from(c) })
            .collect();
        let g = periods.primitive_root();
        let lambda = map.lambda();
        let build = |c: Integer| {
            let psi = periods.combine(&c, &centered);
            let big_psi = (1..e as u64).fold(CycElt::one(ring), |acc, j| {
                acc.mul(&psi.conjugate(pow_mod(g, j, lambda) as i64).expect("unit"))
            });
            let coords: Vec<Integer> = std::iter::once(c).chain(centered.iter().cloned()).collect();
            certify(map, &periods, &coords, psi, big_psi)
        };
        build(Integer::zero())
            .or_else(|| build(Integer::from(q)))
            .ok_or_else(|| Error::CheckFailed(format!("no uniformizer constructed for {map}")))
    }

    pub fn map(&self) -> &JacobiMap {
        &self.map
    }

    pub fn periods(&self) -> &PeriodSystem {
        &self.periods
    }

    pub fn q(&self) -> u64 {
        self.map.p()
    }

    pub fn coords(&self) -> &[Integer] {
        &self.coords
    }

    pub fn psi(&self) -> &CycElt {
        &self.psi
    }

    pub fn big_psi(&self) -> &CycElt {
        &self.big_psi
    }

    pub fn certificate(&self) -> &Integer {
        &self.certificate
    }

    /// Kummer's multiplicity of this ideal prime in `x`.
    pub fn multiplicity(&self, x: &CycElt) -> Result<u32> {
        if x.is_zero() {
            return Err(Error::ValuationInfinite);
        }
        if !self.map.vanishes(x)? {
            return Ok(0);
        }
        let q = Integer::from(self.q());
        let cap = valuation_int(&x.norm(), self.q());
        let mut y = x.clone();
        let mut mu = 0;
        loop {
            match y.mul(&self.big_psi).div_exact(&q) {
                Some(next) => {
                    y = next;
                    mu += 1;
                    if mu > cap {
                        return Err(Error::CheckFailed(format!(
                            "multiplicity of {x} exceeds v_{}(N) = {cap}",
                            self.q()
                        )));
                    }
                }
                None => return Ok(mu),
            }
        }
    }

    /// Whether `x * Psi^m` is divisible by `q^m`, for `m = 0..=upto`, each
    /// evaluated from scratch.
    pub fn divisibility_profile(&self, x: &CycElt, upto: u32) -> Vec<bool> {
        let q = Integer::from(self.q());
        let mut prod = x.clone();
        let mut qm = Integer::one();
        let mut out = vec![true];
        for _ in 0..upto {
            prod = prod.mul(&self.big_psi);
            qm *= &q;
            out.push(prod.divisible_by(&qm));
        }
        out
    }
}

impl fmt::Display for KummerPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} with psi = {}", self.map, self.psi)
    }
}

/// Period system of the decomposition field of `map`: `e = (lambda-1)/f`
/// periods, or the trivial `e = 1` system for the ramified prime.
pub fn natural_periods(map: &JacobiMap) -> Result<PeriodSystem> {
    let lambda = map.lambda();
    let e = if map.is_ramified() { 1 } else { (lambda - 1) / map.f() as u64 };
    gaussian_periods(map.ring(), e)
}

/// First uniformizer in the search order with every coordinate bounded by
/// `bound` in absolute value.
pub fn find_uniformizer(map: &JacobiMap, periods: &PeriodSystem, bound: u32) -> Result<KummerPrime> {
    search(map, periods, 1, bound)
}

fn search(map: &JacobiMap, periods: &PeriodSystem, from: u32, bound: u32) -> Result<KummerPrime> {
    let ring = map.ring();
    let lambda = map.lambda();
    let q = map.p();
    if periods.lambda() != lambda {
        return Err(Error::RingMismatch { left: lambda, right: periods.lambda() });
    }
    if map.is_ramified() {
        // the ramified prime is not split by any subfield, so search the
        // whole ring: psi = c + c_1 a + ... + c_{lambda-2} a^{lambda-2}
        let weights = vec![1; ring.degree()];
        return first_hit(from, bound, &weights, q, |v| {
            let psi = CycElt::from_coords(ring, v.to_vec()).expect("length d");
            let big_psi = (2..lambda).fold(CycElt::one(ring), |acc, k| {
                acc.mul(&psi.conjugate(k as i64).expect("k < lambda"))
            });
            certify(map, periods, v, psi, big_psi)
        })
        .ok_or(Error::BoundExceeded { bound });
    }
    let product = periods.e() * map.f() as u64;
    if product != lambda - 1 {
        return Err(Error::DegreeMismatch { product, expected: lambda - 1 });
    }
    if periods.e() == 1 {
        // q stays prime in Z[a]
        let psi = CycElt::from_int(ring, Integer::from(q));
        let coords = vec![Integer::from(q), Integer::zero()];
        return certify(map, periods, &coords, psi, CycElt::one(ring))
            .ok_or_else(|| Error::CheckFailed("q is not a uniformizer".into()));
    }
    let u: Vec<u64> = map.period_residues(periods)?;
    let g = periods.primitive_root();
    let e = periods.e();
    let weights: Vec<u64> = std::iter::once(1).chain(u).collect();
    first_hit(from, bound, &weights, q, |v| {
        let psi = periods.combine(&v[0], &v[1..]);
        let big_psi = (1..e).fold(CycElt::one(ring), |acc, j| {
            let k = pow_mod(g, j, lambda);
            acc.mul(&psi.conjugate(k as i64).expect("g^j is a unit"))
        });
        certify(map, periods, v, psi, big_psi)
    })
    .ok_or(Error::BoundExceeded { bound })
}

fn certify(
    map: &JacobiMap,
    periods: &PeriodSystem,
    coords: &[Integer],
    psi: CycElt,
    big_psi: CycElt,
) -> Option<KummerPrime> {
    if psi.is_zero() || !map.vanishes(&psi).ok()? {
        return None;
    }
    let certificate = psi.mul(&big_psi).as_integer()?;
    if certificate.is_zero() || valuation_int(&certificate, map.p()) != 1 {
        return None;
    }
    Some(KummerPrime {
        map: map.clone(),
        periods: periods.clone(),
        coords: coords.to_vec(),
        psi,
        big_psi,
        certificate,
    })
}

/// Walks coefficient vectors by increasing max-norm `from..=bound`,
/// lexicographically within a norm, with values in the order
/// `0, 1, -1, 2, -2, ...`, and hands `test` only those `v` with
/// `sum v_i w_i = 0 mod q`. The last coordinate is solved for rather than
/// enumerated.
fn first_hit<T>(
    from: u32,
    bound: u32,
    weights: &[u64],
    q: u64,
    mut test: impl FnMut(&[Integer]) -> Option<T>,
) -> Option<T> {
    let len = weights.len();
    if len == 0 {
        return None;
    }
    let value = |idx: u32| -> i64 {
        if idx % 2 == 1 {
            (idx as i64 + 1) / 2
        } else {
            -(idx as i64) / 2
        }
    };
    let w_last = weights[len - 1] % q;
    let w_inv = inv_mod(w_last, q);
    for norm in from.max(1)..=bound {
        let top = 2 * norm;
        let mut idx = vec![0u32; len - 1];
        loop {
            let prefix_max = idx.iter().any(|&i| i + 1 >= top);
            let partial = idx.iter().zip(weights).fold(0u64, |acc, (&i, &w)| {
                (acc + reduce_i64(value(i), q) * (w % q)) % q
            });
            let target = w_inv.map(|inv| mul_mod((q - partial) % q, inv, q));
            for last in 0..=top {
                if !prefix_max && last + 1 < top {
                    continue;
                }
                let ok = match target {
                    Some(t) => reduce_i64(value(last), q) == t,
                    None => partial == 0,
                };
                if !ok {
                    continue;
                }
                let v: Vec<Integer> = idx
                    .iter()
                    .chain(std::iter::once(&last))
                    .map(|&i| Integer::from(value(i)))
                    .collect();
                if let Some(hit) = test(&v) {
                    return Some(hit);
                }
            }
            // odometer over the prefix, last position fastest
            let mut done = true;
            for pos in (0..len - 1).rev() {
                if idx[pos] < top {
                    idx[pos] += 1;
                    done = false;
                    break;
                }
                idx[pos] = 0;
            }
            if done {
                break;
            }
        }
    }
    None
}

/// Solves a square system given as augmented rows mod prime `q`.
fn solve_mod(rows: &mut [Vec<u64>], q: u64) -> Option<Vec<u64>> {
    let n = rows.len();
    for c in 0..n {
        let piv = (c..n).find(|&r| !rows[r][c].is_multiple_of(q))?;
        rows.swap(c, piv);
        let inv = inv_mod(rows[c][c], q)?;
        for x in rows[c].iter_mut() {
            *x = mul_mod(*x, inv, q);
        }
        for r in 0..n {
            if r != c && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..=n {
                    let sub = mul_mod(f, rows[c][k], q);
                    rows[r][k] = (rows[r][k] + q - sub) % q;
                }
            }
        }
    }
    Some(rows.iter().map(|r| r[n]).collect())
}

/// Largest `mu` with `x` in `ker(phi)^mu`, from lattice powers of the kernel.
pub fn valuation_oracle(x: &CycElt, map: &JacobiMap) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::ValuationInfinite);
    }
    let cap = valuation_int(&x.norm(), map.p()) / map.f() as u32;
    let mut mu = 0u32;
    while map.kernel_power(mu as usize + 1).contains_vector(x.coeffs())? {
        mu += 1;
        if mu > cap {
            return Err(Error::CheckFailed(format!("{x} lies in too many kernel powers")));
        }
    }
    Ok(mu)
}

/// Whether the map of `k` is defined at `num/den`, by comparing multiplicities.
pub fn is_defined_at(num: &CycElt, den: &CycElt, k: &KummerPrime) -> Result<bool> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(true);
    }
    Ok(k.multiplicity(num)? >= k.multiplicity(den)?)
}

/// Whether `map` is defined at `num/den`: the colon ideal `(den O : num)` is
/// not inside the kernel.
pub fn is_defined_at_oracle(num: &CycElt, den: &CycElt, map: &JacobiMap) -> Result<bool> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let table = map.ring().mult_table();
    let den_o = IntLattice::principal(den.coeffs(), table)?;
    let colon = den_o.colon(num.coeffs(), table)?;
    Ok(!map.kernel().contains(&colon)?)
}

/// `x / d` when it lies in `Z[a]`, via `x * prod_{k>=2} sigma_k(d) / N(d)`.
pub fn divides_exact(d: &CycElt, x: &CycElt) -> Result<Option<CycElt>> {
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let cof = d.norm_cofactor();
    let n = d.mul(&cof).as_integer().expect("norm is rational");
    Ok(x.mul(&cof).div_exact(&n))
}

#[derive(Clone, Debug)]
pub struct ValuationRecord {
    pub prime: KummerPrime,
    pub mu: u32,
}

#[derive(Clone, Debug)]
pub struct IdealFactorization {
    pub element: CycElt,
    pub norm: Integer,
    /// Primes with positive multiplicity, sorted by `p` then map order.
    pub records: Vec<ValuationRecord>,
}

impl IdealFactorization {
    /// `(x)` is the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.records.is_empty()
    }
}

/// Caches Kummer primes per rational prime for one ring.
#[derive(Debug)]
pub struct Valuator {
    ring: Arc<CycRing>,
    limits: SearchLimits,
    primes: Mutex<BTreeMap<u64, Arc<Vec<KummerPrime>>>>,
}

impl Valuator {
    pub fn new(ring: &Arc<CycRing>, limits: SearchLimits) -> Result<Self> {
        if !ring.is_prime_conductor() {
            return Err(Error::NotPrime(ring.conductor()));
        }
        Ok(Valuator { ring: Arc::clone(ring), limits, primes: Mutex::new(BTreeMap::new()) })
    }

    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn limits(&self) -> SearchLimits {
        self.limits
    }

    /// Kummer primes for every map above `p`, in map order.
    pub fn primes_over(&self, p: u64) -> Result<Arc<Vec<KummerPrime>>> {
        if let Some(v) = self.primes.lock().expect("cache poisoned").get(&p) {
            return Ok(Arc::clone(v));
        }
        let built: Vec<KummerPrime> = maps_for_ring(&self.ring, p)?
            .iter()
            .map(|m| KummerPrime::new(m, self.limits.uniformizer_bound))
            .collect::<Result<_>>()?;
        let built = Arc::new(built);
        self.primes.lock().expect("cache poisoned").insert(p, Arc::clone(&built));
        Ok(built)
    }

    fn norm_primes(&self, x: &CycElt) -> Result<(Integer, Vec<(u64, u32)>)> {
        if x.is_zero() {
            return Err(Error::ValuationInfinite);
        }
        let n = x.norm();
        let fac = trial_factor(&n, self.limits.trial_division)?;
        Ok((n, fac))
    }

    /// All ideal primes dividing `x`, validated against the norm.
    pub fn factorize(&self, x: &CycElt) -> Result<IdealFactorization> {
        let (norm, fac) = self.norm_primes(x)?;
        let mut records = Vec::new();
        for (p, vp) in fac {
            let mut weighted = 0u32;
            for k in self.primes_over(p)?.iter() {
                let mu = k.multiplicity(x)?;
                weighted += k.map().f() as u32 * mu;
                if mu > 0 {
                    records.push(ValuationRecord { prime: k.clone(), mu });
                }
            }
            if weighted != vp {
                return Err(Error::CheckFailed(format!(
                    "sum of f * mu over p = {p} is {weighted}, but v_p(N) = {vp}"
                )));
            }
        }
        Ok(IdealFactorization { element: x.clone(), norm: norm.abs(), records })
    }

    /// `d | x` by comparing multiplicities at every prime above `N(d)`.
    pub fn divides_by_valuation(&self, d: &CycElt, x: &CycElt) -> Result<bool> {
        let (_, fac) = self.norm_primes(d)?;
        if x.is_zero() {
            return Ok(true);
        }
        for (p, _) in fac {
            for k in self.primes_over(p)?.iter() {
                if k.multiplicity(d)? > k.multiplicity(x)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `d | x`, computed both ways; disagreement is an error.
    pub fn divides(&self, d: &CycElt, x: &CycElt) -> Result<bool> {
        let exact = divides_exact(d, x)?.is_some();
        let by_val = self.divides_by_valuation(d, x)?;
        if exact != by_val {
            return Err(Error::CheckFailed(format!(
                "exact division says {exact}, valuations say {by_val} for {d} | {x}"
            )));
        }
        Ok(exact)
    }

    /// Every map above `p` for every `p | N(den)` is defined at `num/den`.
    pub fn defined_everywhere(&self, num: &CycElt, den: &CycElt) -> Result<bool> {
        let (_, fac) = self.norm_primes(den)?;
        for (p, _) in fac {
            for k in self.primes_over(p)?.iter() {
                if !is_defined_at(num, den, k)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// [`Valuator::factorize`] with default limits.
pub fn factorize(x: &CycElt) -> Result<IdealFactorization> {
    Valuator::new(x.ring(), SearchLimits::default())?.factorize(x)
}
