//! Rational-integer helpers: primality, trial-division factoring, modular
//! arithmetic on machine words, and exact combinatorics on [`Integer`].

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer used throughout the crate.
pub type Integer = BigInt;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
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
    let e = ((a % m) as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Reduce a signed value into `[0, m)`.
pub fn reduce_i64(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

pub fn reduce_int(a: &Integer, m: u64) -> u64 {
    a.mod_floor(&Integer::from(m)).to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin, exact for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn primes_below(bound: u64) -> Vec<u64> {
    (2..bound).filter(|&n| is_prime(n)).collect()
}

/// Prime factorization of a machine word, ascending primes with exponents.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Factor `|n|` by trial division up to `limit`. The remaining cofactor is
/// accepted when it is provably prime (below `limit^2`, or a 64-bit
/// Miller-Rabin prime); otherwise the factorization is refused.
pub fn trial_factor(n: &Integer, limit: u64) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let mut rest = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= limit {
        let dd = Integer::from(d);
        if &dd * &dd > rest {
            break;
        }
        if (&rest % &dd).is_zero() {
            let mut e = 0;
            while (&rest % &dd).is_zero() {
                rest /= &dd;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok(out);
    }
    let below_square = {
        let l = Integer::from(limit);
        &l * &l >= rest
    };
    match rest.to_u64() {
        Some(r) if below_square || is_prime(r) => {
            out.push((r, 1));
            out.sort_unstable();
            Ok(out)
        }
        _ => Err(Error::TrialDivisionExceeded(n.to_string())),
    }
}

/// Exponent of the prime `p` in `n` (which must be nonzero).
pub fn valuation_int(n: &Integer, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let pp = Integer::from(p);
    let mut m = n.clone();
    let mut e = 0;
    while (&m % &pp).is_zero() {
        m /= &pp;
        e += 1;
    }
    e
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

/// Multiplicative order of `a` modulo `n`; `None` when `gcd(a, n) != 1`.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if gcd_u64(a % n, n) != 1 {
        return None;
    }
    let phi = euler_phi(n);
    let mut order = phi;
    for (q, _) in factor_u64(phi) {
        while order.is_multiple_of(q) && pow_mod(a, order / q, n) == 1 {
            order /= q;
        }
    }
    Some(order)
}

/// Least positive primitive root modulo the prime `p`.
pub fn least_primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let qs: Vec<u64> = factor_u64(p - 1).into_iter().map(|(q, _)| q).collect();
    (2..p)
        .find(|&g| qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .ok_or(Error::NotPrime(p))
}

pub fn factorial(n: u64) -> Integer {
    (1..=n).fold(Integer::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Integer square root of a nonnegative value, if it is a perfect square.
pub fn exact_sqrt(n: &Integer) -> Option<Integer> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_and_large() {
        let brute = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..5000 {
            assert_eq!(is_prime(n), brute(n), "n = {n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn orders_and_roots() {
        assert_eq!(multiplicative_order(2, 5), Some(4));
        assert_eq!(multiplicative_order(11, 5), Some(1));
        assert_eq!(multiplicative_order(19, 5), Some(2));
        assert_eq!(multiplicative_order(2, 4), None);
        assert_eq!(least_primitive_root(5).unwrap(), 2);
        assert_eq!(least_primitive_root(7).unwrap(), 3);
        assert_eq!(least_primitive_root(13).unwrap(), 2);
        assert_eq!(least_primitive_root(41).unwrap(), 6);
        assert!(least_primitive_root(9).is_err());
    }

    #[test]
    fn trial_factoring() {
        let f = trial_factor(&int(-360), 1000).unwrap();
        assert_eq!(f, vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(trial_factor(&int(1), 10).unwrap(), vec![]);
        // cofactor 1000003 is prime and the bound is too small to see it
        assert_eq!(trial_factor(&int(2 * 1_000_003), 10).unwrap(), vec![(2, 1), (1_000_003, 1)]);
        let big: Integer = Integer::from(1_000_003u64) * Integer::from(1_000_033u64) * 1_000_037u64;
        assert!(matches!(trial_factor(&big, 100), Err(Error::TrialDivisionExceeded(_))));
    }

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(6, 3), int(20));
        assert_eq!(binomial(14, 7), int(3432));
        assert_eq!(factorial(7), int(5040));
        assert_eq!(exact_sqrt(&int(441)), Some(int(21)));
        assert_eq!(exact_sqrt(&int(440)), None);
        assert_eq!(inv_mod(3, 11), Some(4));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(euler_phi(12), 4);
    }
}
