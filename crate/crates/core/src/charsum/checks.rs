//! Jacobi's congruence, its quartic and binomial corollaries, and the
//! prime factorization of `J(chi, chi)`.

use num_integer::Integer as _;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::integer::{binomial, exact_sqrt, factorial, pow_mod, reduce_int, Integer};
use crate::exact::poly_mod::PolyModP;
use crate::ideal_primes::maps_for_ring;
use crate::valuation::{valuation_oracle, KummerPrime};

use super::Character;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FcCase {
    /// `i + k < p - 1`
    Below,
    /// `i + k > p - 1`
    Above,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FcReport {
    pub p: u64,
    pub g: u64,
    pub i: i64,
    pub k: i64,
    pub case: FcCase,
    /// `J(chi^i, chi^k)` in `Z[zeta_{p-1}]`.
    pub j: String,
    /// Image of `J` under `r -> g`.
    pub j_image: u64,
    /// Image of `psi = -J`.
    pub psi_image: u64,
    /// The exact integer `(2(p-1)-i-k)! / ((p-1-i)! (p-1-k)!)`, or `0`.
    pub binomial: String,
    pub expected: u64,
    pub pass: bool,
}

/// The right-hand side of Jacobi's congruence: `0` below the threshold,
/// the binomial quotient (as an exact integer) above it.
pub fn fc_expected(p: u64, i: i64, k: i64) -> Result<(FcCase, Integer)> {
    let n = p as i64 - 1;
    if !(0 < i && i < n && 0 < k && k < n) {
        return Err(Error::InvalidArgument(format!("need 0 < i, k < {n}")));
    }
    if i + k == n {
        return Err(Error::ExcludedIndex { i, k, sum: n });
    }
    if i + k < n {
        return Ok((FcCase::Below, Integer::from(0)));
    }
    let top = factorial((2 * n - i - k) as u64);
    let den = factorial((n - i) as u64) * factorial((n - k) as u64);
    Ok((FcCase::Above, top / den))
}

/// Image of an element of `Z[r]` (power-basis coefficients) under `r -> g`.
fn substitute(coeffs: &[Integer], g: u64, p: u64) -> u64 {
    PolyModP::from_ints(p, coeffs).eval(g)
}

/// Jacobi's fundamental congruence for the character of order `p - 1`.
pub fn fc_check(p: u64, i: i64, k: i64) -> Result<FcReport> {
    let (case, bin) = fc_expected(p, i, k)?;
    let chi = Character::new(p, p - 1)?;
    let g = chi.primitive_root();
    let j = chi.jacobi_sum(i, k);
    let j_image = substitute(j.coeffs(), g, p);
    let psi_image = (p - j_image) % p;
    let expected = reduce_int(&bin, p);
    Ok(FcReport {
        p,
        g,
        i,
        k,
        case,
        j: j.to_string(),
        j_image,
        psi_image,
        binomial: bin.to_string(),
        expected,
        pass: j_image == expected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticReport {
    pub p: u64,
    pub m: u64,
    pub j: String,
    /// Odd and even coordinates of `J(chi, chi) = a' + b' i`.
    pub a: String,
    pub b: String,
    /// `C(2m, m) / 2 mod p`.
    pub half_binomial: u64,
    /// `+1` or `-1`: the sign with `a = sign * C(2m, m)/2 mod p`, `0` if neither.
    pub sign: i8,
    /// `J(chi, chi)` vanishes at `zeta -> g^m`, `J(chi^3, chi^3)` does not.
    pub j_divisible: bool,
    pub j3_divisible: bool,
    pub pass: bool,
}

fn sign_match(x: &Integer, target: u64, p: u64) -> i8 {
    let r = reduce_int(x, p);
    if r == target % p {
        1
    } else if r == (p - target % p) % p {
        -1
    } else {
        0
    }
}

pub fn quartic_demo(p: u64) -> Result<QuarticReport> {
    if p % 4 != 1 {
        return Err(Error::InvalidArgument(format!("{p} is not 1 mod 4")));
    }
    let chi = Character::new(p, 4)?;
    let m = chi.m();
    let j = chi.jacobi_sum(1, 1);
    let (re, im) = (j.coeffs()[0].clone(), j.coeffs()[1].clone());
    let sum_sq = &re * &re + &im * &im;
    let (a, b) = if re.is_odd() { (re, im) } else { (im, re) };
    let half = binomial(2 * m, m) / 2u32;
    let half_binomial = reduce_int(&half, p);
    let sign = sign_match(&a, half_binomial, p);
    let gm = pow_mod(chi.primitive_root(), m, p);
    let j_divisible = substitute(j.coeffs(), gm, p) == 0;
    let j3_divisible = substitute(chi.jacobi_sum(3, 3).coeffs(), gm, p) == 0;
    let pass = sum_sq == Integer::from(p) && sign != 0 && j_divisible && !j3_divisible;
    Ok(QuarticReport {
        p,
        m,
        j: j.to_string(),
        a: a.to_string(),
        b: b.to_string(),
        half_binomial,
        sign,
        j_divisible,
        j3_divisible,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialReport {
    pub p: u64,
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub binomial: String,
    pub binomial_mod: u64,
    pub two_a_mod: u64,
    pub sign: i8,
    pub pass: bool,
}

/// Gauss's `2a = +-C(2n, n) mod p` for `p = 4n + 1 = a^2 + 4b^2`.
pub fn binomial_congruence(p: u64) -> Result<BinomialReport> {
    if p % 4 != 1 || !crate::exact::integer::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not a prime 1 mod 4")));
    }
    let n = (p - 1) / 4;
    let (a, b) = (0..)
        .take_while(|b: &u64| 4 * b * b < p)
        .find_map(|b| {
            let rest = Integer::from(p - 4 * b * b);
            exact_sqrt(&rest).map(|a| (u64::try_from(a).expect("a < p"), b))
        })
        .ok_or_else(|| Error::CheckFailed(format!("{p} is not a^2 + 4b^2")))?;
    let bin = binomial(2 * n, n);
    let binomial_mod = reduce_int(&bin, p);
    let two_a_mod = 2 * a % p;
    let sign = sign_match(&Integer::from(two_a_mod), binomial_mod, p);
    Ok(BinomialReport {
        p,
        n,
        a,
        b,
        binomial: bin.to_string(),
        binomial_mod,
        two_a_mod,
        sign,
        pass: sign != 0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StickelbergerRow {
    /// The map is `sigma_t^{-1}` of the normalized prime: `zeta -> g^{mt}`.
    pub t: u64,
    pub xi: u64,
    pub expected: u32,
    pub mu_kummer: u32,
    pub mu_oracle: u32,
    /// Jacobi's congruence at `i = k = tm` predicts vanishing.
    pub fc_divisible: bool,
    /// `J(chi^t, chi^t)` vanishes at `zeta -> g^m`.
    pub direct_divisible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StickelbergerReport {
    pub lambda: u64,
    pub p: u64,
    pub g: u64,
    pub m: u64,
    /// `g^m mod p`, the label of the normalized prime.
    pub xi: u64,
    pub j: String,
    pub psi: String,
    pub norm: String,
    pub rows: Vec<StickelbergerRow>,
    pub total: u32,
    pub pass: bool,
}

/// Valuations of `J(chi, chi)` at every prime above `p`, compared with
/// the set `0 < 2t < lambda`.
pub fn stickelberger_check(lambda: u64, p: u64, bound: u32) -> Result<StickelbergerReport> {
    if lambda < 3 || !crate::exact::integer::is_prime(lambda) {
        return Err(Error::InvalidArgument(format!("{lambda} is not an odd prime")));
    }
    if p % lambda != 1 {
        return Err(Error::InvalidArgument(format!("{p} is not 1 mod {lambda}")));
    }
    let chi = Character::new(p, lambda)?;
    let g = chi.primitive_root();
    let m = chi.m();
    let base = pow_mod(g, m, p);
    let j = chi.jacobi_sum(1, 1);
    let mut rows = Vec::new();
    for map in maps_for_ring(chi.ring(), p)? {
        let xi = map.xi().as_prime_field().expect("p splits completely");
        let t = (1..lambda)
            .find(|&t| pow_mod(base, t, p) == xi)
            .ok_or_else(|| Error::CheckFailed(format!("{xi} is not a power of {base}")))?;
        let kummer = KummerPrime::new(&map, bound)?;
        let (fc_case, _) = fc_expected(p, (t * m) as i64, (t * m) as i64)?;
        let jt = chi.jacobi_sum(t as i64, t as i64);
        rows.push(StickelbergerRow {
            t,
            xi,
            expected: u32::from(2 * t < lambda),
            mu_kummer: kummer.multiplicity(&j)?,
            mu_oracle: valuation_oracle(&j, &map)?,
            fc_divisible: fc_case == FcCase::Below,
            direct_divisible: substitute(jt.coeffs(), base, p) == 0,
        });
    }
    rows.sort_by_key(|r| r.t);
    let total = rows.iter().map(|r| r.mu_kummer).sum();
    let pass = rows.iter().all(|r| {
        r.mu_kummer == r.expected
            && r.mu_oracle == r.expected
            && r.fc_divisible == (r.expected == 1)
            && r.direct_divisible == (r.expected == 1)
    }) && total == (lambda as u32 - 1) / 2;
    Ok(StickelbergerReport {
        lambda,
        p,
        g,
        m,
        xi: base,
        j: j.to_string(),
        psi: j.neg().to_string(),
        norm: j.norm().to_string(),
        rows,
        total,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fc_examples() {
        let r = fc_check(13, 3, 4).unwrap();
        assert_eq!((r.case, r.j_image, r.expected), (FcCase::Below, 0, 0));
        assert!(r.pass);
        let r = fc_check(13, 8, 9).unwrap();
        assert_eq!(r.binomial, "35");
        assert_eq!(r.expected, 9);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.psi_image, 4);
        assert_eq!(fc_check(13, 5, 7).unwrap_err(), Error::ExcludedIndex { i: 5, k: 7, sum: 12 });
        for i in 1..4 {
            for k in 1..4 {
                if i + k != 4 {
                    assert!(fc_check(5, i, k).unwrap().pass);
                }
            }
        }
    }

    /// Independent route to the right-hand side: substituting `r -> g` turns
    /// `-sum chi^i(t) chi^k(1-t)` into `-sum_t t^i (1-t)^k mod p`.
    #[test]
    fn fc_against_power_sums() {
        for p in [5u64, 7, 11, 13] {
            for i in 1..p as i64 - 1 {
                for k in 1..p as i64 - 1 {
                    if i + k == p as i64 - 1 {
                        continue;
                    }
                    let direct = (0..p).fold(0u64, |acc, t| {
                        let v = pow_mod(t, i as u64, p) * pow_mod((p + 1 - t) % p, k as u64, p) % p;
                        (acc + v) % p
                    });
                    let j_value = (p - direct) % p;
                    let r = fc_check(p, i, k).unwrap();
                    assert_eq!(r.j_image, j_value);
                    assert!(r.pass);
                }
            }
        }
    }

    #[test]
    fn quartic_examples() {
        for p in [5u64, 13, 17, 29] {
            let r = quartic_demo(p).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let r = quartic_demo(13).unwrap();
        assert_eq!(r.half_binomial, 10);
        assert!(r.a == "3" || r.a == "-3");
        assert!(quartic_demo(7).is_err());
    }

    #[test]
    fn binomial_examples() {
        let r = binomial_congruence(13).unwrap();
        assert_eq!((r.a, r.b, r.binomial_mod, r.two_a_mod), (3, 1, 7, 6));
        assert_eq!(r.sign, -1);
        let r = binomial_congruence(29).unwrap();
        assert_eq!((r.a, r.binomial.as_str(), r.binomial_mod), (5, "3432", 10));
        assert!(binomial_congruence(5).unwrap().pass);
        for p in crate::exact::integer::primes_below(400).into_iter().filter(|p| p % 4 == 1) {
            assert!(binomial_congruence(p).unwrap().pass);
        }
    }

    #[test]
    fn stickelberger_examples() {
        let r = stickelberger_check(5, 11, 3).unwrap();
        let mus: Vec<u32> = r.rows.iter().map(|x| x.mu_kummer).collect();
        assert_eq!(mus, vec![1, 1, 0, 0]);
        assert_eq!(r.xi, 4);
        assert!(r.pass);
        let r = stickelberger_check(3, 7, 3).unwrap();
        assert_eq!(r.norm, "7");
        assert!(r.pass);
        let r = stickelberger_check(7, 29, 3).unwrap();
        assert_eq!(r.total, 3);
        assert!(r.pass);
        assert!(stickelberger_check(5, 13, 3).is_err());
    }
}
