//! Dense univariate polynomials over [`Integer`], lowest degree first.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::integer::Integer;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyInt {
    coeffs: Vec<Integer>,
}

impl PolyInt {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyInt { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        PolyInt { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, Integer::one())
    }

    pub fn monomial(deg: usize, c: Integer) -> Self {
        let mut coeffs = vec![Integer::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(1, Integer::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Integer::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Integer::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = std::mem::take(&mut rem[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..dd {
                rem[k - dd + j] -= &c * &divisor.coeffs[j];
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        self.coeffs
            .iter()
            .rev()
            .fold(Integer::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for PolyInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().cloned(), "X")
    }
}

/// Render a coefficient sequence (lowest degree first) as `c_n*S^n + ... + c_0`,
/// highest degree first, using implicit multiplication (`3X^2`).
pub(crate) fn write_poly(
    f: &mut impl fmt::Write,
    coeffs: impl DoubleEndedIterator<Item = Integer> + ExactSizeIterator,
    sym: &str,
) -> fmt::Result {
    let terms: Vec<(usize, Integer)> = coeffs
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (n, (deg, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (n, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if *deg == 0 {
            write!(f, "{mag}")?;
            continue;
        }
        if !mag.is_one() {
            write!(f, "{mag}")?;
        }
        write!(f, "{sym}")?;
        if *deg > 1 {
            write!(f, "^{deg}")?;
        }
    }
    Ok(())
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `X^n - 1` by
/// `Phi_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u64) -> PolyInt {
    assert!(n >= 1, "cyclotomic_polynomial needs n >= 1");
    let mut cache: Vec<(u64, PolyInt)> = Vec::new();
    for d in super::integer::divisors(n) {
        let mut acc = PolyInt::monomial(d as usize, Integer::one()).sub(&PolyInt::one());
        for (e, phi_e) in &cache {
            if d % e == 0 {
                let (q, r) = acc.div_rem_monic(phi_e);
                debug_assert!(r.is_zero());
                acc = q;
            }
        }
        cache.push((d, acc));
    }
    cache.pop().expect("n has at least one divisor").1
}

/// Resultant of two nonzero polynomials as the determinant of their
/// Sylvester matrix, evaluated with fraction-free (Bareiss) elimination.
pub fn resultant(f: &PolyInt, g: &PolyInt) -> Integer {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Integer::zero(),
    };
    if m == 0 && n == 0 {
        return Integer::one();
    }
    let size = m + n;
    let mut mat = vec![vec![Integer::zero(); size]; size];
    // rows 0..n: shifts of f, rows n..n+m: shifts of g; highest degree first
    for r in 0..n {
        for i in 0..=m {
            mat[r][r + i] = f.coeffs[m - i].clone();
        }
    }
    for r in 0..m {
        for i in 0..=n {
            mat[n + r][r + i] = g.coeffs[n - i].clone();
        }
    }
    bareiss_determinant(mat)
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn bareiss_determinant(mut a: Vec<Vec<Integer>>) -> Integer {
    let n = a.len();
    if n == 0 {
        return Integer::one();
    }
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Integer::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::integer::{euler_phi, int};

    /// Roots-of-unity oracle: Phi_n is the product of (X - w) over primitive
    /// n-th roots w, so Phi_n(X) * prod_{d | n, d < n} Phi_d(X) = X^n - 1.
    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic_polynomial(1), PolyInt::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(5), PolyInt::from_i64(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(12), PolyInt::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(4), PolyInt::from_i64(&[1, 0, 1]));
        for n in 1..=60u64 {
            let phi = cyclotomic_polynomial(n);
            assert_eq!(phi.degree(), Some(euler_phi(n) as usize));
            assert!(phi.is_monic());
            let mut prod = PolyInt::one();
            for d in crate::exact::integer::divisors(n) {
                prod = prod.mul(&cyclotomic_polynomial(d));
            }
            let xn1 = PolyInt::monomial(n as usize, int(1)).sub(&PolyInt::one());
            assert_eq!(prod, xn1, "n = {n}");
        }
    }

    #[test]
    fn division_and_eval() {
        let f = PolyInt::from_i64(&[-1, 0, 0, 0, 0, 1]);
        let (q, r) = f.div_rem_monic(&PolyInt::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, cyclotomic_polynomial(5));
        assert_eq!(cyclotomic_polynomial(5).eval(&int(-2)), int(11));
        assert_eq!(cyclotomic_polynomial(5).eval(&int(3)), int(121));
    }

    #[test]
    fn resultant_matches_root_products() {
        // Res(X - a, g) = g(a)
        let g = PolyInt::from_i64(&[3, -2, 1, 5]);
        assert_eq!(resultant(&PolyInt::from_i64(&[-4, 1]), &g), g.eval(&int(4)));
        // Res(Phi_5, 2 + X) = prod (2 + w) = Phi_5(-2) = 11
        assert_eq!(
            resultant(&cyclotomic_polynomial(5), &PolyInt::from_i64(&[2, 1])),
            int(11)
        );
        assert_eq!(
            resultant(&cyclotomic_polynomial(5), &PolyInt::from_i64(&[1, -1])),
            int(5)
        );
        assert_eq!(resultant(&cyclotomic_polynomial(5), &PolyInt::from_i64(&[7])), int(2401));
    }

    #[test]
    fn display() {
        assert_eq!(PolyInt::from_i64(&[1, -1, 0, 2]).to_string(), "2X^3 - X + 1");
        assert_eq!(PolyInt::zero().to_string(), "0");
        assert_eq!(PolyInt::from_i64(&[0, -1]).to_string(), "-X");
    }
}
