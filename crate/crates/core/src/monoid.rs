//! Hilbert monoids `M = {a >= 1 : a mod m in H}` and the singular monoid
//! `N = {n >= 1 : n = 0, 1, 2 mod 4}`.
//!
//! Membership depends only on residues, so every "does some k exist"
//! question below is settled by running k over one period.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::integer::{divisors, factor_u64, gcd_u64, inv_mod, is_prime, mul_mod, pow_mod};

pub const DEFAULT_ENUM_CAP: u64 = 10_000;

/// A multiplicatively closed set of naturals cut out by residues mod `m`.
pub trait ResidueMonoid {
    fn modulus(&self) -> u64;
    fn has_residue(&self, r: u64) -> bool;
    fn label(&self) -> String;

    fn contains(&self, a: u64) -> bool {
        a >= 1 && self.has_residue(a % self.modulus())
    }

    fn require(&self, a: u64) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::NotInMonoid { element: format!("{a} in {}", self.label()) })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertMonoid {
    m: u64,
    h: BTreeSet<u64>,
}

impl HilbertMonoid {
    /// `residues` must contain 1, be closed under multiplication mod `m` and
    /// consist of units.
    pub fn new(m: u64, residues: &[u64]) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("modulus {m} must exceed 1")));
        }
        let h: BTreeSet<u64> = residues.iter().map(|r| r % m).collect();
        if let Some(&r) = h.iter().find(|&&r| gcd_u64(r, m) != 1) {
            return Err(Error::InvalidArgument(format!("{r} is not a unit mod {m}")));
        }
        if !h.contains(&1) {
            return Err(Error::InvalidArgument("subgroup must contain 1".into()));
        }
        for &a in &h {
            for &b in &h {
                if !h.contains(&mul_mod(a, b, m)) {
                    return Err(Error::InvalidArgument(format!(
                        "{a} * {b} leaves the residue set mod {m}"
                    )));
                }
            }
        }
        Ok(HilbertMonoid { m, h })
    }

    /// `H = {1}`.
    pub fn trivial(m: u64) -> Result<Self> {
        Self::new(m, &[1])
    }

    /// `H = G`.
    pub fn full(m: u64) -> Result<Self> {
        Self::new(m, &units(m))
    }

    pub fn subgroup(&self) -> &BTreeSet<u64> {
        &self.h
    }

    fn theory_prime(&self, p: u64) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if self.m.is_multiple_of(p) {
            return Err(Error::OutsideTheory(format!("prime {p} divides m = {}", self.m)));
        }
        Ok(())
    }

    pub fn ideal_factorization(&self, a: u64) -> Result<Vec<(MonoidIdealPrime, u32)>> {
        self.require(a)?;
        if gcd_u64(a, self.m) != 1 {
            return Err(Error::OutsideTheory(format!("{a} shares a factor with m = {}", self.m)));
        }
        let out: Vec<_> = factor_u64(a)
            .into_iter()
            .map(|(p, e)| (self.ideal_prime(p).expect("p is coprime to m"), e))
            .collect();
        let class = out
            .iter()
            .fold(1, |acc, (q, e)| mul_mod(acc, pow_mod(q.class, *e as u64, self.m), self.m));
        if !self.h.contains(&class) {
            return Err(Error::CheckFailed(format!("classes of {a} multiply to {class}")));
        }
        Ok(out)
    }

    pub fn ideal_prime(&self, p: u64) -> Result<MonoidIdealPrime> {
        self.theory_prime(p)?;
        let class = p % self.m;
        Ok(MonoidIdealPrime { m: self.m, p, class, principal: self.h.contains(&class) })
    }

    pub fn defined_at(&self, p: u64, a: u64, b: u64) -> Result<DefinedAt> {
        self.theory_prime(p)?;
        defined_at(self, p, a, b)
    }

    /// `p` itself when principal, otherwise `p r` with the least `r`
    /// prime to `p` and `r = p^{-1} mod m`.
    pub fn uniformizer(&self, p: u64) -> Result<u64> {
        let prime = self.ideal_prime(p)?;
        if prime.principal {
            return Ok(p);
        }
        let target = inv_mod(prime.class, self.m).expect("p is a unit mod m");
        let r = (0..)
            .map(|j| target + j * self.m)
            .find(|&r| r >= 1 && r % p != 0)
            .expect("some lift avoids p");
        Ok(p * r)
    }

    /// Largest `mu` with the map at `p` defined at `a / q^mu`, for the
    /// default uniformizer or a supplied `q`.
    pub fn multiplicity(&self, p: u64, a: u64, q: Option<u64>) -> Result<u32> {
        self.theory_prime(p)?;
        self.require(a)?;
        let q = match q {
            Some(q) => {
                self.require(q)?;
                if q % p != 0 || (q / p).is_multiple_of(p) {
                    return Err(Error::InvalidArgument(format!("{q} is not p r with p = {p} not dividing r")));
                }
                q
            }
            None => self.uniformizer(p)?,
        };
        let q_factors = factor_u64(q);
        let mut mu = 0u32;
        loop {
            let next = mu + 1;
            // a / q^next in lowest terms, kept as residues mod m p
            let modulus = self.m * p;
            let mut a0 = a;
            let mut b0 = 1u64;
            for &(l, e) in &q_factors {
                let want = e as u64 * next as u64;
                let mut cancel = 0u64;
                while cancel < want && a0.is_multiple_of(l) {
                    a0 /= l;
                    cancel += 1;
                }
                b0 = mul_mod(b0, pow_mod(l, want - cancel, modulus), modulus);
            }
            if decide(self, p, a0 % modulus, b0).is_none() {
                return Ok(mu);
            }
            mu = next;
        }
    }

    pub fn square_test(&self, a: u64) -> Result<SquareTest> {
        self.require(a)?;
        let root = exact_sqrt_u64(a);
        let square_in_m = root.is_some_and(|s| self.contains(s));
        let factors = self.ideal_factorization(a)?;
        let square_in_qm = factors.iter().all(|(_, e)| e % 2 == 0) && {
            let s = factors
                .iter()
                .fold(1u64, |acc, (q, e)| mul_mod(acc, pow_mod(q.class, *e as u64 / 2, self.m), self.m));
            self.h.contains(&s)
        };
        Ok(SquareTest { a, root, square_in_m, square_in_qm, witness: quotient_root(self, a) })
    }

    pub fn class_group(&self) -> Result<ClassGroup> {
        class_group(self)
    }
}

impl ResidueMonoid for HilbertMonoid {
    fn modulus(&self) -> u64 {
        self.m
    }

    fn has_residue(&self, r: u64) -> bool {
        self.h.contains(&r)
    }

    fn label(&self) -> String {
        let h: Vec<String> = self.h.iter().map(u64::to_string).collect();
        format!("M(m = {}, H = {{{}}})", self.m, h.join(", "))
    }
}

/// `N = {1, 2, 4, 5, 6, 8, 9, ...}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SingularMonoid;

impl ResidueMonoid for SingularMonoid {
    fn modulus(&self) -> u64 {
        4
    }

    fn has_residue(&self, r: u64) -> bool {
        r != 3
    }

    fn label(&self) -> String {
        "N".into()
    }
}

impl SingularMonoid {
    pub fn defined_at(&self, p: u64, a: u64, b: u64) -> Result<DefinedAt> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        defined_at(self, p, a, b)
    }

    pub fn square_test(&self, a: u64) -> Result<SquareTest> {
        self.require(a)?;
        let root = exact_sqrt_u64(a);
        let witness = quotient_root(self, a);
        Ok(SquareTest {
            a,
            root,
            square_in_m: root.is_some_and(|s| self.contains(s)),
            square_in_qm: witness.is_some(),
            witness,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidIdealPrime {
    pub m: u64,
    pub p: u64,
    pub class: u64,
    pub principal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefinedAt {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub a0: u64,
    pub b0: u64,
    pub defined: bool,
    /// `a/b mod p` when defined.
    pub value: Option<u64>,
    /// A `k` with `a0 k, b0 k` in the monoid and `p` not dividing `b0 k`.
    pub witness: Option<u64>,
    /// The map sends `a/b` to infinity: it is defined at `b/a` with value 0.
    pub infinite: bool,
}

impl DefinedAt {
    pub fn display_value(&self) -> String {
        match (self.value, self.infinite) {
            (Some(v), _) => v.to_string(),
            (None, true) => "inf".into(),
            (None, false) => "undefined".into(),
        }
    }
}

/// Searches `k` mod `m p`; `a0`, `b0` may be given as residues mod `m p`.
fn decide<M: ResidueMonoid + ?Sized>(monoid: &M, p: u64, a0: u64, b0: u64) -> Option<(u64, u64)> {
    let m = monoid.modulus();
    let period = m * p;
    (1..=period).find_map(|k| {
        let ak = mul_mod(a0, k, period);
        let bk = mul_mod(b0, k, period);
        (monoid.has_residue(ak % m) && monoid.has_residue(bk % m) && !bk.is_multiple_of(p)).then(|| {
            let v = mul_mod(a0 % p, inv_mod(b0 % p, p).expect("b0 is a unit mod p"), p);
            (k, v)
        })
    })
}

fn defined_at<M: ResidueMonoid + ?Sized>(monoid: &M, p: u64, a: u64, b: u64) -> Result<DefinedAt> {
    monoid.require(a)?;
    monoid.require(b)?;
    let g = gcd_u64(a, b);
    let (a0, b0) = (a / g, b / g);
    let hit = decide(monoid, p, a0, b0);
    let infinite = hit.is_none() && decide(monoid, p, b0, a0).is_some_and(|(_, v)| v == 0);
    Ok(DefinedAt {
        p,
        a,
        b,
        a0,
        b0,
        defined: hit.is_some(),
        value: hit.map(|(_, v)| v),
        witness: hit.map(|(k, _)| k),
        infinite,
    })
}

fn units(m: u64) -> Vec<u64> {
    (1..m.max(2)).filter(|&r| gcd_u64(r, m) == 1).collect()
}

fn exact_sqrt_u64(a: u64) -> Option<u64> {
    let s = (a as f64).sqrt() as u64;
    (s.saturating_sub(1)..=s + 1).find(|&r| r.checked_mul(r) == Some(a))
}

/// `a = (x/y)^2` with `x, y` in the monoid, as `(x, y)`.
fn quotient_root<M: ResidueMonoid + ?Sized>(monoid: &M, a: u64) -> Option<(u64, u64)> {
    let s = exact_sqrt_u64(a)?;
    (1..=monoid.modulus())
        .find(|&y| monoid.contains(y) && monoid.contains(s * y))
        .map(|y| (s * y, y))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareTest {
    pub a: u64,
    pub root: Option<u64>,
    pub square_in_m: bool,
    pub square_in_qm: bool,
    /// `(x, y)` in the monoid with `a = (x/y)^2`.
    pub witness: Option<(u64, u64)>,
}

/// An element other than 1 with no factorization into two non-units.
pub fn is_irreducible<M: ResidueMonoid + ?Sized>(monoid: &M, a: u64) -> bool {
    a > 1
        && monoid.contains(a)
        && !divisors(a)
            .into_iter()
            .any(|d| 1 < d && d < a && monoid.contains(d) && monoid.contains(a / d))
}

/// One (`all = false`) or every factorization of `a` into irreducibles,
/// each listed in nondecreasing order. `cap` bounds the search nodes.
pub fn factor_into_irreducibles<M: ResidueMonoid + ?Sized>(
    monoid: &M,
    a: u64,
    all: bool,
    cap: u64,
) -> Result<Vec<Vec<u64>>> {
    monoid.require(a)?;
    let irreducibles: Vec<u64> = divisors(a).into_iter().filter(|&d| is_irreducible(monoid, d)).collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    let mut nodes = 0u64;
    walk(monoid, a, 0, &irreducibles, &mut stack, &mut out, all, &mut nodes, cap)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn walk<M: ResidueMonoid + ?Sized>(
    monoid: &M,
    n: u64,
    from: usize,
    irr: &[u64],
    stack: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
    all: bool,
    nodes: &mut u64,
    cap: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > cap {
        return Err(Error::CapExceeded(cap));
    }
    if n == 1 {
        out.push(stack.clone());
        return Ok(());
    }
    for (idx, &d) in irr.iter().enumerate().skip(from) {
        if d > n {
            break;
        }
        if n.is_multiple_of(d) && monoid.contains(n / d) {
            stack.push(d);
            walk(monoid, n / d, idx, irr, stack, out, all, nodes, cap)?;
            stack.pop();
            if !all && !out.is_empty() {
                break;
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassGroup {
    pub m: u64,
    pub order: u64,
    /// Cosets of `H` in `(Z/m)^x`, ordered by least element.
    pub cosets: Vec<Vec<u64>>,
    /// `table[i][j]` is the index of the product coset.
    pub table: Vec<Vec<usize>>,
    pub invariant_factors: Vec<u64>,
    pub structure: String,
}

fn class_group(monoid: &HilbertMonoid) -> Result<ClassGroup> {
    let m = monoid.m;
    let mut coset_of = BTreeMap::new();
    let mut cosets: Vec<Vec<u64>> = Vec::new();
    for g in units(m) {
        if coset_of.contains_key(&g) {
            continue;
        }
        let mut c: Vec<u64> = monoid.h.iter().map(|&h| mul_mod(g, h, m)).collect();
        c.sort_unstable();
        for &x in &c {
            coset_of.insert(x, cosets.len());
        }
        cosets.push(c);
    }
    let n = cosets.len();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let target = coset_of[&mul_mod(cosets[i][0], cosets[j][0], m)];
            // every pair of representatives must land in the same coset
            for &x in &cosets[i] {
                for &y in &cosets[j] {
                    if coset_of[&mul_mod(x, y, m)] != target {
                        return Err(Error::CheckFailed(format!("coset product {i} * {j} is not well defined")));
                    }
                }
            }
            table[i][j] = target;
        }
    }
    let invariant_factors = invariant_factors(&table);
    let structure = if invariant_factors.is_empty() {
        "trivial".to_string()
    } else {
        invariant_factors.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join(" x ")
    };
    Ok(ClassGroup { m, order: n as u64, cosets, table, invariant_factors, structure })
}

/// Invariant factors `d_1 | d_2 | ...` of a finite abelian group given by
/// its table, with identity at index 0.
fn invariant_factors(table: &[Vec<usize>]) -> Vec<u64> {
    let n = table.len() as u64;
    let power = |x: usize, e: u64| (0..e).fold(0usize, |acc, _| table[acc][x]);
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for (l, _) in factor_u64(n) {
        // ranks[j-1] = #{cyclic factors of order >= l^j}
        let mut exps = Vec::new();
        let mut prev_log = 0u32;
        let mut lj = 1u64;
        loop {
            lj *= l;
            let count = (0..table.len()).filter(|&x| power(x, lj) == 0).count() as u64;
            let log = count.ilog(l);
            if log == prev_log {
                break;
            }
            exps.push(log - prev_log);
            prev_log = log;
        }
        // exponents of the l-primary cyclic factors, largest first
        let k = exps[0] as usize;
        let col: Vec<u64> =
            (0..k).map(|i| l.pow(exps.iter().filter(|&&r| r as usize > i).count() as u32)).collect();
        columns.push(col);
    }
    let width = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..width)
        .map(|i| columns.iter().map(|c| c.get(i).copied().unwrap_or(1)).product())
        .collect();
    out.reverse();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularReport {
    pub six_over_two: DefinedAt,
    pub two_over_six: DefinedAt,
    pub nine: SquareTest,
    pub pass: bool,
}

/// The map at 2 on `N` is defined at neither `6/2` nor `2/6`, and `9` is a
/// square in the quotient monoid but not in `N`.
pub fn singular_demo() -> Result<SingularReport> {
    let n = SingularMonoid;
    let six_over_two = n.defined_at(2, 6, 2)?;
    let two_over_six = n.defined_at(2, 2, 6)?;
    let nine = n.square_test(9)?;
    let pass = !six_over_two.defined
        && !two_over_six.defined
        && !nine.square_in_m
        && nine.square_in_qm
        && nine.witness == Some((6, 2));
    Ok(SingularReport { six_over_two, two_over_six, nine, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m4() -> HilbertMonoid {
        HilbertMonoid::trivial(4).unwrap()
    }

    #[test]
    fn construction() {
        assert!(HilbertMonoid::new(4, &[1, 3]).is_ok());
        assert!(HilbertMonoid::new(8, &[1, 3]).is_ok());
        assert!(HilbertMonoid::new(8, &[1, 3, 5]).is_err());
        assert!(HilbertMonoid::new(4, &[3]).is_err());
        assert!(HilbertMonoid::new(4, &[1, 2]).is_err());
        assert!(HilbertMonoid::new(1, &[0]).is_err());
        assert_eq!(HilbertMonoid::full(5).unwrap().subgroup().len(), 4);
        let m = m4();
        assert!(m.contains(21) && m.contains(9) && !m.contains(3) && !m.contains(0));
    }

    #[test]
    fn irreducible_factorizations() {
        let m = m4();
        assert_eq!(factor_into_irreducibles(&m, 441, true, DEFAULT_ENUM_CAP).unwrap(), vec![
            vec![9, 49],
            vec![21, 21]
        ]);
        assert_eq!(factor_into_irreducibles(&m, 9, true, DEFAULT_ENUM_CAP).unwrap(), vec![vec![9]]);
        assert_eq!(factor_into_irreducibles(&m, 1, true, DEFAULT_ENUM_CAP).unwrap(), vec![Vec::<u64>::new()]);
        assert_eq!(factor_into_irreducibles(&m, 441, false, DEFAULT_ENUM_CAP).unwrap().len(), 1);
        assert!(matches!(factor_into_irreducibles(&m, 3, true, DEFAULT_ENUM_CAP), Err(Error::NotInMonoid { .. })));
        assert_eq!(factor_into_irreducibles(&m, 441, true, 2), Err(Error::CapExceeded(2)));
        assert!(is_irreducible(&m, 21) && is_irreducible(&m, 9) && !is_irreducible(&m, 441));
    }

    #[test]
    fn ideal_factorization_examples() {
        let m = m4();
        let f = m.ideal_factorization(441).unwrap();
        assert_eq!(f.iter().map(|(q, e)| (q.p, *e)).collect::<Vec<_>>(), vec![(3, 2), (7, 2)]);
        assert!(f.iter().all(|(q, _)| !q.principal));
        let f = m.ideal_factorization(5).unwrap();
        assert!(f[0].0.principal && f[0].1 == 1);
        assert!(m.ideal_factorization(1).unwrap().is_empty());
        let m6 = HilbertMonoid::trivial(6).unwrap();
        assert!(matches!(m6.ideal_factorization(1).unwrap().len(), 0));
        let m10 = HilbertMonoid::new(10, &[1, 9]).unwrap();
        assert!(m10.ideal_factorization(21).is_ok());
        assert!(matches!(HilbertMonoid::trivial(5).unwrap().ideal_prime(5), Err(Error::OutsideTheory(_))));
    }

    #[test]
    fn defined_at_examples() {
        let m = m4();
        let d = m.defined_at(3, 9, 21).unwrap();
        assert!(d.defined && d.value == Some(0));
        assert_eq!((d.a0, d.b0), (3, 7));
        let d = m.defined_at(3, 9, 441).unwrap();
        assert!(d.defined && d.value == Some(1) && !d.infinite);
        assert_eq!((d.a0, d.b0), (1, 49));
        let d = m.defined_at(3, 9, 9261).unwrap();
        assert!(!d.defined && d.infinite && d.display_value() == "inf");
        assert!(m.defined_at(3, 3, 21).is_err());
        assert!(m.defined_at(2, 9, 21).is_err());
    }

    #[test]
    fn uniformizers() {
        let m = m4();
        assert_eq!(m.uniformizer(3).unwrap(), 21);
        assert_eq!(m.uniformizer(5).unwrap(), 5);
        assert_eq!(m.uniformizer(7).unwrap(), 21);
        assert!(m.multiplicity(3, 81, Some(9)).is_err());
        let m8 = HilbertMonoid::trivial(8).unwrap();
        assert_eq!(m8.uniformizer(3).unwrap(), 33);
    }

    #[test]
    fn multiplicity_examples() {
        let m = m4();
        assert_eq!(m.multiplicity(3, 9, None).unwrap(), 2);
        assert_eq!(m.multiplicity(3, 5, None).unwrap(), 0);
        assert_eq!(m.multiplicity(7, 441, None).unwrap(), 2);
        assert_eq!(m.multiplicity(3, 3u64.pow(30), None).unwrap(), 30);
    }

    #[test]
    fn multiplicity_uniformizer_independent() {
        let m = m4();
        for a in (1..=1000).filter(|&a| m.contains(a)) {
            let v = crate::exact::integer::valuation_int(&a.into(), 3);
            for q in [21, 33, 57] {
                assert_eq!(m.multiplicity(3, a, Some(q)).unwrap(), v, "a {a} q {q}");
            }
        }
    }

    #[test]
    fn unique_ideal_factorization() {
        for m in [m4(), HilbertMonoid::new(10, &[1, 9]).unwrap(), HilbertMonoid::trivial(5).unwrap()] {
            for a in (1..=10_000).filter(|&a| m.contains(a)) {
                let f = m.ideal_factorization(a).unwrap();
                let got: Vec<(u64, u32)> = f.iter().map(|(q, e)| (q.p, *e)).collect();
                assert_eq!(got, factor_u64(a));
            }
        }
    }

    #[test]
    fn class_groups() {
        let c = m4().class_group().unwrap();
        assert_eq!((c.order, c.structure.as_str()), (2, "C2"));
        assert_eq!(c.cosets, vec![vec![1], vec![3]]);
        let c = HilbertMonoid::full(5).unwrap().class_group().unwrap();
        assert_eq!((c.order, c.structure.as_str()), (1, "trivial"));
        let c = HilbertMonoid::trivial(8).unwrap().class_group().unwrap();
        assert_eq!(c.invariant_factors, vec![2, 2]);
        assert!(c.table.iter().enumerate().all(|(i, row)| row[i] == 0));
        // (Z/15)^x = C2 x C4, (Z/13)^x = C12, (Z/24)^x = C2^3
        assert_eq!(HilbertMonoid::trivial(15).unwrap().class_group().unwrap().invariant_factors, vec![2, 4]);
        assert_eq!(HilbertMonoid::trivial(13).unwrap().class_group().unwrap().invariant_factors, vec![12]);
        assert_eq!(HilbertMonoid::trivial(24).unwrap().class_group().unwrap().invariant_factors, vec![2, 2, 2]);
        let c = HilbertMonoid::new(13, &[1, 3, 9]).unwrap().class_group().unwrap();
        assert_eq!((c.order, c.invariant_factors.clone()), (4, vec![4]));
    }

    #[test]
    fn square_tests() {
        let m = m4();
        let s = m.square_test(25).unwrap();
        assert!(s.square_in_m && s.square_in_qm);
        let s = m.square_test(9).unwrap();
        assert!(!s.square_in_m && !s.square_in_qm && s.witness.is_none());
        let s = m.square_test(441).unwrap();
        assert!(s.square_in_m && s.square_in_qm);
        for m in [m4(), HilbertMonoid::trivial(8).unwrap(), HilbertMonoid::new(13, &[1, 3, 9]).unwrap()] {
            for a in (1..=10_000).filter(|&a| m.contains(a)) {
                let s = m.square_test(a).unwrap();
                assert_eq!(s.square_in_m, s.square_in_qm, "a {a}");
                assert_eq!(s.square_in_qm, s.witness.is_some(), "a {a}");
            }
        }
    }

    #[test]
    fn singular() {
        let r = singular_demo().unwrap();
        assert!(r.pass, "{r:?}");
        assert!(!r.six_over_two.infinite && !r.two_over_six.infinite);
        let n = SingularMonoid;
        assert!([1, 2, 4, 5, 6, 8, 9].iter().all(|&a| n.contains(a)));
        assert!(!n.contains(3) && !n.contains(7));
        assert!(is_irreducible(&n, 2) && is_irreducible(&n, 6) && !is_irreducible(&n, 4));
    }

    #[test]
    fn singular_dichotomy_failures() {
        let n = SingularMonoid;
        let elems: Vec<u64> = (1..=200).filter(|&a| n.contains(a)).collect();
        for &a in &elems {
            for &b in &elems {
                let ab = n.defined_at(2, a, b).unwrap();
                let ba = n.defined_at(2, b, a).unwrap();
                let both_fail = !ab.defined && !ba.defined;
                assert_eq!(both_fail, ab.a0 * ab.b0 % 4 == 3, "{a}/{b}");
            }
        }
    }

    #[test]
    fn hilbert_dichotomy() {
        for m in [m4(), HilbertMonoid::trivial(8).unwrap(), HilbertMonoid::new(10, &[1, 9]).unwrap()] {
            let elems: Vec<u64> = (1..=500).filter(|&a| m.contains(a)).collect();
            for p in [3u64, 7, 11].into_iter().filter(|p| m.modulus() % p != 0) {
                for &a in &elems {
                    for &b in elems.iter().filter(|&&b| gcd_u64(a, b) == 1) {
                        let ab = m.defined_at(p, a, b).unwrap().defined;
                        assert!(ab || m.defined_at(p, b, a).unwrap().defined, "{a}/{b} at {p}");
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

        #[test]
        fn defined_iff_valuation_nonnegative(x in 0u64..1250, y in 0u64..1250, p in prop::sample::select(vec![3u64, 5, 7, 11, 13])) {
            let m = HilbertMonoid::trivial(4).unwrap();
            let (a, b) = (4 * x + 1, 4 * y + 1);
            let va = crate::exact::integer::valuation_int(&a.into(), p) as i64;
            let vb = crate::exact::integer::valuation_int(&b.into(), p) as i64;
            let d = m.defined_at(p, a, b).unwrap();
            prop_assert_eq!(d.defined, va >= vb);
            prop_assert_eq!(d.value == Some(0), va > vb);
        }

        #[test]
        fn class_law_well_defined(m in 3u64..40) {
            let full = HilbertMonoid::trivial(m).unwrap().class_group().unwrap();
            prop_assert_eq!(full.order, crate::exact::integer::euler_phi(m));
            prop_assert_eq!(full.invariant_factors.iter().product::<u64>(), full.order);
            prop_assert!(full.invariant_factors.windows(2).all(|w| w[1] % w[0] == 0));
        }
    }
}
