//! Quadratic orders `Z[t]` with `t^2 + u t + v = 0`: maps onto finite
//! fields, the colon-ideal test for where a map is defined, conductors and
//! Gauss's Lemma.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::finite_field::{FFElement, FiniteField};
use crate::exact::integer::{exact_sqrt, factor_u64, int, is_prime, Integer};
use crate::exact::lattice::{IntLattice, MultTable};
use crate::exact::poly_mod::{factor_mod_p, PolyModP};

#[derive(Debug)]
pub struct QuadOrder {
    u: i64,
    v: i64,
    name: String,
    table: MultTable,
}

impl PartialEq for QuadOrder {
    fn eq(&self, o: &Self) -> bool {
        self.u == o.u && self.v == o.v
    }
}

impl Eq for QuadOrder {}

impl QuadOrder {
    pub fn new(u: i64, v: i64) -> Result<Arc<Self>> {
        Self::named(u, v, &format!("Z[t], t^2 + {u}t + {v} = 0"))
    }

    pub fn named(u: i64, v: i64, name: &str) -> Result<Arc<Self>> {
        let d = int(u) * int(u) - int(4) * int(v);
        if exact_sqrt(&d).is_some() {
            return Err(Error::InvalidArgument(format!(
                "discriminant {d} of T^2 + {u}T + {v} is a square"
            )));
        }
        let e = |a: i64, b: i64| vec![int(a), int(b)];
        let table = MultTable::new(vec![vec![e(1, 0), e(0, 1)], vec![e(0, 1), e(-v, -u)]])?;
        Ok(Arc::new(QuadOrder { u, v, name: name.to_string(), table }))
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    pub fn v(&self) -> i64 {
        self.v
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &MultTable {
        &self.table
    }

    /// `u^2 - 4v`.
    pub fn discriminant(&self) -> Integer {
        int(self.u) * int(self.u) - int(4) * int(self.v)
    }

    /// Discriminant of the maximal order of the fraction field.
    pub fn field_discriminant(&self) -> Integer {
        let d = self.discriminant();
        let mag = u64::try_from(d.abs()).expect("catalog discriminants fit in u64");
        let core: u64 = factor_u64(mag).into_iter().filter(|(_, e)| e % 2 == 1).map(|(p, _)| p).product();
        let d0 = if d.is_negative() { -int(core as i64) } else { int(core as i64) };
        if d0.mod_floor(&int(4)) == Integer::one() {
            d0
        } else {
            d0 * 4
        }
    }

    /// Index in the maximal order, from `disc = f^2 d_K`.
    pub fn conductor(&self) -> Integer {
        let q = self.discriminant() / self.field_discriminant();
        exact_sqrt(&q).expect("disc / d_K is a square")
    }

    pub fn is_integrally_closed(&self) -> bool {
        self.conductor().is_one()
    }

    /// `w_K = (d_K + sqrt(d_K))/2` in coordinates over `{1, t}`. Integral,
    /// and outside the order exactly when the conductor exceeds 1.
    pub fn omega(self: &Arc<Self>) -> QuadFieldElt {
        let dk = self.field_discriminant();
        let f = self.conductor();
        let two = int(2);
        // sqrt(d_K) = (2t + u)/f
        let x = BigRational::new(dk, two.clone()) + BigRational::new(int(self.u), &two * &f);
        let y = BigRational::new(Integer::one(), f);
        QuadFieldElt { order: Arc::clone(self), x, y }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElt {
    order: Arc<QuadOrder>,
    x: Integer,
    y: Integer,
}

fn write_pair<T: fmt::Display + Signed + Zero + One>(f: &mut fmt::Formatter<'_>, x: &T, y: &T) -> fmt::Result {
    if y.is_zero() {
        return write!(f, "{x}");
    }
    if !x.is_zero() {
        write!(f, "{x} {} ", if y.is_negative() { '-' } else { '+' })?;
    } else if y.is_negative() {
        write!(f, "-")?;
    }
    let mag = y.abs();
    if mag.is_one() {
        write!(f, "t")
    } else {
        write!(f, "{mag}t")
    }
}

impl QuadElt {
    pub fn new(order: &Arc<QuadOrder>, x: Integer, y: Integer) -> Self {
        QuadElt { order: Arc::clone(order), x, y }
    }

    pub fn from_i64(order: &Arc<QuadOrder>, x: i64, y: i64) -> Self {
        Self::new(order, int(x), int(y))
    }

    pub fn order(&self) -> &Arc<QuadOrder> {
        &self.order
    }

    pub fn x(&self) -> &Integer {
        &self.x
    }

    pub fn y(&self) -> &Integer {
        &self.y
    }

    pub fn coords(&self) -> [Integer; 2] {
        [self.x.clone(), self.y.clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.order, &self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.order, &self.x - &o.x, &self.y - &o.y)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.order, -&self.x, -&self.y)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [x, y] = <[Integer; 2]>::try_from(self.order.table.mul(&self.coords(), &o.coords())).expect("dimension 2");
        Self::new(&self.order, x, y)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::from_i64(&self.order, 1, 0), |acc, _| acc.mul(self))
    }

    /// `x^2 - u x y + v y^2`.
    pub fn norm(&self) -> Integer {
        let (u, v) = (int(self.order.u), int(self.order.v));
        &self.x * &self.x - u * &self.x * &self.y + v * &self.y * &self.y
    }

    /// `2x - u y`.
    pub fn trace(&self) -> Integer {
        int(2) * &self.x - int(self.order.u) * &self.y
    }

    pub fn to_field(&self) -> QuadFieldElt {
        QuadFieldElt {
            order: Arc::clone(&self.order),
            x: BigRational::from_integer(self.x.clone()),
            y: BigRational::from_integer(self.y.clone()),
        }
    }
}

impl fmt::Display for QuadElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pair(f, &self.x, &self.y)
    }
}

/// An element `x + y t` of the fraction field, `x, y` rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadFieldElt {
    order: Arc<QuadOrder>,
    pub x: BigRational,
    pub y: BigRational,
}

impl QuadFieldElt {
    fn from_parts(order: &Arc<QuadOrder>, x: BigRational, y: BigRational) -> Self {
        QuadFieldElt { order: Arc::clone(order), x, y }
    }

    /// The element as a member of the order, when its coordinates are integers.
    pub fn as_order_elt(&self) -> Option<QuadElt> {
        (self.x.is_integer() && self.y.is_integer())
            .then(|| QuadElt::new(&self.order, self.x.to_integer(), self.y.to_integer()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (u, v) = (BigRational::from_integer(int(self.order.u)), BigRational::from_integer(int(self.order.v)));
        let yy = &self.y * &o.y;
        let x = &self.x * &o.x - &v * &yy;
        let y = &self.x * &o.y + &self.y * &o.x - u * yy;
        Self::from_parts(&self.order, x, y)
    }

    /// Smallest `d > 0` with `d * self` in the order, and that multiple.
    pub fn as_fraction(&self) -> (QuadElt, Integer) {
        let d = self.x.denom().lcm(self.y.denom());
        let dq = BigRational::from_integer(d.clone());
        let num = QuadElt::new(&self.order, (&self.x * &dq).to_integer(), (&self.y * &dq).to_integer());
        (num, d)
    }
}

impl fmt::Display for QuadFieldElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pair(f, &self.x, &self.y)
    }
}

/// A surjection of the order onto `F_p` or `F_{p^2}`, given by the image of `t`.
#[derive(Clone, Debug)]
pub struct QuadJacobiMap {
    order: Arc<QuadOrder>,
    p: u64,
    factor: PolyModP,
    theta: FFElement,
    kernel: IntLattice,
}

impl QuadJacobiMap {
    pub fn order(&self) -> &Arc<QuadOrder> {
        &self.order
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> usize {
        self.factor.degree().expect("factor is nonzero")
    }

    pub fn factor(&self) -> &PolyModP {
        &self.factor
    }

    pub fn theta(&self) -> &FFElement {
        &self.theta
    }

    pub fn kernel(&self) -> &IntLattice {
        &self.kernel
    }

    pub fn apply(&self, x: &QuadElt) -> FFElement {
        self.theta.eval_ints(&x.coords())
    }
}

impl fmt::Display for QuadJacobiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t -> {} (mod {}, f = {})", self.theta, self.factor, self.f())
    }
}

/// One map per root of `T^2 + uT + v` mod `p`, or a single degree-2 map when
/// it is irreducible.
pub fn enumerate_quad_maps(order: &Arc<QuadOrder>, p: u64) -> Result<Vec<QuadJacobiMap>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = PolyModP::from_i64(p, &[order.v, order.u, 1]);
    let mut out = Vec::new();
    for (factor, _) in factor_mod_p(&g)? {
        let (theta, kernel) = if factor.degree() == Some(1) {
            let field = FiniteField::prime(p)?;
            let r = (p - factor.coeff(0)) % p;
            let rr = i64::try_from(r).expect("p fits in i64");
            let pp = i64::try_from(p).expect("p fits in i64");
            (FFElement::from_u64(&field, r), IntLattice::from_i64(&[&[pp, 0], &[0, pp], &[-rr, 1]])?)
        } else {
            let field = FiniteField::new(factor.clone())?;
            (FFElement::generator(&field), IntLattice::scalar(2, &int(p as i64)))
        };
        out.push(QuadJacobiMap { order: Arc::clone(order), p, factor, theta, kernel });
    }
    out.sort_by(|a, b| a.theta.canonical_cmp(&b.theta));
    Ok(out)
}

/// Whether `map` is defined at `num/den`: `(den O : num)` is not inside the kernel.
pub fn quad_defined_at(map: &QuadJacobiMap, num: &QuadElt, den: &QuadElt) -> Result<bool> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let table = map.order.table();
    let den_o = IntLattice::principal(&den.coords(), table)?;
    let colon = den_o.colon(&num.coords(), table)?;
    Ok(!map.kernel.contains(&colon)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct B2Check {
    pub map: String,
    pub num: String,
    pub den: String,
    pub at_x: bool,
    pub at_inv: bool,
    /// Neither `x` nor `1/x` is in the valuation ring of the map.
    pub singular: bool,
}

pub fn b_doubleprime_check(map: &QuadJacobiMap, num: &QuadElt, den: &QuadElt) -> Result<B2Check> {
    if num.is_zero() || den.is_zero() {
        return Err(Error::InvalidArgument("both numerator and denominator must be nonzero".into()));
    }
    let at_x = quad_defined_at(map, num, den)?;
    let at_inv = quad_defined_at(map, den, num)?;
    Ok(B2Check {
        map: map.to_string(),
        num: num.to_string(),
        den: den.to_string(),
        at_x,
        at_inv,
        singular: !at_x && !at_inv,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnomalyReport {
    pub prime: String,
    pub prime_index: String,
    pub square_index: String,
    pub two_prime_index: String,
    pub two_index: String,
    pub square_equals_two_prime: bool,
    pub prime_equals_two: bool,
    /// In `Z[(1 + sqrt(-3))/2]` the only map at 2 has degree 2, so `(2)` is prime.
    pub maximal_two_is_prime: bool,
    pub pass: bool,
}

/// `p = (2, 1 + sqrt(-3))` in `Z[sqrt(-3)]` satisfies `p^2 = 2p` with `p != (2)`.
pub fn prime_square_anomaly() -> Result<AnomalyReport> {
    let order = QuadOrder::named(0, 3, "Z[sqrt(-3)]")?;
    let table = order.table();
    let prime = IntLattice::from_i64(&[&[2, 0], &[0, 2], &[1, 1]])?;
    let square = prime.product(&prime, table)?;
    let two_prime = prime.scale(&int(2))?;
    let two = IntLattice::scalar(2, &int(2));
    let maximal = QuadOrder::named(1, 1, "Z[zeta_3]")?;
    let maps = enumerate_quad_maps(&maximal, 2)?;
    let maximal_two_is_prime = maps.len() == 1 && maps[0].f() == 2;
    let square_equals_two_prime = square == two_prime;
    let prime_equals_two = prime == two;
    Ok(AnomalyReport {
        prime: prime.to_string(),
        prime_index: prime.index().to_string(),
        square_index: square.index().to_string(),
        two_prime_index: two_prime.index().to_string(),
        two_index: two.index().to_string(),
        square_equals_two_prime,
        prime_equals_two,
        maximal_two_is_prime,
        pass: square_equals_two_prime && !prime_equals_two && maximal_two_is_prime,
    })
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    Some(BigRational::new(exact_sqrt(q.numer())?, exact_sqrt(q.denom())?))
}

/// A square root of `x` in the fraction field, if one exists.
pub fn field_sqrt(x: &QuadFieldElt) -> Option<QuadFieldElt> {
    let order = &x.order;
    let half = BigRational::new(int(1), int(2));
    let u = BigRational::from_integer(int(order.u));
    let d = BigRational::from_integer(order.discriminant());
    // x = a + b sqrt(D), sought root X + Y sqrt(D), with t = (-u + sqrt(D))/2
    let a = &x.x - &u * &x.y * &half;
    let b = &x.y * &half;
    let mut candidates = Vec::new();
    if b.is_zero() {
        if let Some(r) = rational_sqrt(&a) {
            candidates.push((r, BigRational::zero()));
        }
        if let Some(r) = rational_sqrt(&(&a / &d)) {
            candidates.push((BigRational::zero(), r));
        }
    } else if let Some(s) = rational_sqrt(&(&a * &a - &d * &b * &b)) {
        for sign in [1, -1] {
            let y2 = (&a + &s * BigRational::from_integer(int(sign))) / (&d * BigRational::from_integer(int(2)));
            if let Some(y) = rational_sqrt(&y2).filter(|y| !y.is_zero()) {
                let xx = &b / (&y * BigRational::from_integer(int(2)));
                candidates.push((xx, y));
            }
        }
    }
    candidates.into_iter().map(|(xx, yy)| {
        // X + Y sqrt(D) = (X + uY) + 2Y t
        QuadFieldElt::from_parts(order, &xx + &u * &yy, &yy * BigRational::from_integer(int(2)))
    }).find(|r| r.mul(r) == *x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaussLemmaReport {
    pub polynomial: String,
    pub roots: Option<[String; 2]>,
    pub reducible_over_k: bool,
    pub reducible_over_o: bool,
}

/// `coeffs` are `[1, c1, c0]` for `T^2 + c1 T + c0`.
pub fn gauss_lemma_check(coeffs: &[QuadElt]) -> Result<GaussLemmaReport> {
    let [lead, c1, c0] = coeffs else {
        return Err(Error::InvalidArgument(format!("expected 3 coefficients, got {}", coeffs.len())));
    };
    let order = lead.order();
    if lead != &QuadElt::from_i64(order, 1, 0) {
        return Err(Error::NonMonic);
    }
    let polynomial = format!("T^2 + ({c1})T + ({c0})");
    let delta = c1.mul(c1).sub(&c0.mul(&QuadElt::from_i64(order, 4, 0)));
    let Some(s) = field_sqrt(&delta.to_field()) else {
        return Ok(GaussLemmaReport { polynomial, roots: None, reducible_over_k: false, reducible_over_o: false });
    };
    let half = BigRational::new(int(1), int(2));
    let m = c1.neg().to_field();
    let root = |sign: &BigRational| {
        QuadFieldElt::from_parts(order, (&m.x + sign * &s.x) * &half, (&m.y + sign * &s.y) * &half)
    };
    let (r1, r2) = (root(&BigRational::one()), root(&-BigRational::one()));
    let reducible_over_o = r1.as_order_elt().is_some() && r2.as_order_elt().is_some();
    Ok(GaussLemmaReport {
        polynomial,
        roots: Some([r1.to_string(), r2.to_string()]),
        reducible_over_k: true,
        reducible_over_o,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralWitness {
    pub order: String,
    pub alpha: String,
    pub p: u64,
    pub at_alpha: bool,
    pub at_inverse: bool,
}

/// For `alpha = w_K` outside the order, each map at a prime dividing the
/// conductor that is undefined at `alpha` is checked at `1/alpha`.
pub fn integral_witnesses(order: &Arc<QuadOrder>) -> Result<Vec<IntegralWitness>> {
    let alpha = order.omega();
    let (num, den) = alpha.as_fraction();
    let den = QuadElt::new(order, den, int(0));
    let f = u64::try_from(order.conductor()).map_err(|_| Error::OutsideTheory("conductor too large".into()))?;
    let mut out = Vec::new();
    for (p, _) in factor_u64(f) {
        for map in enumerate_quad_maps(order, p)? {
            out.push(IntegralWitness {
                order: order.name().to_string(),
                alpha: alpha.to_string(),
                p,
                at_alpha: quad_defined_at(&map, &num, &den)?,
                at_inverse: quad_defined_at(&map, &den, &num)?,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Deserialize)]
pub struct CatalogOrder {
    pub name: String,
    pub u: i64,
    pub v: i64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CatalogPolynomial {
    pub c1: [i64; 2],
    pub c0: [i64; 2],
}

#[derive(Clone, Debug, Deserialize)]
pub struct Catalog {
    pub order: Vec<CatalogOrder>,
    pub polynomial: Vec<CatalogPolynomial>,
}

const CATALOG: &str = include_str!("../data/orders.toml");

pub fn catalog() -> Result<Catalog> {
    toml::from_str(CATALOG).map_err(|e| Error::InvalidArgument(format!("order catalog: {e}")))
}

impl Catalog {
    pub fn orders(&self) -> Result<Vec<Arc<QuadOrder>>> {
        self.order.iter().map(|o| QuadOrder::named(o.u, o.v, &o.name)).collect()
    }

    pub fn polynomials(&self, order: &Arc<QuadOrder>) -> Vec<[QuadElt; 3]> {
        self.polynomial
            .iter()
            .map(|p| {
                [
                    QuadElt::from_i64(order, 1, 0),
                    QuadElt::from_i64(order, p.c1[0], p.c1[1]),
                    QuadElt::from_i64(order, p.c0[0], p.c0[1]),
                ]
            })
            .collect()
    }
}
