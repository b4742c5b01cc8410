//! Full-rank integer lattices in Hermite normal form, and the ideal
//! arithmetic (products, colon ideals) built on them.
//!
//! An order is presented by a Z-basis `b_0, ..., b_{d-1}` and a structure
//! constant tensor: `b_i * b_j = sum_k table[i][j][k] b_k`. Every ideal is a
//! sublattice of Z^d in those coordinates.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::integer::Integer;
use crate::error::{Error, Result};

pub type IntVector = Vec<Integer>;

/// Structure constants of an order with respect to a fixed Z-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultTable {
    dim: usize,
    table: Vec<Vec<IntVector>>,
}

impl MultTable {
    pub fn new(table: Vec<Vec<IntVector>>) -> Result<Self> {
        let dim = table.len();
        for row in &table {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
                }
            }
        }
        Ok(MultTable { dim, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self, a: &[Integer], b: &[Integer]) -> IntVector {
        let mut out = vec![Integer::zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &c * t;
                    }
                }
            }
        }
        out
    }

    /// Rows `v * b_i`: the matrix of multiplication by `v`.
    pub fn mult_matrix(&self, v: &[Integer]) -> Vec<IntVector> {
        (0..self.dim)
            .map(|i| {
                let mut e = vec![Integer::zero(); self.dim];
                e[i] = Integer::one();
                self.mul(v, &e)
            })
            .collect()
    }
}

/// Full-rank sublattice of Z^d, stored as its row-style Hermite normal form:
/// upper triangular, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLattice {
    basis: Vec<IntVector>,
}

/// Row echelon form over Z. Pivots are sought only in the first `pivot_cols`
/// columns; returns the transformed rows (pivot rows first) and the pivot
/// columns. All row operations are unimodular.
fn echelon(mut rows: Vec<IntVector>, pivot_cols: usize) -> (Vec<IntVector>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r >= rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            let mut clean = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                sub_mul(&mut rows, i, r, &q);
                if !rows[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            for i in 0..r {
                let q = rows[i][c].div_floor(&rows[r][c]);
                if !q.is_zero() {
                    sub_mul(&mut rows, i, r, &q);
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    (rows, pivots)
}

/// rows[i] -= q * rows[j]
fn sub_mul(rows: &mut [IntVector], i: usize, j: usize, q: &Integer) {
    let (src, dst) = if i < j {
        let (a, b) = rows.split_at_mut(j);
        (&b[0], &mut a[i])
    } else {
        let (a, b) = rows.split_at_mut(i);
        (&a[j], &mut b[0])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

/// Basis of the integer left kernel `{c : c * mat = 0}` of an `m x n` matrix.
pub fn integer_kernel(mat: &[IntVector], ncols: usize) -> Vec<IntVector> {
    let m = mat.len();
    let augmented: Vec<IntVector> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..m).map(|j| if i == j { Integer::one() } else { Integer::zero() }));
            v
        })
        .collect();
    let (rows, _) = echelon(augmented, ncols);
    rows.into_iter()
        .filter(|r| r[..ncols].iter().all(Zero::is_zero))
        .map(|r| r[ncols..].to_vec())
        .collect()
}

/// Canonical HNF of the lattice generated by `rows`.
pub fn hnf(rows: Vec<IntVector>) -> Result<IntLattice> {
    IntLattice::from_generators(rows)
}

impl IntLattice {
    pub fn from_generators(rows: Vec<IntVector>) -> Result<Self> {
        let dim = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidArgument("empty generating set".into()))?;
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
        }
        let (mut reduced, pivots) = echelon(rows, dim);
        if pivots.len() < dim {
            return Err(Error::RankDeficient { rank: pivots.len(), dim });
        }
        reduced.truncate(dim);
        Ok(IntLattice { basis: reduced })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_generators(
            rows.iter().map(|r| r.iter().map(|&c| Integer::from(c)).collect()).collect(),
        )
    }

    /// Z^d itself.
    pub fn full(dim: usize) -> Self {
        Self::scalar(dim, &Integer::one())
    }

    /// `c * Z^d`.
    pub fn scalar(dim: usize, c: &Integer) -> Self {
        let basis = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { c.abs() } else { Integer::zero() })
                    .collect()
            })
            .collect();
        IntLattice { basis }
    }

    /// The principal ideal `v * O`.
    pub fn principal(v: &[Integer], table: &MultTable) -> Result<Self> {
        Self::from_generators(table.mult_matrix(v))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    /// `[Z^d : L]`, the product of the pivots.
    pub fn index(&self) -> Integer {
        (0..self.dim()).map(|i| self.basis[i][i].clone()).product()
    }

    pub fn contains_vector(&self, v: &[Integer]) -> Result<bool> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        let mut w = v.to_vec();
        for (i, row) in self.basis.iter().enumerate() {
            let (q, r) = w[i].div_mod_floor(&row[i]);
            if !r.is_zero() {
                return Ok(false);
            }
            if !q.is_zero() {
                for (x, b) in w.iter_mut().zip(row) {
                    *x -= &q * b;
                }
            }
        }
        Ok(true)
    }

    /// True when `other` is a sublattice of `self`.
    pub fn contains(&self, other: &IntLattice) -> Result<bool> {
        for row in &other.basis {
            if !self.contains_vector(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &IntLattice) -> Result<Self> {
        self.check_dim(other.dim())?;
        Self::from_generators(self.basis.iter().chain(&other.basis).cloned().collect())
    }

    pub fn scale(&self, c: &Integer) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::RankDeficient { rank: 0, dim: self.dim() });
        }
        Self::from_generators(
            self.basis.iter().map(|r| r.iter().map(|x| x * c).collect()).collect(),
        )
    }

    /// Lattice generated by all pairwise products of basis vectors.
    pub fn product(&self, other: &IntLattice, table: &MultTable) -> Result<Self> {
        self.check_dim(other.dim())?;
        self.check_dim(table.dim())?;
        // both factors contain their index times Z^d, so the product contains
        // index(self) * index(other) * Z^d; adding those rows bounds growth
        let bound = self.index() * other.index();
        let mut gens: Vec<IntVector> = Vec::with_capacity(self.dim() * other.dim() + self.dim());
        for a in &self.basis {
            for b in &other.basis {
                gens.push(table.mul(a, b));
            }
        }
        gens.extend(Self::scalar(self.dim(), &bound).basis);
        Self::from_generators(gens)
    }

    /// The colon lattice `{d in O : v * d in self}`. For `v = 0` this is `O`.
    pub fn colon(&self, v: &[Integer], table: &MultTable) -> Result<Self> {
        self.check_dim(table.dim())?;
        self.check_dim(v.len())?;
        let d = self.dim();
        if v.iter().all(Zero::is_zero) {
            return Ok(Self::full(d));
        }
        let mut stacked = table.mult_matrix(v);
        stacked.extend(self.basis.iter().cloned());
        let kernel = integer_kernel(&stacked, d);
        let projected: Vec<IntVector> = kernel.into_iter().map(|c| c[..d].to_vec()).collect();
        Self::from_generators(projected)
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found });
        }
        Ok(())
    }
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::integer::int;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> IntVector {
        xs.iter().map(|&x| int(x)).collect()
    }

    /// Z[sqrt(-3)] with basis {1, t}, t^2 = -3.
    fn z_sqrt_m3() -> MultTable {
        MultTable::new(vec![
            vec![v(&[1, 0]), v(&[0, 1])],
            vec![v(&[0, 1]), v(&[-3, 0])],
        ])
        .unwrap()
    }

    /// Z[i] with basis {1, i}.
    fn gaussian() -> MultTable {
        MultTable::new(vec![
            vec![v(&[1, 0]), v(&[0, 1])],
            vec![v(&[0, 1]), v(&[-1, 0])],
        ])
        .unwrap()
    }

    #[test]
    fn hnf_examples() {
        let l = IntLattice::from_i64(&[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(l.basis(), &[v(&[2, 0]), v(&[0, 2])]);
        assert_eq!(l.index(), int(4));
        let l = IntLattice::from_i64(&[&[2, 0], &[1, 1]]).unwrap();
        assert_eq!(l.basis(), &[v(&[1, 1]), v(&[0, 2])]);
        assert_eq!(l.index(), int(2));
        assert_eq!(hnf(l.basis().to_vec()).unwrap(), l);
    }

    #[test]
    fn rank_deficient_and_mismatch() {
        assert_eq!(
            IntLattice::from_i64(&[&[1, 2], &[2, 4]]),
            Err(Error::RankDeficient { rank: 1, dim: 2 })
        );
        assert!(matches!(
            IntLattice::from_i64(&[&[1, 2], &[2]]),
            Err(Error::DimensionMismatch { .. })
        ));
        let l = IntLattice::full(2);
        assert!(l.contains_vector(&v(&[1, 2, 3])).is_err());
    }

    #[test]
    fn colon_examples() {
        let t = gaussian();
        let two = IntLattice::principal(&v(&[2, 0]), &t).unwrap();
        assert_eq!(two.colon(&v(&[2, 0]), &t).unwrap(), IntLattice::full(2));

        let t = z_sqrt_m3();
        let two = IntLattice::principal(&v(&[2, 0]), &t).unwrap();
        let p = IntLattice::from_i64(&[&[2, 0], &[1, 1]]).unwrap();
        assert_eq!(two.colon(&v(&[1, 1]), &t).unwrap(), p);
    }

    #[test]
    fn prime_square_equals_two_times_prime() {
        let t = z_sqrt_m3();
        let p = IntLattice::from_i64(&[&[2, 0], &[1, 1]]).unwrap();
        let p2 = p.product(&p, &t).unwrap();
        assert_eq!(p2, p.scale(&int(2)).unwrap());
        assert_eq!(p2.index(), int(8));
        assert_ne!(p, IntLattice::principal(&v(&[2, 0]), &t).unwrap());
    }

    #[test]
    fn kernel_basis() {
        let m = vec![v(&[2, 4]), v(&[1, 2]), v(&[3, 7])];
        let k = integer_kernel(&m, 2);
        assert_eq!(k.len(), 1);
        let c = &k[0];
        for j in 0..2 {
            let s: Integer = (0..3).map(|i| &c[i] * &m[i][j]).sum();
            assert!(s.is_zero());
        }
    }

    fn arb_basis() -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-6i64..7, 3), 3..6)
    }

    proptest! {
        #[test]
        fn hnf_is_canonical(rows in arb_basis(), mix in proptest::collection::vec(-3i64..4, 9)) {
            let gens: Vec<IntVector> = rows.iter().map(|r| v(r)).collect();
            if let Ok(l) = IntLattice::from_generators(gens.clone()) {
                // a unimodular change of generators: add integer combinations
                let mut other = gens.clone();
                for (k, m) in mix.iter().enumerate() {
                    let (i, j) = (k % other.len(), (k / 3 + 1) % other.len());
                    if i != j {
                        let add: IntVector = other[j].iter().map(|x| x * m).collect();
                        for (a, b) in other[i].iter_mut().zip(add) { *a += b; }
                    }
                }
                other.reverse();
                let l2 = IntLattice::from_generators(other).unwrap();
                prop_assert_eq!(&l, &l2);
                prop_assert_eq!(&IntLattice::from_generators(l.basis().to_vec()).unwrap(), &l);
                for g in &gens {
                    prop_assert!(l.contains_vector(g).unwrap());
                }
            }
        }
    }
}
