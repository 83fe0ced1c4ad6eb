//! Exact integer linear algebra over lattices.
//!
//! Everything here works with arbitrary-precision integers. Sublattices are
//! kept in row Hermite normal form so that two sublattices are equal exactly
//! when their stored bases are equal, and quotient lattices `N/L` are always
//! represented by an explicit surjective projection matrix onto `Z^(n-k)`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::LinError;

/// A lattice point, a linear form, or the one-parameter subgroup a lattice
/// point indexes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVec(Vec<BigInt>);

impl IntVec {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVec(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVec(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(len: usize) -> Self {
        IntVec(vec![BigInt::zero(); len])
    }

    /// The `k`-th standard basis vector of `Z^len`.
    pub fn unit(len: usize, k: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[k] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Non-negative gcd of the entries; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// The primitive lattice vector on the same ray, or `None` for zero.
    pub fn primitive(&self) -> Option<IntVec> {
        let g = self.content();
        if g.is_zero() {
            return None;
        }
        Some(IntVec(self.0.iter().map(|x| x / &g).collect()))
    }

    /// `self` or `-self`, whichever has a positive first nonzero entry.
    pub fn sign_normalized(&self) -> IntVec {
        match self.0.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn neg(&self) -> IntVec {
        IntVec(self.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, factor: &BigInt) -> IntVec {
        IntVec(self.0.iter().map(|x| x * factor).collect())
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        debug_assert_eq!(self.len(), other.len());
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVec) -> IntVec {
        debug_assert_eq!(self.len(), other.len());
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: &BigInt, other: &IntVec, b: &BigInt) -> IntVec {
        IntVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        )
    }

    pub fn dot(&self, other: &IntVec) -> Result<BigInt, LinError> {
        pairing(self, other)
    }

    pub(crate) fn dot_unchecked(&self, other: &IntVec) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl From<Vec<BigInt>> for IntVec {
    fn from(v: Vec<BigInt>) -> Self {
        IntVec(v)
    }
}

/// The canonical pairing `M x N -> Z`.
pub fn pairing(u: &IntVec, v: &IntVec) -> Result<BigInt, LinError> {
    if u.len() != v.len() {
        return Err(LinError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(u.dot_unchecked(v))
}

/// Row-major integer matrix; a lattice homomorphism `Z^cols -> Z^rows`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LinError> {
        if data.len() != rows * cols {
            return Err(LinError::Shape {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(IntMat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = BigInt::one();
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors, all of length `cols`.
    pub fn from_rows(cols: usize, rows: &[IntVec]) -> Result<Self, LinError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinError::LengthMismatch {
                    left: cols,
                    right: r.len(),
                });
            }
            data.extend(r.entries().iter().cloned());
        }
        Ok(IntMat {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Convenience constructor for literal matrices. Panics on ragged input.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vecs: Vec<IntVec> = rows.iter().map(|r| IntVec::from_i64s(r)).collect();
        Self::from_rows(cols, &vecs).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    fn get_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> IntVec {
        IntVec(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn row_vecs(&self) -> Vec<IntVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn column(&self, c: usize) -> IntVec {
        IntVec((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat, LinError> {
        if self.cols != other.rows {
            return Err(LinError::LengthMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = IntMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                *out.get_mut(r, c) = acc;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &IntVec) -> Result<IntVec, LinError> {
        if v.len() != self.cols {
            return Err(LinError::LengthMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        Ok(self.apply_unchecked(v))
    }

    pub(crate) fn apply_unchecked(&self, v: &IntVec) -> IntVec {
        IntVec(
            (0..self.rows)
                .map(|r| {
                    self.data[r * self.cols..(r + 1) * self.cols]
                        .iter()
                        .zip(v.entries())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        )
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, LinError> {
        if self.rows != self.cols {
            return Err(LinError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    *a.get_mut(i, j) = v;
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.det(), Ok(d) if d.abs().is_one())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(source, c) * factor;
            *self.get_mut(target, c) -= v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            *self.get_mut(r, c) = v;
        }
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.row(r))?;
        }
        f.write_str("]")
    }
}

/// Row Hermite normal form `h = u * m` with `u` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMat,
    pub u: IntMat,
    /// Number of nonzero rows of `h`; they come first.
    pub rank: usize,
}

/// Row Hermite normal form.
///
/// `h` is in row echelon form, every pivot is positive, entries above a pivot
/// lie in `[0, pivot)` and zero rows are at the bottom. `h` depends only on
/// the row lattice of `m`; `u` is deterministic but not canonical.
pub fn hnf(m: &IntMat) -> HermiteForm {
    let mut h = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut pivot = 0;
    for col in 0..m.cols {
        if pivot == m.rows {
            break;
        }
        loop {
            // smallest nonzero entry at or below the pivot row moves up
            let best = (pivot..m.rows)
                .filter(|&r| !h.get(r, col).is_zero())
                .min_by(|&a, &b| {
                    h.get(a, col)
                        .abs()
                        .cmp(&h.get(b, col).abs())
                        .then(a.cmp(&b))
                });
            let Some(best) = best else { break };
            h.swap_rows(pivot, best);
            u.swap_rows(pivot, best);
            let mut done = true;
            for r in pivot + 1..m.rows {
                if h.get(r, col).is_zero() {
                    continue;
                }
                let q = h.get(r, col).div_floor(h.get(pivot, col));
                h.sub_row_multiple(r, pivot, &q);
                u.sub_row_multiple(r, pivot, &q);
                if !h.get(r, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(pivot, col).is_zero() {
            continue;
        }
        if h.get(pivot, col).is_negative() {
            h.negate_row(pivot);
            u.negate_row(pivot);
        }
        for r in 0..pivot {
            let q = h.get(r, col).div_floor(h.get(pivot, col));
            h.sub_row_multiple(r, pivot, &q);
            u.sub_row_multiple(r, pivot, &q);
        }
        pivot += 1;
    }
    HermiteForm { h, u, rank: pivot }
}

/// A sublattice of `Z^n`, stored by its row Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: Vec<IntVec>,
    saturated: bool,
}

impl PartialOrd for Sublattice {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Sublattice {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_rank, &self.basis).cmp(&(other.ambient_rank, &other.basis))
    }
}

impl Sublattice {
    pub fn zero(ambient_rank: usize) -> Self {
        Sublattice {
            ambient_rank,
            basis: Vec::new(),
            saturated: true,
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Sublattice {
            ambient_rank,
            basis: (0..ambient_rank)
                .map(|k| IntVec::unit(ambient_rank, k))
                .collect(),
            saturated: true,
        }
    }

    /// The sublattice generated by `gens`.
    pub fn span(ambient_rank: usize, gens: &[IntVec]) -> Result<Self, LinError> {
        let mut l = Self::span_unflagged(ambient_rank, gens)?;
        l.saturated = saturate(&l).basis == l.basis;
        Ok(l)
    }

    /// Hermite basis of the span with the saturation flag left false.
    fn span_unflagged(ambient_rank: usize, gens: &[IntVec]) -> Result<Self, LinError> {
        let m = IntMat::from_rows(ambient_rank, gens)?;
        let form = hnf(&m);
        let basis = (0..form.rank).map(|r| form.h.row(r)).collect();
        Ok(Sublattice {
            ambient_rank,
            basis,
            saturated: false,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis_matrix(&self) -> IntMat {
        IntMat::from_rows(self.ambient_rank, &self.basis).expect("basis lengths match")
    }

    /// Lattice membership.
    pub fn contains(&self, v: &IntVec) -> bool {
        if v.len() != self.ambient_rank {
            return false;
        }
        let mut rest = v.clone();
        for b in &self.basis {
            let (col, pivot) = b
                .entries()
                .iter()
                .enumerate()
                .find(|(_, x)| !x.is_zero())
                .expect("basis vectors are nonzero");
            let (q, r) = rest.entries()[col].div_rem(pivot);
            if !r.is_zero() {
                return false;
            }
            rest = rest.sub(&b.scale(&q));
        }
        rest.is_zero()
    }

    /// Membership in the rational span.
    pub fn span_contains(&self, v: &IntVec) -> bool {
        saturate(self).contains(v)
    }

    /// The sublattice generated by `self` and `extra`, saturated.
    pub fn saturated_join(&self, extra: &[IntVec]) -> Result<Sublattice, LinError> {
        let mut gens = self.basis.clone();
        gens.extend(extra.iter().cloned());
        Ok(saturate(&Self::span_unflagged(self.ambient_rank, &gens)?))
    }

    /// `{u in Z^n : <u, v> = 0 for all v in self}`, always saturated.
    pub fn orthogonal_complement(&self) -> Sublattice {
        if self.basis.is_empty() {
            return Sublattice::full(self.ambient_rank);
        }
        kernel_basis(&self.basis_matrix())
    }
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("span{")?;
        for (k, b) in self.basis.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}

/// `ker(m) ∩ Z^cols` as a saturated sublattice.
pub fn kernel_basis(m: &IntMat) -> Sublattice {
    let form = hnf(&m.transpose());
    let gens: Vec<IntVec> = (form.rank..m.cols()).map(|r| form.u.row(r)).collect();
    let mut l = Sublattice::span_unflagged(m.cols(), &gens).expect("rows of u have length cols");
    l.saturated = true;
    l
}

/// The smallest saturated sublattice containing `l`.
pub fn saturate(l: &Sublattice) -> Sublattice {
    if l.saturated {
        return l.clone();
    }
    if l.basis.is_empty() {
        return Sublattice::zero(l.ambient_rank);
    }
    let perp = kernel_basis(&l.basis_matrix());
    if perp.basis.is_empty() {
        return Sublattice::full(l.ambient_rank);
    }
    kernel_basis(&perp.basis_matrix())
}

/// The projection `N -> N/L` as a surjective `(n-k) x n` matrix with kernel
/// exactly `l`. Its rows are the Hermite basis of `L^⊥`, so the output is
/// canonical.
pub fn quotient_projection(ambient_rank: usize, l: &Sublattice) -> Result<IntMat, LinError> {
    if l.ambient_rank != ambient_rank {
        return Err(LinError::LengthMismatch {
            left: ambient_rank,
            right: l.ambient_rank,
        });
    }
    if !l.saturated {
        return Err(LinError::NotSaturated);
    }
    let perp = l.orthogonal_complement();
    Ok(IntMat::from_rows(ambient_rank, perp.basis()).expect("basis lengths match"))
}

/// An integer right inverse `r` with `p * r = I`, if `p` is surjective.
pub fn right_inverse(p: &IntMat) -> Option<IntMat> {
    let form = hnf(&p.transpose());
    let k = p.rows();
    if form.rank != k {
        return None;
    }
    for r in 0..k {
        for c in 0..k {
            let expect = if r == c { BigInt::one() } else { BigInt::zero() };
            if *form.h.get(r, c) != expect {
                return None;
            }
        }
    }
    let rows: Vec<IntVec> = (0..k).map(|r| form.u.row(r)).collect();
    Some(
        IntMat::from_rows(p.cols(), &rows)
            .expect("rows of u have length cols")
            .transpose(),
    )
}

/// The unimodular `u` with `q = u * p`, if one exists. `p` must be surjective.
pub fn unimodular_transition(p: &IntMat, q: &IntMat) -> Option<IntMat> {
    if p.cols() != q.cols() || p.rows() != q.rows() {
        return None;
    }
    let r = right_inverse(p)?;
    let u = q.mul(&r).ok()?;
    if u.mul(p).ok()? != *q || !u.is_unimodular() {
        return None;
    }
    Some(u)
}

/// Euclidean projection of `x` onto the orthogonal complement of the span of
/// `basis`, scaled to a primitive lattice vector. Returns `None` when the
/// projection vanishes.
pub(crate) fn project_away(x: &IntVec, basis: &[IntVec]) -> Option<IntVec> {
    if basis.is_empty() {
        return x.primitive();
    }
    let k = basis.len();
    // Gram system (B B^T) y = B x over Q
    let mut gram: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..k)
                .map(|j| BigRational::from_integer(basis[i].dot_unchecked(&basis[j])))
                .collect();
            row.push(BigRational::from_integer(basis[i].dot_unchecked(x)));
            row
        })
        .collect();
    let y = solve_square(&mut gram);
    let mut out: Vec<BigRational> = x
        .entries()
        .iter()
        .map(|e| BigRational::from_integer(e.clone()))
        .collect();
    for (coef, b) in y.iter().zip(basis) {
        for (o, e) in out.iter_mut().zip(b.entries()) {
            *o -= coef * BigRational::from_integer(e.clone());
        }
    }
    clear_denominators(&out).primitive()
}

/// Solves an augmented nonsingular square system in place.
#[allow(clippy::needless_range_loop)]
fn solve_square(aug: &mut [Vec<BigRational>]) -> Vec<BigRational> {
    let k = aug.len();
    for col in 0..k {
        let piv = (col..k)
            .find(|&r| !aug[r][col].is_zero())
            .expect("gram matrix of independent vectors is nonsingular");
        aug.swap(col, piv);
        let p = aug[col][col].clone();
        for c in col..=k {
            aug[col][c] = &aug[col][c] / &p;
        }
        for r in 0..k {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=k {
                    let v = &f * &aug[col][c];
                    aug[r][c] -= v;
                }
            }
        }
    }
    aug.iter().map(|row| row[k].clone()).collect()
}

/// Smallest positive integer multiple of a rational vector.
pub fn clear_denominators(v: &[BigRational]) -> IntVec {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    IntVec::new(
        v.iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVec {
        IntVec::from_i64s(x)
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&v(&[1, 0]), &v(&[0, 1])).unwrap(), BigInt::zero());
        assert_eq!(
            pairing(&v(&[1, 1, 1, 1]), &v(&[1, 1, 0, -1])).unwrap(),
            BigInt::one()
        );
        // facet normal of a cone evaluated on one of its rays
        assert_eq!(
            pairing(&v(&[1, -1, -1]), &v(&[1, 1, 0])).unwrap(),
            BigInt::zero()
        );
        assert!(matches!(
            pairing(&v(&[1]), &v(&[1, 2])),
            Err(LinError::LengthMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn hnf_identity_and_swap() {
        let id = IntMat::identity(3);
        let f = hnf(&id);
        assert_eq!(f.h, id);
        assert_eq!(f.u, id);

        let swap = IntMat::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let f = hnf(&swap);
        assert_eq!(f.h, IntMat::identity(2));
        assert_eq!(f.u, swap);
    }

    #[test]
    fn hnf_of_small_matrix() {
        let m = IntMat::from_i64_rows(&[&[2, 6], &[1, 4]]);
        let f = hnf(&m);
        assert_eq!(f.u.mul(&m).unwrap(), f.h);
        assert!(f.u.is_unimodular());
        assert_eq!(f.h, IntMat::from_i64_rows(&[&[1, 0], &[0, 2]]));
    }

    #[test]
    fn hnf_of_zero_and_empty() {
        let z = IntMat::zeros(2, 3);
        let f = hnf(&z);
        assert_eq!(f.rank, 0);
        assert_eq!(f.h, z);
        let e = IntMat::zeros(0, 3);
        assert_eq!(hnf(&e).rank, 0);
    }

    #[test]
    fn determinant() {
        let m = IntMat::from_i64_rows(&[&[2, 6], &[1, 4]]);
        assert_eq!(m.det().unwrap(), BigInt::from(2));
        let m = IntMat::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(m.det().unwrap(), BigInt::from(-1));
        let m = IntMat::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(m.det().unwrap().is_zero());
    }

    #[test]
    fn kernels() {
        let k = kernel_basis(&IntMat::from_i64_rows(&[&[1, 1]]));
        assert_eq!(k.basis(), &[v(&[1, -1])]);

        let f = IntMat::from_i64_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 0]]);
        let k = kernel_basis(&f);
        assert_eq!(k.basis(), &[v(&[1, 1, 0, -1])]);
        assert!(k.is_saturated());

        assert!(kernel_basis(&IntMat::identity(3)).is_zero());
    }

    #[test]
    fn saturation() {
        let l = Sublattice::span(2, &[v(&[2, 2])]).unwrap();
        assert!(!l.is_saturated());
        assert_eq!(saturate(&l).basis(), &[v(&[1, 1])]);

        let l = Sublattice::span(4, &[v(&[1, 1, 0, -1])]).unwrap();
        assert!(l.is_saturated());
        assert_eq!(saturate(&l), l);

        assert_eq!(saturate(&Sublattice::zero(3)), Sublattice::zero(3));
    }

    #[test]
    fn projections() {
        let l = Sublattice::span(3, &[v(&[0, 0, 1])]).unwrap();
        assert_eq!(
            quotient_projection(3, &l).unwrap(),
            IntMat::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0]])
        );
        let l = Sublattice::span(2, &[v(&[1, -1])]).unwrap();
        assert_eq!(
            quotient_projection(2, &l).unwrap(),
            IntMat::from_i64_rows(&[&[1, 1]])
        );
        let l = Sublattice::span(3, &[v(&[1, 0, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(
            quotient_projection(3, &l).unwrap(),
            IntMat::from_i64_rows(&[&[0, 1, 0]])
        );
        let l = Sublattice::span(2, &[v(&[2, 0])]).unwrap();
        assert_eq!(quotient_projection(2, &l), Err(LinError::NotSaturated));
        let full = quotient_projection(2, &Sublattice::full(2)).unwrap();
        assert_eq!((full.rows(), full.cols()), (0, 2));
    }

    #[test]
    fn membership() {
        let l = Sublattice::span(3, &[v(&[2, 0, 0]), v(&[0, 1, 1])]).unwrap();
        assert!(l.contains(&v(&[4, 3, 3])));
        assert!(!l.contains(&v(&[1, 0, 0])));
        assert!(l.span_contains(&v(&[1, 0, 0])));
        assert!(!l.span_contains(&v(&[0, 1, 0])));
    }

    #[test]
    fn transitions() {
        let p = IntMat::from_i64_rows(&[&[1, 0, 0, 2], &[0, 1, 0, 0], &[0, 0, 1, -1]]);
        let q = IntMat::from_i64_rows(&[&[1, 1, 1, 1], &[0, -1, 0, 0], &[0, 0, 1, -1]]);
        let u = unimodular_transition(&p, &q).expect("same kernel");
        assert_eq!(u.mul(&p).unwrap(), q);
        let r = right_inverse(&p).unwrap();
        assert_eq!(p.mul(&r).unwrap(), IntMat::identity(3));
        assert!(right_inverse(&IntMat::from_i64_rows(&[&[2, 0]])).is_none());
        let other = IntMat::from_i64_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert!(unimodular_transition(&p, &other).is_none());
    }

    #[test]
    fn orthogonal_projection() {
        let w = [v(&[1, 0, 0])];
        assert_eq!(project_away(&v(&[3, 2, 0]), &w), Some(v(&[0, 1, 0])));
        assert_eq!(project_away(&v(&[3, 0, 0]), &w), None);
        let w = [v(&[1, 1])];
        assert_eq!(project_away(&v(&[1, 0]), &w), Some(v(&[1, -1])));
    }
}
