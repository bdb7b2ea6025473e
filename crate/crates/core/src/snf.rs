//! Smith normal form of integer matrices.
//!
//! Row and column reduction with the smallest nonzero entry as pivot. The
//! reduction first runs on checked `i64` arithmetic and restarts on
//! `BigInt` if any intermediate value overflows.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Exact product `self * other`, or `None` on overflow.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.checked_mul(other.get(k, j))?;
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].checked_add(prod)?;
                }
            }
        }
        Some(out)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[i64]> = (0..self.rows).map(|r| self.row(r)).collect();
        f.debug_struct("IntMatrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &rows)
            .finish()
    }
}

/// Invariant factors `d_1 | d_2 | … | d_r` (all positive) of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigUint>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one.
    pub fn torsion(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().filter(|f| **f > BigUint::from(1u32))
    }

    /// Factors as `u64`, if they all fit.
    pub fn as_u64(&self) -> Option<Vec<u64>> {
        self.factors.iter().map(|f| u64::try_from(f).ok()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut work: Vec<Vec<i64>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    if let Some(factors) = reduce(&mut work) {
        return SmithForm {
            factors: factors
                .into_iter()
                .map(|x| BigUint::from(x.unsigned_abs()))
                .collect(),
        };
    }
    let mut work: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| m.row(r).iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let factors = reduce(&mut work).expect("big integers do not overflow");
    SmithForm {
        factors: factors.into_iter().map(|x| x.magnitude().clone()).collect(),
    }
}

/// Just the rank, which is the number of invariant factors.
pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// Integer arithmetic the reduction needs; `None` signals overflow.
trait Scalar: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn magnitude_lt(&self, other: &Self) -> bool;
    /// Truncating quotient `a / b`.
    fn quot(a: &Self, b: &Self) -> Self;
    fn divides(a: &Self, b: &Self) -> bool;
    /// `a - q * b`
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self>;
    fn add(a: &Self, b: &Self) -> Option<Self>;
    fn abs(&self) -> Option<Self>;
}

impl Scalar for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(a: &Self, b: &Self) -> Self {
        a / b
    }
    fn divides(a: &Self, b: &Self) -> bool {
        b % a == 0
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(q.checked_mul(*b)?)
    }
    fn add(a: &Self, b: &Self) -> Option<Self> {
        a.checked_add(*b)
    }
    fn abs(&self) -> Option<Self> {
        self.checked_abs()
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn quot(a: &Self, b: &Self) -> Self {
        a / b
    }
    fn divides(a: &Self, b: &Self) -> bool {
        Zero::is_zero(&b.mod_floor(a))
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        Some(a - q * b)
    }
    fn add(a: &Self, b: &Self) -> Option<Self> {
        Some(a + b)
    }
    fn abs(&self) -> Option<Self> {
        Some(Signed::abs(self))
    }
}

/// Reduces `a` in place to diagonal form and returns the nonzero diagonal.
fn reduce<T: Scalar>(a: &mut [Vec<T>]) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut factors = Vec::new();
    let mut t = 0;

    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.magnitude_lt(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else {
            break;
        };
        move_to_pivot(a, t, pi, pj);

        loop {
            let mut cleared = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = T::quot(&a[i][t], &a[t][t]);
                let (pivot, row) = row_pair(a, t, i);
                for (x, p) in row[t..].iter_mut().zip(&pivot[t..]) {
                    *x = T::sub_mul(x, &q, p)?;
                }
                cleared &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = T::quot(&a[t][j], &a[t][t]);
                for row in a.iter_mut().skip(t) {
                    row[j] = T::sub_mul(&row[j], &q, &row[t])?;
                }
                cleared &= a[t][j].is_zero();
            }
            if !cleared {
                // a remainder is now smaller than the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].magnitude_lt(&a[best.0][best.1]) {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].magnitude_lt(&a[best.0][best.1]) {
                        best = (t, j);
                    }
                }
                move_to_pivot(a, t, best.0, best.1);
                continue;
            }
            // pivot must divide the rest of the block
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !T::divides(&a[t][t], &a[i][j])));
            match offender {
                Some(i) => {
                    let (other, pivot) = row_pair(a, i, t);
                    for (x, y) in pivot[t..].iter_mut().zip(&other[t..]) {
                        *x = T::add(x, y)?;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs()?);
        t += 1;
    }
    Some(factors)
}

/// Row `i` shared and row `j` mutable, `i != j`.
fn row_pair<T>(a: &mut [Vec<T>], i: usize, j: usize) -> (&[T], &mut [T]) {
    if i < j {
        let (lo, hi) = a.split_at_mut(j);
        (&lo[i], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(i);
        (&hi[0], &mut lo[j])
    }
}

fn move_to_pivot<T: Scalar>(a: &mut [Vec<T>], t: usize, i: usize, j: usize) {
    a.swap(t, i);
    if j != t {
        for row in a.iter_mut() {
            row.swap(t, j);
        }
    }
}
