use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Integer entry type for sparse matrices and Smith normal form.
///
/// Every arithmetic step is checked: a fixed-width implementation returns
/// `None` on overflow and the caller restarts with [`BigInt`].
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_u128(&self) -> Option<u128>;
    fn is_unit(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    /// `self - f * x`
    fn checked_sub_mul(&self, f: &Self, x: &Self) -> Option<Self>;
    /// Quotient rounded towards zero.
    fn quot(&self, d: &Self) -> Option<Self>;
    fn is_divisible_by(&self, d: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_u128(&self) -> Option<u128> {
        Some(self.unsigned_abs() as u128)
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i64::checked_add(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i64::checked_mul(*self, *other)
    }
    fn checked_sub_mul(&self, f: &Self, x: &Self) -> Option<Self> {
        i64::checked_sub(*self, i64::checked_mul(*f, *x)?)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn is_divisible_by(&self, d: &Self) -> bool {
        self.checked_rem(*d) == Some(0)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_u128(&self) -> Option<u128> {
        self.abs().to_u128()
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_sub_mul(&self, f: &Self, x: &Self) -> Option<Self> {
        Some(self - f * x)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn is_divisible_by(&self, d: &Self) -> bool {
        Zero::is_zero(&self.mod_floor(d))
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Compares magnitudes, treating values too large for `u128` as larger than
/// anything that fits.
pub(crate) fn abs_lt<T: Scalar>(a: &T, b: &T) -> bool {
    match (a.abs_u128(), b.abs_u128()) {
        (Some(x), Some(y)) => x < y,
        (Some(_), None) => true,
        (None, Some(_)) => false,
        (None, None) => a.to_big().abs() < b.to_big().abs(),
    }
}

/// Sparse integer matrix stored as rows of `(column, value)` pairs with
/// strictly increasing columns and no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<(usize, T)>>,
}

/// Matrix with unbounded integer entries.
pub type IntegerMatrix = SparseMatrix<BigInt>;

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn from_dense(dense: &[Vec<T>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let data = dense
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect())
            .collect();
        SparseMatrix { rows, cols, data }
    }

    /// Builds a matrix from column lists of `(row, value)` pairs.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, T)>>) -> Self {
        let cols = columns.len();
        let mut data: Vec<Vec<(usize, T)>> = vec![Vec::new(); rows];
        for (j, col) in columns.into_iter().enumerate() {
            for (i, v) in col {
                if !v.is_zero() {
                    data[i].push((j, v));
                }
            }
        }
        SparseMatrix { rows, cols, data }
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// `self * other`, or `None` on overflow.
    pub fn checked_mul(&self, other: &SparseMatrix<T>) -> Option<SparseMatrix<T>> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    let p = a.checked_mul(b)?;
                    let v = acc.entry(*j).or_insert_with(T::zero);
                    *v = v.checked_add(&p)?;
                }
            }
            data.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        Some(SparseMatrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn to_big(&self) -> IntegerMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(|(j, v)| (*j, v.to_big())).collect()).collect(),
        }
    }
}
