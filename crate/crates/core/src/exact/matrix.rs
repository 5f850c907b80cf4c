//! Small dense matrices over an exact scalar ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::One;

use super::gaussian::GaussianRational;
use super::poly::MultiPoly;
use super::series::factorial;
use crate::error::{Error, Result};

/// Exact commutative scalars usable as matrix entries.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale_by(&self, c: &GaussianRational) -> Self;
    fn conjugate(&self) -> Self;
    fn from_gaussian(c: &GaussianRational) -> Self;
}

impl Scalar for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale_by(&self, c: &GaussianRational) -> Self {
        self * c
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn from_gaussian(c: &GaussianRational) -> Self {
        c.clone()
    }
}

/// Polynomial entries; conjugation treats every indeterminate as real.
impl Scalar for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale_by(&self, c: &GaussianRational) -> Self {
        self.scale(c)
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn from_gaussian(c: &GaussianRational) -> Self {
        MultiPoly::constant(c.clone())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type DenseMatrix = Matrix<GaussianRational>;
pub type PolyMatrix = Matrix<MultiPoly>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// 0-based access.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map(|x| x.scale_by(c))
    }

    /// Multiplies every entry by the scalar `c` of the entry ring.
    pub fn scale_entries(&self, c: &T) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().map(T::conjugate)
    }

    fn same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.plus(b))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.minus(b))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j).plus(&a.times(b));
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "mul_vec: {} columns, vector of length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect())
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("pow of non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Smallest `p ≥ 1` with `M^p = 0`, searching up to `rows`.
    pub fn nilpotency_index(&self) -> Result<Option<usize>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "nilpotency of non-square matrix".into(),
            ));
        }
        let mut power = self.clone();
        for p in 1..=self.rows.max(1) {
            if power.is_zero() {
                return Ok(Some(p));
            }
            power = power.try_mul(self)?;
        }
        Ok(None)
    }
}

/// `AB − BA`.
pub fn commutator<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if !a.is_square() || !b.is_square() || a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "commutator of {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}

/// `exp(M) = Σ_{k<p} M^k / k!` for a nilpotent `M` with `M^p = 0`.
///
/// Fails with [`Error::NotNilpotent`] when `M^rows ≠ 0`; the sum is never
/// truncated silently.
pub fn exp_nilpotent<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let p = m.nilpotency_index()?.ok_or(Error::NotNilpotent(m.rows))?;
    let mut sum = Matrix::identity(m.rows);
    let mut power = Matrix::identity(m.rows);
    for k in 1..p as u32 {
        power = power.try_mul(m)?;
        let inv_fact = GaussianRational::real(BigRational::one() / factorial(k));
        sum = sum.try_add(&power.scale(&inv_fact))?;
    }
    Ok(sum)
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<'b, T: Scalar> Add<&'b Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &'b Matrix<T>) -> Matrix<T> {
        self.try_add(rhs).expect("matrix add")
    }
}

impl<'b, T: Scalar> Sub<&'b Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &'b Matrix<T>) -> Matrix<T> {
        self.try_sub(rhs).expect("matrix sub")
    }
}

impl<'b, T: Scalar> Mul<&'b Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &'b Matrix<T>) -> Matrix<T> {
        self.try_mul(rhs).expect("matrix mul")
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(T::negate)
    }
}

impl DenseMatrix {
    /// Lifts rational entries to constant polynomials.
    pub fn to_poly(&self) -> PolyMatrix {
        self.map(|c| MultiPoly::constant(c.clone()))
    }
}

/// Entry-wise sum and scaling helpers for vectors.
pub fn vec_scale<T: Scalar>(v: &[T], c: &T) -> Vec<T> {
    v.iter().map(|x| x.times(c)).collect()
}

pub fn vec_sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.minus(y)).collect()
}

pub fn vec_is_zero<T: Scalar>(v: &[T]) -> bool {
    v.iter().all(T::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn m(rows: &[&[i64]]) -> DenseMatrix {
        DenseMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| g(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn commutator_with_identity_vanishes() {
        let b = m(&[&[1, 2], &[3, 4]]);
        assert!(commutator(&DenseMatrix::identity(2), &b).unwrap().is_zero());
        assert!(commutator(&b, &b).unwrap().is_zero());
    }

    #[test]
    fn commutator_dimension_mismatch() {
        let a = DenseMatrix::identity(2);
        let b = DenseMatrix::identity(3);
        assert!(matches!(
            commutator(&a, &b),
            Err(Error::DimensionMismatch(_))
        ));
        let r = DenseMatrix::zeros(2, 3);
        assert!(matches!(
            commutator(&r, &r),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(
            exp_nilpotent(&DenseMatrix::zeros(4, 4)).unwrap(),
            DenseMatrix::identity(4)
        );
    }

    #[test]
    fn exp_of_jordan_block() {
        let n = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let e = exp_nilpotent(&n).unwrap();
        let expect = DenseMatrix::from_rows(vec![
            vec![g(1), g(1), GaussianRational::from_ratio(1, 2)],
            vec![g(0), g(1), g(1)],
            vec![g(0), g(0), g(1)],
        ])
        .unwrap();
        assert_eq!(e, expect);
        assert_eq!(&e * &exp_nilpotent(&-&n).unwrap(), DenseMatrix::identity(3));
    }

    #[test]
    fn exp_rejects_non_nilpotent() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(exp_nilpotent(&a), Err(Error::NotNilpotent(2)));
    }
}
