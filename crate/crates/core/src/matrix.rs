//! Dense matrices over exact fields.

use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::{BigRational, Scalar};

/// The field operations a matrix entry needs.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_int(n: i64) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn from_int(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

/// Row-major `rows × cols` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ScalarMatrix = Matrix<Scalar>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// Elementary matrix `e_{ij}` (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.data[i * n + j] = T::one();
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data.iter().enumerate().map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Field, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<_, _>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn neg(&self) -> Self {
        self.map(T::neg)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = &mut out.data[i * o.cols + j];
                    *cur = cur.add(&a.mul(b));
                }
            }
        }
        out
    }

    /// `self · v` for a column vector.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product; the left factor is the outer index.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for (i, j, a) in self.entries() {
            if a.is_zero() {
                continue;
            }
            for (k, l, b) in o.entries() {
                if b.is_zero() {
                    continue;
                }
                out.set(i * o.rows + k, j * o.cols + l, a.mul(b));
            }
        }
        out
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        if let Some(inv) = self.triangular_inverse() {
            return Some(inv);
        }
        let mut a = self.clone();
        let mut b = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    b.data.swap(p * n + j, c * n + j);
                }
            }
            let inv = a.get(c, c).inv()?;
            for j in 0..n {
                let x = a.get(c, j).mul(&inv);
                a.set(c, j, x);
                let y = b.get(c, j).mul(&inv);
                b.set(c, j, y);
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let ac = a.get(c, j);
                    if !ac.is_zero() {
                        let x = a.get(r, j).sub(&f.mul(ac));
                        a.set(r, j, x);
                    }
                    let bc = b.get(c, j);
                    if !bc.is_zero() {
                        let y = b.get(r, j).sub(&f.mul(bc));
                        b.set(r, j, y);
                    }
                }
            }
        }
        Some(b)
    }

    fn is_lower_triangular(&self) -> bool {
        self.entries().all(|(i, j, x)| j <= i || x.is_zero())
    }

    fn triangular_inverse(&self) -> Option<Self> {
        if self.is_lower_triangular() {
            return self.lower_inverse();
        }
        if self.transpose().is_lower_triangular() {
            return self.transpose().lower_inverse().map(|m| m.transpose());
        }
        None
    }

    /// Forward substitution, one column of the identity at a time.
    fn lower_inverse(&self) -> Option<Self> {
        let n = self.rows;
        let diag: Vec<T> = (0..n).map(|i| self.get(i, i).inv()).collect::<Option<_>>()?;
        let mut out = Self::zeros(n, n);
        for c in 0..n {
            for i in c..n {
                let mut acc = if i == c { T::one() } else { T::zero() };
                for k in c..i {
                    let l = self.get(i, k);
                    let x = out.get(k, c);
                    if !l.is_zero() && !x.is_zero() {
                        acc = acc.sub(&l.mul(x));
                    }
                }
                out.set(i, c, acc.mul(&diag[i]));
            }
        }
        Some(out)
    }

    /// Permutation matrix of `V⊗W → W⊗V` for `dim V = a`, `dim W = b`.
    pub fn flip(a: usize, b: usize) -> Self {
        let mut m = Self::zeros(a * b, a * b);
        for i in 0..a {
            for j in 0..b {
                m.set(j * a + i, i * b + j, T::one());
            }
        }
        m
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

impl<T: Field> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RatMatrix {
    pub fn to_scalar(&self) -> ScalarMatrix {
        self.map(|q| Scalar::from_rational(q.clone()))
    }
}

impl ScalarMatrix {
    /// First nonzero entry of `self − o`, for reports.
    pub fn first_difference(&self, o: &Self) -> Option<String> {
        let d = self.sub(o);
        let hit = d.entries().find(|(_, _, x)| !x.is_zero()).map(|(i, j, x)| format!("entry ({i},{j}) differs by {x}"));
        hit
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_rows(vec![vec![q(2), q(1), q(0)], vec![q(1), q(3), q(1)], vec![q(0), q(1), q(4)]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let l = RatMatrix::from_rows(vec![vec![q(1), q(0)], vec![q(5), q(2)]]);
        assert!(l.mul(&l.inverse().unwrap()).is_identity());
        let u = l.transpose();
        assert!(u.inverse().unwrap().mul(&u).is_identity());
        assert!(RatMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]).inverse().is_none());
    }

    #[test]
    fn flip_swaps_factors() {
        let a = RatMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]]);
        let b = RatMatrix::from_rows(vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)], vec![q(1), q(0), q(0)]]);
        let t = RatMatrix::flip(2, 3);
        assert_eq!(t.mul(&a.kron(&b)).mul(&RatMatrix::flip(3, 2)), b.kron(&a));
    }
}
