//! Small dense matrices over a generic scalar.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{Num, One, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::Poly;
use crate::scalar::{Field, Ring};

/// Row-major `rows x cols` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<T: Clone + Num> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn scalar(n: usize, c: T) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn checked_mul(&self, rhs: &Matrix<T>) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::<T>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).clone() + a.clone() * rhs.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// `self^e` by repeated squaring; the matrix must be square.
    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Ring> Matrix<T> {
    /// Characteristic polynomial `det(xI - A)`, lowest degree first, by the
    /// Faddeev-LeVerrier recurrence (every division is exact over Z).
    pub fn charpoly(&self) -> Poly<T> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let mut m = Matrix::<T>::zeros(n, n);
        let mut prev = T::one();
        for k in 1..=n {
            m = &(self * &m) + &Matrix::scalar(n, prev.clone());
            let t = (self * &m).trace();
            let kk = T::from_usize(k).expect("small index");
            let (q, r) = t.div_rem(&kk);
            debug_assert!(r.is_zero(), "Faddeev-LeVerrier division is exact over Z");
            prev = -q;
            coeffs[n - k] = prev.clone();
        }
        Poly::new(coeffs)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j).clone() * a.get(k, k).clone() - a.get(i, k).clone() * a.get(k, j).clone())
                        / prev.clone();
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1).clone()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }
}

impl<T: Field> Matrix<T> {
    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::<T>::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a.get(i, c).is_zero())?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let piv = a.get(c, c).clone();
            for j in 0..n {
                a.set(c, j, a.get(c, j).clone() / piv.clone());
                inv.set(c, j, inv.get(c, j).clone() / piv.clone());
            }
            for i in 0..n {
                if i == c || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..n {
                    a.set(i, j, a.get(i, j).clone() - f.clone() * a.get(c, j).clone());
                    inv.set(i, j, inv.get(i, j).clone() - f.clone() * inv.get(c, j).clone());
                }
            }
        }
        Some(inv)
    }
}

impl<'a, T: Clone + Num> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}

impl<'a, T: Clone + Num> Add<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<'a, T: Clone + Num> Sub<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<T: Clone + Neg<Output = T>> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: One + Zero + Clone> Matrix<T> {
    /// The elementary continued-fraction matrix `[[a, 1], [1, 0]]`.
    pub fn cf_step(a: T) -> Self {
        Matrix { rows: 2, cols: 2, data: vec![a, T::one(), T::one(), T::zero()] }
    }
}

/// Text format: rows separated by `;`, entries by `,` (e.g. `0,1;2,0`).
impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        Ok(())
    }
}

impl<T: Clone + FromStr> FromStr for Matrix<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| {
                        e.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad matrix entry {:?}", e.trim())))
                    })
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Nested JSON arrays; entries that fit in `i64` are numbers, larger ones strings.
impl<T: ToPrimitive + fmt::Display> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Row<'a, T>(&'a [T]);
        impl<T: ToPrimitive + fmt::Display> Serialize for Row<'_, T> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for x in self.0 {
                    seq.serialize_element(&crate::serde_int::Int(x))?;
                }
                seq.end()
            }
        }
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&Row(&self.data[i * self.cols..(i + 1) * self.cols]))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IntMatrix, QMatrix, Rational};
    use num_bigint::BigInt;

    fn m(s: &str) -> IntMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn parse_display_round_trip() {
        assert_eq!(m("0, 1; 2, 0").to_string(), "0,1;2,0");
        assert!("1,2;3".parse::<IntMatrix>().is_err());
        assert!("1,x".parse::<IntMatrix>().is_err());
    }

    #[test]
    fn charpoly_and_det() {
        let a = m("0,1;2,0");
        assert_eq!(a.charpoly().coeffs(), &[BigInt::from(-2), BigInt::from(0), BigInt::from(1)][..]);
        assert_eq!(a.det(), BigInt::from(-2));
        let b = m("2,1,0;1,3,1;0,1,4");
        assert_eq!(b.det(), BigInt::from(18));
        // x^3 - 9x^2 + 24x - 18
        assert_eq!(b.charpoly().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["-18", "24", "-9", "1"]);
        assert_eq!(m("0,1;1,0").det(), BigInt::from(-1));
    }

    #[test]
    fn power_and_inverse() {
        assert_eq!(m("0,1;2,0").pow(2), m("2,0;0,2"));
        assert_eq!(m("1,1;1,0").pow(5), m("8,5;5,3"));
        let q: QMatrix = m("2,1;1,1").map(|x| Rational::from_integer(x.clone()));
        let inv = q.inverse().unwrap();
        assert_eq!(&q * &inv, QMatrix::identity(2));
        assert!(m("1,2;2,4").map(|x| Rational::from_integer(x.clone())).inverse().is_none());
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_string(&m("0,1;2,0")).unwrap();
        assert_eq!(j, "[[0,1],[2,0]]");
    }

    #[test]
    fn generic_over_i64() {
        let a = Matrix::<i64>::from_rows(vec![vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(a.charpoly().coeffs(), &[-1, -1, 1]);
        assert_eq!(a.pow(3).trace(), 4);
    }
}
