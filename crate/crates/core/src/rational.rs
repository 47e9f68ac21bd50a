//! Exact rational matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p", "-p" or "p/q".
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Dense square or rectangular rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| format_q(self.get(i, j))).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Invalid("ragged matrix".into()));
        }
        Ok(QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
            .expect("rectangular input")
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

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn neg(&self) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        QMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Q) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == QMatrix::identity(self.rows)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Inverse by Gauss–Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = QMatrix::identity(n).to_rows();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].clone();
            for x in a[c].iter_mut() {
                *x /= &piv;
            }
            for x in inv[c].iter_mut() {
                *x /= &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in 0..n {
                        let t = &a[c][k] * &f;
                        a[r][k] -= t;
                        let t = &inv[c][k] * &f;
                        inv[r][k] -= t;
                    }
                }
            }
        }
        Some(QMatrix::from_rows(inv).expect("square"))
    }

    pub fn determinant(&self) -> Q {
        assert!(self.is_square());
        determinant(&self.to_rows())
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Q {
        let sub: Vec<Vec<Q>> =
            rows.iter().map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect()).collect();
        determinant(&sub)
    }

    /// Leading principal minors, used as a positive-definiteness test.
    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric()
            && (1..=self.rows).all(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.minor(&idx, &idx).is_positive()
            })
    }
}

pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    if n == 0 {
        return Q::one();
    }
    let mut a = m.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &a[c][k] * &f;
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Reduced row-echelon basis of the nullspace of `a` (vectors x with a·x = 0).
/// Each basis vector has a 1 in its free coordinate; the list is in RREF order.
pub fn nullspace(a: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = a.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &piv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..ncols {
                    let t = &m[r][k] * &f;
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<Q>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect();
    canonical_basis(&mut basis, ncols);
    basis
}

/// Replaces a list of independent vectors by the RREF basis of their span
/// (first nonzero entry of each vector equal to 1).
pub fn canonical_basis(vs: &mut Vec<Vec<Q>>, ncols: usize) {
    let mut m = std::mem::take(vs);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &piv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..ncols {
                    let t = &m[r][k] * &f;
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    *vs = m;
}

pub fn rank(a: &[Vec<Q>], ncols: usize) -> usize {
    ncols - nullspace(a, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6").unwrap(), qfrac(1, 2));
        assert_eq!(parse_q("-4").unwrap(), q(-4));
        assert!(parse_q("1/0").is_err());
        assert_eq!(format_q(&qfrac(-2, 4)), "-1/2");
    }

    #[test]
    fn inverse_and_det() {
        let m = QMatrix::from_i64(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(m.determinant(), q(1));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(QMatrix::from_i64(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn nullspace_rref() {
        let a = vec![vec![q(1), q(1), q(0)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let s: Q = a[0].iter().zip(v).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
        assert_eq!(ns[0], vec![q(1), q(-1), q(0)]);
    }
}
