//! Dense square matrices over a [`Scalar`].

use std::fmt;

use num_rational::BigRational;

use crate::poly::Poly;
use crate::scalar::{format_rational, Scalar};

/// Square n×n matrix, row-major. `get(i, j)` is row i, column j.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(n: usize) -> Self {
        Mat {
            n,
            data: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// Matrix unit with a single one at (i, j).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.data[i * n + j] = S::one();
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Mat { n, data }
    }

    /// Builds from row-major data; `None` unless `data.len() == n*n`.
    pub fn from_vec(n: usize, data: Vec<S>) -> Option<Self> {
        (data.len() == n * n).then_some(Mat { n, data })
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Mat {
            n,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn from_i64_rows<const N: usize>(rows: [[i64; N]; N]) -> Self {
        Self::from_fn(N, |i, j| S::from_i64(rows[i][j]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    /// Entries in flat (row-major) order, matching `flat_index`.
    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero_value())
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite_value())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Mat {
            n: self.n,
            data: self.data.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Mat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Mat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero_value() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero_value() {
                        out.data[i * n + j] = out.data[i * n + j].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn trace(&self) -> S {
        (0..self.n).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<&S> {
        self.data.iter().find(|v| !v.is_zero_value())
    }

    /// Gauss-Jordan inverse; `None` when singular. Floats pivot on the
    /// largest magnitude and treat exact zero as singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.get(r, col).is_zero_value())
                .max_by(|&r, &s| {
                    a.get(r, col)
                        .abs()
                        .to_f64()
                        .partial_cmp(&a.get(s, col).abs().to_f64())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = a.get(col, col).clone();
            for j in 0..n {
                let v = a.get(col, j).clone() / p.clone();
                a.set(col, j, v);
                let v = inv.get(col, j).clone() / p.clone();
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero_value() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j).clone() - f.clone() * a.get(col, j).clone();
                    a.set(r, j, v);
                    let v = inv.get(r, j).clone() - f.clone() * inv.get(col, j).clone();
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, r: usize, s: usize) {
        if r != s {
            for j in 0..self.n {
                self.data.swap(r * self.n + j, s * self.n + j);
            }
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Mat<f64> {
        self.map(|v| v.to_f64())
    }
}

impl Mat<BigRational> {
    /// Exact rank by fraction-based row reduction.
    pub fn rank(&self) -> usize {
        crate::linalg::rank_rational(self.rows())
    }

    pub fn det(&self) -> BigRational {
        crate::linalg::det_rational(self.rows())
    }

    /// det(tI − M), monic with exact coefficients.
    pub fn charpoly(&self) -> Poly {
        Poly::charpoly(self)
    }
}

impl<S: fmt::Debug> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.data.chunks(self.n.max(1)))
            .finish()
    }
}

impl fmt::Display for Mat<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.data.chunks(self.n.max(1)).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
