//! Dense order-3 tensors and the matrix multiplication tensor.

use num_rational::BigRational;

use crate::error::CoreError;
use crate::mat::Mat;
use crate::scalar::Scalar;

/// Slot index of entry (i, j) of an n×n matrix: `i*n + j`.
pub fn flat_index(i: usize, j: usize, n: usize) -> Result<usize, CoreError> {
    if i >= n || j >= n {
        return Err(CoreError::IndexOutOfRange { i, j, n });
    }
    Ok(i * n + j)
}

/// Dense m×m×m tensor, entry (a, b, c) stored at `(a*m + b)*m + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<S> {
    m: usize,
    data: Vec<S>,
}

impl<S: Scalar> Tensor3<S> {
    pub fn zeros(m: usize) -> Self {
        Tensor3 {
            m,
            data: vec![S::zero(); m * m * m],
        }
    }

    pub fn from_vec(m: usize, data: Vec<S>) -> Option<Self> {
        (data.len() == m * m * m).then_some(Tensor3 { m, data })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn offset(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.m + b) * self.m + c
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &S {
        &self.data[self.offset(a, b, c)]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, v: S) {
        let o = self.offset(a, b, c);
        self.data[o] = v;
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero_value())
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero_value()).count()
    }

    pub fn norm_sq(&self) -> S {
        self.data
            .iter()
            .fold(S::zero(), |acc, v| acc + v.clone() * v.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        Tensor3 {
            m: self.m,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        Tensor3 {
            m: self.m,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Tensor3 {
            m: self.m,
            data: self.data.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    /// Adds `x ⊗ y ⊗ z` (flattened matrices) into `self`.
    pub fn add_outer(&mut self, x: &[S], y: &[S], z: &[S]) {
        let m = self.m;
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero_value() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero_value() {
                    continue;
                }
                let xy = xa.clone() * yb.clone();
                let base = (a * m + b) * m;
                for (c, zc) in z.iter().enumerate() {
                    if !zc.is_zero_value() {
                        self.data[base + c] = self.data[base + c].clone() + xy.clone() * zc.clone();
                    }
                }
            }
        }
    }

    /// Cyclic slot shift matching (x, y, z) ↦ (z, x, y): T'[c,a,b] = T[a,b,c].
    pub fn shift(&self) -> Self {
        let m = self.m;
        let mut out = Self::zeros(m);
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    out.set(c, a, b, self.get(a, b, c).clone());
                }
            }
        }
        out
    }

    /// Trilinear form Σ T[a,b,c] x[a] y[b] z[c].
    pub fn contract(&self, x: &[S], y: &[S], z: &[S]) -> S {
        let m = self.m;
        let mut acc = S::zero();
        for a in 0..m {
            for b in 0..m {
                let xy = x[a].clone() * y[b].clone();
                if xy.is_zero_value() {
                    continue;
                }
                for c in 0..m {
                    let t = self.get(a, b, c);
                    if !t.is_zero_value() {
                        acc = acc + t.clone() * xy.clone() * z[c].clone();
                    }
                }
            }
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Tensor3<T> {
        Tensor3 {
            m: self.m,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// M⟨n⟩: entry at (flat(i,j), flat(j,k), flat(k,i)) is 1, all others 0.
pub fn matmul_tensor<S: Scalar>(n: usize) -> Tensor3<S> {
    let m = n * n;
    let mut t = Tensor3::zeros(m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                t.set(i * n + j, j * n + k, k * n + i, S::one());
            }
        }
    }
    t
}

pub fn matmul_tensor_exact(n: usize) -> Tensor3<BigRational> {
    matmul_tensor(n)
}

/// Evaluates the trilinear form of M⟨n⟩ on three matrices.
pub fn matmul_form<S: Scalar>(n: usize, x: &Mat<S>, y: &Mat<S>, z: &Mat<S>) -> S {
    matmul_tensor::<S>(n).contract(x.as_slice(), y.as_slice(), z.as_slice())
}
