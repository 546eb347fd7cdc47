//! Rank-one terms and decompositions of M⟨n⟩.

use num_rational::BigRational;

use crate::error::CoreError;
use crate::mat::Mat;
use crate::scalar::Scalar;
use crate::symmetry::GeneratorSpec;
use crate::tensor::{matmul_tensor, Tensor3};

/// One summand x ⊗ y ⊗ z.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankOneTriple<S> {
    pub x: Mat<S>,
    pub y: Mat<S>,
    pub z: Mat<S>,
}

impl<S: Scalar> RankOneTriple<S> {
    pub fn new(x: Mat<S>, y: Mat<S>, z: Mat<S>) -> Result<Self, CoreError> {
        let n = x.n();
        for m in [&y, &z] {
            if m.n() != n {
                return Err(CoreError::DimensionMismatch {
                    expected: n,
                    found: m.n(),
                });
            }
        }
        Ok(RankOneTriple { x, y, z })
    }

    /// The symmetric term m ⊗ m ⊗ m.
    pub fn cube(m: Mat<S>) -> Self {
        RankOneTriple {
            x: m.clone(),
            y: m.clone(),
            z: m,
        }
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    pub fn is_cube(&self) -> bool {
        self.x == self.y && self.y == self.z
    }

    /// A term is valid iff none of its factors is the zero matrix.
    pub fn is_valid(&self) -> bool {
        !(self.x.is_zero() || self.y.is_zero() || self.z.is_zero())
    }

    pub fn slots(&self) -> [&Mat<S>; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> RankOneTriple<T> {
        RankOneTriple {
            x: self.x.map(f),
            y: self.y.map(f),
            z: self.z.map(f),
        }
    }

    /// (x, y, z) ↦ (z, x, y).
    pub fn rotate(&self) -> Self {
        RankOneTriple {
            x: self.z.clone(),
            y: self.x.clone(),
            z: self.y.clone(),
        }
    }
}

/// An ordered list of rank-one terms claimed to sum to M⟨n⟩.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<S> {
    n: usize,
    terms: Vec<RankOneTriple<S>>,
    pub name: String,
    pub note: Option<String>,
    pub generators: Vec<GeneratorSpec>,
}

impl<S: Scalar> Decomposition<S> {
    /// Validates dimensions, zero factors and finiteness.
    pub fn new(n: usize, terms: Vec<RankOneTriple<S>>, name: impl Into<String>) -> Result<Self, CoreError> {
        if n == 0 {
            return Err(CoreError::EmptyDimension);
        }
        for (i, t) in terms.iter().enumerate() {
            for (slot, m) in ['x', 'y', 'z'].into_iter().zip(t.slots()) {
                if m.n() != n {
                    return Err(CoreError::DimensionMismatch {
                        expected: n,
                        found: m.n(),
                    });
                }
                if m.is_zero() {
                    return Err(CoreError::ZeroFactor { term: i, slot });
                }
                if !m.is_finite() {
                    return Err(CoreError::NonFinite { term: i });
                }
            }
        }
        Ok(Decomposition {
            n,
            terms,
            name: name.into(),
            note: None,
            generators: Vec::new(),
        })
    }

    pub fn with_generators(mut self, generators: Vec<GeneratorSpec>) -> Self {
        self.generators = generators;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[RankOneTriple<S>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<RankOneTriple<S>> {
        self.terms
    }

    /// Same metadata, new term list (validated).
    pub fn with_terms(&self, terms: Vec<RankOneTriple<S>>) -> Result<Self, CoreError> {
        let mut d = Decomposition::new(self.n, terms, self.name.clone())?;
        d.note = self.note.clone();
        d.generators = self.generators.clone();
        Ok(d)
    }

    pub fn without_term(&self, index: usize) -> Self {
        let mut d = self.clone();
        d.terms.remove(index);
        d
    }

    /// Σ x_j ⊗ y_j ⊗ z_j.
    pub fn evaluate(&self) -> Tensor3<S> {
        let mut t = Tensor3::zeros(self.n * self.n);
        for term in &self.terms {
            t.add_outer(term.x.as_slice(), term.y.as_slice(), term.z.as_slice());
        }
        t
    }

    /// M⟨n⟩ − evaluate(self) and its squared Frobenius norm.
    pub fn residual(&self) -> (Tensor3<S>, S) {
        let r = matmul_tensor::<S>(self.n).sub(&self.evaluate());
        let norm = r.norm_sq();
        (r, norm)
    }

    pub fn is_exact_fit(&self) -> bool {
        self.residual().0.is_zero()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> Decomposition<T> {
        Decomposition {
            n: self.n,
            terms: self.terms.iter().map(|t| t.map(f)).collect(),
            name: self.name.clone(),
            note: self.note.clone(),
            generators: self.generators.clone(),
        }
    }
}

impl Decomposition<BigRational> {
    pub fn to_f64(&self) -> Decomposition<f64> {
        self.map(|v| Scalar::to_f64(v))
    }
}

/// The n³-term decomposition Σ E_ij ⊗ E_jk ⊗ E_ki.
pub fn standard_decomposition<S: Scalar>(n: usize) -> Decomposition<S> {
    let mut terms = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                terms.push(RankOneTriple {
                    x: Mat::unit(n, i, j),
                    y: Mat::unit(n, j, k),
                    z: Mat::unit(n, k, i),
                });
            }
        }
    }
    Decomposition::new(n, terms, format!("standard{n}")).expect("standard terms are valid")
}
