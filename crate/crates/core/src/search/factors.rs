//! Factor matrices and the cyclic (A, B, C, D) block layout.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SearchError;
use crate::decomposition::{Decomposition, RankOneTriple};
use crate::mat::Mat;
use crate::scalar::{Real, Scalar};
use crate::symmetry::{orbit_partition, GroupElement};

pub(crate) fn lit<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("representable constant")
}

/// m×r matrix stored column by column; column j is term j's factor.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorMatrix<F> {
    m: usize,
    r: usize,
    data: Vec<F>,
}

impl<F: Real> FactorMatrix<F> {
    pub fn zeros(m: usize, r: usize) -> Self {
        FactorMatrix {
            m,
            r,
            data: vec![F::zero(); m * r],
        }
    }

    pub fn from_columns(m: usize, cols: &[Vec<F>]) -> Self {
        let mut out = Self::zeros(m, cols.len());
        for (j, c) in cols.iter().enumerate() {
            out.col_mut(j).copy_from_slice(c);
        }
        out
    }

    /// Builds from row-major nested rows (m rows of r entries).
    pub fn from_rows(rows: &[Vec<F>]) -> Option<Self> {
        let m = rows.len();
        let r = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != r) {
            return None;
        }
        let mut out = Self::zeros(m, r);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out.set(i, j, *v);
            }
        }
        Some(out)
    }

    pub fn random(m: usize, r: usize, max_abs: F, rng: &mut impl Rng) -> Self {
        let mut out = Self::zeros(m, r);
        for v in out.data.iter_mut() {
            let u: f64 = rng.random_range(-1.0..=1.0);
            *v = lit::<F>(u) * max_abs;
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.m
    }
    pub fn cols(&self) -> usize {
        self.r
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> F {
        self.data[j * self.m + i]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[j * self.m + i] = v;
    }
    pub fn col(&self, j: usize) -> &[F] {
        &self.data[j * self.m..(j + 1) * self.m]
    }
    pub fn col_mut(&mut self, j: usize) -> &mut [F] {
        &mut self.data[j * self.m..(j + 1) * self.m]
    }
    /// Column-major entries.
    pub fn as_slice(&self) -> &[F] {
        &self.data
    }
    pub fn as_mut_slice(&mut self) -> &mut [F] {
        &mut self.data
    }

    pub fn row_major(&self) -> Vec<Vec<F>> {
        (0..self.m)
            .map(|i| (0..self.r).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Columns `start..start+len` as a new matrix.
    pub fn block(&self, start: usize, len: usize) -> Self {
        FactorMatrix {
            m: self.m,
            r: len,
            data: self.data[start * self.m..(start + len) * self.m].to_vec(),
        }
    }

    pub fn concat(blocks: &[&FactorMatrix<F>]) -> Self {
        let m = blocks.first().map_or(0, |b| b.m);
        let mut data = Vec::new();
        let mut r = 0;
        for b in blocks {
            assert_eq!(b.m, m, "row count mismatch");
            data.extend_from_slice(&b.data);
            r += b.r;
        }
        FactorMatrix { m, r, data }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn count_below(&self, threshold: F) -> usize {
        self.data.iter().filter(|v| v.abs() < threshold).count()
    }

    /// Gram matrix FᵀF, r×r row-major.
    pub fn gram(&self) -> Vec<F> {
        let r = self.r;
        let mut g = vec![F::zero(); r * r];
        for i in 0..r {
            for j in i..r {
                let v = self
                    .col(i)
                    .iter()
                    .zip(self.col(j))
                    .fold(F::zero(), |acc, (a, b)| acc + *a * *b);
                g[i * r + j] = v;
                g[j * r + i] = v;
            }
        }
        g
    }

    pub fn max_abs_diff(&self, other: &Self) -> F {
        self.data
            .iter()
            .zip(&other.data)
            .fold(F::zero(), |acc, (a, b)| acc.max((*a - *b).abs()))
    }

    pub fn map(&self, f: impl Fn(F) -> F) -> Self {
        FactorMatrix {
            m: self.m,
            r: self.r,
            data: self.data.iter().map(|v| f(*v)).collect(),
        }
    }
}

/// Which factor of a CP model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Slot {
    X,
    Y,
    Z,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::X, Slot::Y, Slot::Z];
}

/// Unstructured factors X, Y, Z (m×R each, m = n²).
#[derive(Clone, Debug, PartialEq)]
pub struct FactorMatrices<F> {
    pub n: usize,
    pub x: FactorMatrix<F>,
    pub y: FactorMatrix<F>,
    pub z: FactorMatrix<F>,
}

impl<F: Real> FactorMatrices<F> {
    pub fn new(n: usize, x: FactorMatrix<F>, y: FactorMatrix<F>, z: FactorMatrix<F>) -> Result<Self, SearchError> {
        let m = n * n;
        for f in [&x, &y, &z] {
            if f.rows() != m || f.cols() != x.cols() {
                return Err(SearchError::Shape(format!(
                    "factor is {}x{}, expected {}x{}",
                    f.rows(),
                    f.cols(),
                    m,
                    x.cols()
                )));
            }
            if !f.is_finite() {
                return Err(SearchError::NonFinite);
            }
        }
        Ok(FactorMatrices { n, x, y, z })
    }

    pub fn rank(&self) -> usize {
        self.x.cols()
    }

    pub fn slot(&self, s: Slot) -> &FactorMatrix<F> {
        match s {
            Slot::X => &self.x,
            Slot::Y => &self.y,
            Slot::Z => &self.z,
        }
    }

    pub fn slot_mut(&mut self, s: Slot) -> &mut FactorMatrix<F> {
        match s {
            Slot::X => &mut self.x,
            Slot::Y => &mut self.y,
            Slot::Z => &mut self.z,
        }
    }

    pub fn from_decomposition<S: Scalar>(d: &Decomposition<S>) -> Self {
        let m = d.n() * d.n();
        let conv = |f: fn(&RankOneTriple<S>) -> &Mat<S>| {
            let cols: Vec<Vec<F>> = d
                .terms()
                .iter()
                .map(|t| f(t).as_slice().iter().map(|v| lit::<F>(v.to_f64())).collect())
                .collect();
            FactorMatrix::from_columns(m, &cols)
        };
        FactorMatrices {
            n: d.n(),
            x: conv(|t| &t.x),
            y: conv(|t| &t.y),
            z: conv(|t| &t.z),
        }
    }

    pub fn to_decomposition(&self) -> Result<Decomposition<F>, SearchError> {
        let n = self.n;
        let mat = |c: &[F]| Mat::from_vec(n, c.to_vec()).expect("n² entries");
        let terms = (0..self.rank())
            .map(|j| RankOneTriple {
                x: mat(self.x.col(j)),
                y: mat(self.y.col(j)),
                z: mat(self.z.col(j)),
            })
            .collect();
        Ok(Decomposition::new(n, terms, "factors")?)
    }
}

/// Cyclic-invariant factors with X = (A B C D), Y = (A D B C),
/// Z = (A C D B); A is m×P, the others m×Q, R = P + 3Q.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicFactors<F> {
    pub n: usize,
    pub a: FactorMatrix<F>,
    pub b: FactorMatrix<F>,
    pub c: FactorMatrix<F>,
    pub d: FactorMatrix<F>,
}

impl<F: Real> CyclicFactors<F> {
    pub fn new(
        n: usize,
        a: FactorMatrix<F>,
        b: FactorMatrix<F>,
        c: FactorMatrix<F>,
        d: FactorMatrix<F>,
    ) -> Result<Self, SearchError> {
        let m = n * n;
        if [&a, &b, &c, &d].iter().any(|f| f.rows() != m) || b.cols() != c.cols() || c.cols() != d.cols() {
            return Err(SearchError::Shape("inconsistent cyclic blocks".into()));
        }
        Ok(CyclicFactors { n, a, b, c, d })
    }

    pub fn zeros(n: usize, p: usize, q: usize) -> Self {
        let m = n * n;
        CyclicFactors {
            n,
            a: FactorMatrix::zeros(m, p),
            b: FactorMatrix::zeros(m, q),
            c: FactorMatrix::zeros(m, q),
            d: FactorMatrix::zeros(m, q),
        }
    }

    /// Entries uniform on [−max_abs, max_abs].
    pub fn random(n: usize, p: usize, q: usize, max_abs: F, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = n * n;
        CyclicFactors {
            n,
            a: FactorMatrix::random(m, p, max_abs, &mut rng),
            b: FactorMatrix::random(m, q, max_abs, &mut rng),
            c: FactorMatrix::random(m, q, max_abs, &mut rng),
            d: FactorMatrix::random(m, q, max_abs, &mut rng),
        }
    }

    pub fn p(&self) -> usize {
        self.a.cols()
    }
    pub fn q(&self) -> usize {
        self.b.cols()
    }
    pub fn rank(&self) -> usize {
        self.p() + 3 * self.q()
    }

    pub fn blocks(&self) -> [&FactorMatrix<F>; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn blocks_mut(&mut self) -> [&mut FactorMatrix<F>; 4] {
        [&mut self.a, &mut self.b, &mut self.c, &mut self.d]
    }

    pub fn param_count(&self) -> usize {
        self.blocks().iter().map(|b| b.as_slice().len()).sum()
    }

    /// Flattened parameters: A, B, C, D, each column-major.
    pub fn to_params(&self) -> Vec<F> {
        self.blocks().iter().flat_map(|b| b.as_slice().iter().copied()).collect()
    }

    pub fn set_params(&mut self, theta: &[F]) {
        let mut off = 0;
        for b in self.blocks_mut() {
            let len = b.as_slice().len();
            b.as_mut_slice().copy_from_slice(&theta[off..off + len]);
            off += len;
        }
    }

    pub fn assemble(&self) -> FactorMatrices<F> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        FactorMatrices {
            n: self.n,
            x: FactorMatrix::concat(&[a, b, c, d]),
            y: FactorMatrix::concat(&[a, d, b, c]),
            z: FactorMatrix::concat(&[a, c, d, b]),
        }
    }

    pub fn sparsity(&self, threshold: F) -> usize {
        self.blocks().iter().map(|b| b.count_below(threshold)).sum()
    }

    /// Casts a shift-invariant exact decomposition: each cube m⊗m⊗m gives
    /// a column of A, each shift orbit {x⊗y⊗z, z⊗x⊗y, y⊗z⊗x} gives
    /// b = x, d = y, c = z.
    pub fn from_decomposition(d: &Decomposition<BigRational>) -> Result<Self, SearchError> {
        let orbits = orbit_partition(d, &[GroupElement::pi(d.n())])
            .map_err(|_| SearchError::Shape("decomposition is not shift invariant".into()))?;
        let m = d.n() * d.n();
        let f = |mat: &Mat<BigRational>| -> Vec<F> { mat.as_slice().iter().map(|v| lit::<F>(v.to_f64())).collect() };
        let (mut a, mut b, mut c, mut dd) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for orbit in orbits {
            let t = &d.terms()[orbit[0]];
            match orbit.len() {
                1 => {
                    // x⊗y⊗z = s·x⊗x⊗x with y = βx, z = γx
                    let x = f(&t.x);
                    let piv = x.iter().position(|v| *v != F::zero()).expect("nonzero factor");
                    let s = f(&t.y)[piv] / x[piv] * (f(&t.z)[piv] / x[piv]);
                    let k = s.cbrt();
                    a.push(x.iter().map(|v| *v * k).collect());
                }
                3 => {
                    b.push(f(&t.x));
                    dd.push(f(&t.y));
                    c.push(f(&t.z));
                }
                _ => return Err(SearchError::Shape("unexpected orbit size".into())),
            }
        }
        Ok(CyclicFactors {
            n: d.n(),
            a: FactorMatrix::from_columns(m, &a),
            b: FactorMatrix::from_columns(m, &b),
            c: FactorMatrix::from_columns(m, &c),
            d: FactorMatrix::from_columns(m, &dd),
        })
    }
}

/// Averages the copies of each block back into the cyclic layout.
pub fn cyclic_project<F: Real>(f: &FactorMatrices<F>, p: usize, q: usize) -> Result<CyclicFactors<F>, SearchError> {
    if f.rank() != p + 3 * q {
        return Err(SearchError::Layout { p, q, r: f.rank() });
    }
    let third = lit::<F>(1.0 / 3.0);
    let blk = |m: &FactorMatrix<F>, i: usize| if i == 0 { m.block(0, p) } else { m.block(p + (i - 1) * q, q) };
    let avg = |u: FactorMatrix<F>, v: FactorMatrix<F>, w: FactorMatrix<F>| {
        let mut out = u.clone();
        for (k, o) in out.as_mut_slice().iter_mut().enumerate() {
            *o = (u.as_slice()[k] + v.as_slice()[k] + w.as_slice()[k]) * third;
        }
        out
    };
    Ok(CyclicFactors {
        n: f.n,
        a: avg(blk(&f.x, 0), blk(&f.y, 0), blk(&f.z, 0)),
        b: avg(blk(&f.x, 1), blk(&f.y, 2), blk(&f.z, 3)),
        c: avg(blk(&f.x, 2), blk(&f.y, 3), blk(&f.z, 1)),
        d: avg(blk(&f.x, 3), blk(&f.y, 1), blk(&f.z, 2)),
    })
}
