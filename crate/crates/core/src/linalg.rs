//! Exact row reduction and small dense float solves.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Real;

/// Reduces `rows` to row echelon form in place and returns the rank.
pub fn rank_rational(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone() / pivot.clone();
            for c in col..ncols {
                let v = rows[rank][c].clone() * f.clone();
                rows[r][c] -= v;
            }
        }
        rank += 1;
    }
    rank
}

pub fn det_rational(mut rows: Vec<Vec<BigRational>>) -> BigRational {
    let n = rows.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            rows.swap(p, col);
            det = -det;
        }
        let pivot = rows[col][col].clone();
        det *= pivot.clone();
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone() / pivot.clone();
            for c in col..n {
                let v = rows[col][c].clone() * f.clone();
                rows[r][c] -= v;
            }
        }
    }
    det
}

/// Solves `a x = b` exactly; `None` if `a` is singular.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, col);
        let pivot = m[col][col].clone();
        for c in col..=n {
            m[col][c] = m[col][c].clone() / pivot.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let v = m[col][c].clone() * f.clone();
                    m[r][c] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Sparse integer vector keyed by column.
pub type SparseRow = BTreeMap<usize, BigInt>;

/// Incremental fraction-free echelon basis over the integers (hence the
/// rationals). Rows are kept primitive with a positive leading entry.
#[derive(Default, Debug, Clone)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a rational row; returns true if it increased the rank.
    pub fn insert_rational(&mut self, row: &BTreeMap<usize, BigRational>) -> bool {
        let lcm = row
            .values()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let int_row: SparseRow = row
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(&k, v)| (k, (v * BigRational::from_integer(lcm.clone())).to_integer()))
            .collect();
        self.insert(int_row)
    }

    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => {
                    let a = p[&lead].clone();
                    let b = row[&lead].clone();
                    let g = a.gcd(&b);
                    let (fa, fb) = (&a / &g, &b / &g);
                    // row <- fa*row - fb*p, which clears the lead entry
                    let mut next = SparseRow::new();
                    for (&k, v) in &row {
                        next.insert(k, v * &fa);
                    }
                    for (&k, v) in p {
                        let e = next.entry(k).or_insert_with(BigInt::zero);
                        *e -= v * &fb;
                    }
                    next.retain(|_, v| !v.is_zero());
                    make_primitive(&mut next);
                    row = next;
                }
                None => {
                    make_primitive(&mut row);
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

fn make_primitive(row: &mut SparseRow) {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let neg = row.values().next().is_some_and(|v| v.is_negative());
    if g.is_zero() {
        return;
    }
    for v in row.values_mut() {
        *v = &*v / &g;
        if neg {
            *v = -&*v;
        }
    }
}

/// Solves the symmetric positive (semi)definite system `a x = b` for
/// several right-hand sides (rows of `b`) by Gaussian elimination with
/// partial pivoting. `a` is k×k row-major. Returns `None` if singular.
pub fn solve_dense<F: Real>(a: &[F], k: usize, rhs: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let mut m = a.to_vec();
    let mut b: Vec<Vec<F>> = rhs.to_vec();
    let scale = m.iter().fold(F::zero(), |acc, v| acc.max(v.abs()));
    let tiny = scale * F::epsilon() * F::from_usize(k.max(1) * 16).unwrap_or(F::one());
    // b stored as rows of right-hand sides; transpose to columns-of-system
    let nrhs = b.len();
    for col in 0..k {
        let (p, pv) = (col..k)
            .map(|r| (r, m[r * k + col].abs()))
            .fold((col, F::neg_infinity()), |acc, x| if x.1 > acc.1 { x } else { acc });
        if !(pv > tiny) {
            return None;
        }
        if p != col {
            for j in 0..k {
                m.swap(p * k + j, col * k + j);
            }
            for r in b.iter_mut() {
                r.swap(p, col);
            }
        }
        let pivot = m[col * k + col];
        for r in col + 1..k {
            let f = m[r * k + col] / pivot;
            if f == F::zero() {
                continue;
            }
            for j in col..k {
                let v = m[col * k + j];
                m[r * k + j] = m[r * k + j] - f * v;
            }
            for rr in b.iter_mut() {
                let v = rr[col];
                rr[r] = rr[r] - f * v;
            }
        }
    }
    let mut out = vec![vec![F::zero(); k]; nrhs];
    for (s, rr) in b.iter().enumerate() {
        for i in (0..k).rev() {
            let mut acc = rr[i];
            for j in i + 1..k {
                acc = acc - m[i * k + j] * out[s][j];
            }
            out[s][i] = acc / m[i * k + i];
        }
    }
    Some(out)
}
