//! Snapping float factors onto a finite set of rationals.

use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::factors::CyclicFactors;
use super::{default_value_set, SearchError, DEFAULT_TOL};
use crate::decomposition::{Decomposition, RankOneTriple};
use crate::mat::Mat;
use crate::scalar::format_rational;

#[derive(Clone, Debug, PartialEq)]
pub struct RoundOptions {
    pub value_set: Vec<BigRational>,
    pub tol: f64,
    /// Return the rounded decomposition even when its residual is nonzero.
    pub allow_nonzero: bool,
}

impl RoundOptions {
    /// Nonempty value set and 0 ≤ tol < half the smallest gap.
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.value_set.is_empty() {
            return Err(SearchError::InvalidParameter("empty value set".into()));
        }
        if let Some(half_gap) = half_min_gap(&self.value_set) {
            if !(self.tol < half_gap) {
                return Err(SearchError::InvalidTolerance { tol: self.tol, half_gap });
            }
        }
        if !(self.tol >= 0.0) {
            return Err(SearchError::InvalidParameter("tol must be >= 0".into()));
        }
        Ok(())
    }
}

impl Default for RoundOptions {
    fn default() -> Self {
        RoundOptions {
            value_set: default_value_set(),
            tol: DEFAULT_TOL,
            allow_nonzero: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OffendingEntry {
    /// 'A', 'B', 'C' or 'D'.
    pub block: char,
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

impl fmt::Display for OffendingEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}] = {}", self.block, self.row, self.col, self.value)
    }
}

#[derive(Clone, Debug)]
pub enum RoundFailure {
    OutOfTolerance(Vec<OffendingEntry>),
    NonzeroResidual {
        norm_sq: BigRational,
        decomposition: Box<Decomposition<BigRational>>,
    },
    Empty,
}

impl fmt::Display for RoundFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoundFailure::OutOfTolerance(entries) => {
                write!(f, "{} entries outside tolerance:", entries.len())?;
                for e in entries.iter().take(8) {
                    write!(f, " {e}")?;
                }
                if entries.len() > 8 {
                    write!(f, " ...")?;
                }
                Ok(())
            }
            RoundFailure::NonzeroResidual { norm_sq, .. } => {
                write!(f, "rounded decomposition has residual norm^2 {}", format_rational(norm_sq))
            }
            RoundFailure::Empty => write!(f, "every term rounded to zero"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RoundSuccess {
    pub decomposition: Decomposition<BigRational>,
    pub residual_norm_sq: BigRational,
    /// Assembled term indices dropped because a factor rounded to zero.
    pub dropped_terms: Vec<usize>,
}

fn half_min_gap(values: &[BigRational]) -> Option<f64> {
    let mut v: Vec<f64> = values.iter().filter_map(|q| q.to_f64()).collect();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    v.dedup();
    if v.len() < 2 {
        return None;
    }
    Some(v.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min) / 2.0)
}

/// Rounds every entry of A, B, C, D to the unique value within `tol`,
/// assembles the exact decomposition and verifies its residual.
///
/// The outer error is a precondition failure; the inner one a report.
pub fn round_decomposition(
    f: &CyclicFactors<f64>,
    opts: &RoundOptions,
) -> Result<Result<RoundSuccess, RoundFailure>, SearchError> {
    opts.validate()?;
    let values: Vec<(f64, &BigRational)> = opts
        .value_set
        .iter()
        .map(|q| (q.to_f64().unwrap_or(f64::NAN), q))
        .collect();
    let n = f.n;
    let mut offending = Vec::new();
    let mut exact_blocks = Vec::new();
    for (block, letter) in f.blocks().iter().zip(['A', 'B', 'C', 'D']) {
        let mut cols = Vec::new();
        for j in 0..block.cols() {
            let mut col = Vec::new();
            for (i, v) in block.col(j).iter().enumerate() {
                match values.iter().find(|(x, _)| (x - v).abs() <= opts.tol) {
                    Some((_, q)) => col.push((*q).clone()),
                    None => {
                        offending.push(OffendingEntry {
                            block: letter,
                            row: i,
                            col: j,
                            value: *v,
                        });
                        col.push(BigRational::zero());
                    }
                }
            }
            cols.push(Mat::from_vec(n, col).expect("n² entries"));
        }
        exact_blocks.push(cols);
    }
    if !offending.is_empty() {
        return Ok(Err(RoundFailure::OutOfTolerance(offending)));
    }
    let [a, b, c, d] = <[Vec<Mat<BigRational>>; 4]>::try_from(exact_blocks).expect("four blocks");
    let mut triples = Vec::new();
    for m in &a {
        triples.push((m.clone(), m.clone(), m.clone()));
    }
    // X = (A B C D), Y = (A D B C), Z = (A C D B)
    for (x, y, z) in [(&b, &d, &c), (&c, &b, &d), (&d, &c, &b)] {
        for j in 0..b.len() {
            triples.push((x[j].clone(), y[j].clone(), z[j].clone()));
        }
    }
    let mut terms = Vec::new();
    let mut dropped_terms = Vec::new();
    for (idx, (x, y, z)) in triples.into_iter().enumerate() {
        if x.is_zero() || y.is_zero() || z.is_zero() {
            dropped_terms.push(idx);
        } else {
            terms.push(RankOneTriple { x, y, z });
        }
    }
    if terms.is_empty() {
        return Ok(Err(RoundFailure::Empty));
    }
    let decomposition = Decomposition::new(n, terms, "rounded")?;
    let (_, residual_norm_sq) = decomposition.residual();
    if !residual_norm_sq.is_zero() && !opts.allow_nonzero {
        return Ok(Err(RoundFailure::NonzeroResidual {
            norm_sq: residual_norm_sq,
            decomposition: Box::new(decomposition),
        }));
    }
    Ok(Ok(RoundSuccess {
        decomposition,
        residual_norm_sq,
        dropped_terms,
    }))
}
