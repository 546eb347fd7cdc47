//! Point configurations and framing normalisation.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::graphs::{incidence_graph, ProjPoint};
use super::{GroupElement, SymmetryError};
use crate::decomposition::Decomposition;
use crate::linalg::{rank_rational, solve_rational};
use crate::mat::Mat;

/// Weighted point sets of all rank-one factors: `rows` are the row points
/// (the bottom vertices), `columns` the column points (the top vertices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub rows: Vec<(ProjPoint, usize)>,
    pub columns: Vec<(ProjPoint, usize)>,
}

pub fn extract_configuration(d: &Decomposition<BigRational>) -> Configuration {
    let g = incidence_graph(d);
    Configuration {
        rows: g.bottom,
        columns: g.top,
    }
}

/// e₁, …, eₙ and (1, …, 1).
pub fn default_framing(n: usize) -> Vec<ProjPoint> {
    let mut pts: Vec<ProjPoint> = (0..n)
        .map(|i| ProjPoint::from_i64(&(0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>()))
        .collect();
    pts.push(ProjPoint::from_i64(&vec![1; n]));
    pts
}

/// Image of a column point under p ↦ g p.
pub fn apply_to_point(g: &Mat<BigRational>, p: &ProjPoint) -> ProjPoint {
    let v = p.to_rational();
    let n = g.n();
    let img: Vec<BigRational> = (0..n)
        .map(|i| (0..n).fold(BigRational::zero(), |acc, j| acc + g.get(i, j).clone() * v[j].clone()))
        .collect();
    ProjPoint::from_rational(&img).expect("invertible map")
}

/// The unique projective class g with g·pᵢ ∝ uᵢ for the default framing,
/// returned as the conjugation element (g, g, g).
pub fn normalize_framing(points: &[ProjPoint]) -> Result<GroupElement, SymmetryError> {
    let Some(first) = points.first() else {
        return Err(SymmetryError::DegeneratePosition);
    };
    let n = first.coords().len();
    if points.len() != n + 1 || points.iter().any(|p| p.coords().len() != n) {
        return Err(SymmetryError::DimensionMismatch);
    }
    for skip in 0..=n {
        let rows: Vec<Vec<BigRational>> = points
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, p)| p.to_rational())
            .collect();
        if rank_rational(rows) < n {
            return Err(SymmetryError::DegeneratePosition);
        }
    }
    let p = Mat::from_fn(n, |i, j| BigRational::from_integer(points[j].coords()[i].clone()));
    let lambda = solve_rational(&p.rows(), &points[n].to_rational())
        .ok_or(SymmetryError::DegeneratePosition)?;
    let scaled = Mat::from_fn(n, |i, j| p.get(i, j).clone() * lambda[j].clone());
    let g = scaled.inverse().ok_or(SymmetryError::DegeneratePosition)?;
    let s = g.first_nonzero().cloned().unwrap_or_else(BigRational::one);
    GroupElement::conjugation(g.scale(&(BigRational::one() / s)))
}
