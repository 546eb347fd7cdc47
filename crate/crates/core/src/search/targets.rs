//! Target matrices for the regularized ALS.

use serde::{Deserialize, Serialize};

use super::factors::{lit, FactorMatrix};
use super::SearchError;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularizationParams {
    pub lambda: f64,
    pub zeros: usize,
    #[serde(default = "one")]
    pub max_abs: f64,
}

fn one() -> f64 {
    1.0
}

impl RegularizationParams {
    pub fn new(lambda: f64, zeros: usize) -> Self {
        RegularizationParams {
            lambda,
            zeros,
            max_abs: 1.0,
        }
    }

    /// Checks λ ≥ 0, max_abs > 0 and zeros ≤ `entries`.
    pub fn validate(&self, entries: usize) -> Result<(), SearchError> {
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return Err(SearchError::InvalidParameter(format!("lambda must be >= 0, got {}", self.lambda)));
        }
        if !(self.max_abs > 0.0) || !self.max_abs.is_finite() {
            return Err(SearchError::InvalidParameter(format!("max_abs must be > 0, got {}", self.max_abs)));
        }
        if self.zeros > entries {
            return Err(SearchError::InvalidParameter(format!(
                "zeros = {} exceeds the {} factor entries",
                self.zeros, entries
            )));
        }
        Ok(())
    }
}

/// Caps entries at ±max_abs, then sets the `zeros` smallest magnitudes to
/// exactly 0 (ties by row, then column).
pub fn build_targets<F: Real>(x: &FactorMatrix<F>, zeros: usize, max_abs: f64) -> FactorMatrix<F> {
    let cap = lit::<F>(max_abs);
    let mut t = x.map(|v| if v.abs() > cap { v.signum() * cap } else { v });
    let mut order: Vec<(usize, usize)> = (0..t.rows())
        .flat_map(|i| (0..t.cols()).map(move |j| (i, j)))
        .collect();
    order.sort_by(|&(i1, j1), &(i2, j2)| {
        t.get(i1, j1)
            .abs()
            .partial_cmp(&t.get(i2, j2).abs())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then((i1, j1).cmp(&(i2, j2)))
    });
    for &(i, j) in order.iter().take(zeros) {
        t.set(i, j, F::zero());
    }
    t
}
