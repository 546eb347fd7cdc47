//! Two-phase numerical search: cyclic-invariant least squares, then
//! regularized ALS with target matrices, projection and rounding.

mod als;
mod factor_file;
mod factors;
mod objective;
mod phase1;
mod pipeline;
mod round;
mod schedule;
mod targets;

pub use als::als_update;
pub use factor_file::{parse_factors, perturb, to_factor_json, FACTOR_FORMAT};
pub use factors::{cyclic_project, CyclicFactors, FactorMatrices, FactorMatrix, Slot};
pub use objective::{gradient_cyclic, gradient_full, model_tensor, objective_cyclic, objective_full, objective_full_sq};
pub use phase1::{phase1_from, phase1_optimize, phase1_restarts, Phase1Method, Phase1Options, Phase1Result};
pub use pipeline::{run_restart, run_search, RestartReport, SearchConfig, SearchReport};
pub use round::{round_decomposition, OffendingEntry, RoundFailure, RoundOptions, RoundSuccess};
pub use schedule::{
    run_schedule, HistoryEntry, PhaseSpec, RoundOutcome, Schedule, ScheduleEvent, SessionState, SparsifyPlan, FINAL_LAMBDA,
    HISTORY_CAPACITY,
};
pub use targets::{build_targets, RegularizationParams};

use num_rational::BigRational;

use crate::error::CoreError;

/// Entries with magnitude below this count as zero for sparsity.
pub const ZERO_THRESHOLD: f64 = 1e-3;

/// Default rounding tolerance.
pub const DEFAULT_TOL: f64 = 1e-2;

/// {0, ±1}.
pub fn default_value_set() -> Vec<BigRational> {
    [0, 1, -1].iter().map(|v| crate::scalar::int(*v)).collect()
}

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("non-finite entry in factors")]
    NonFinite,
    #[error("layout P={p}, Q={q} does not match rank {r} (need P + 3Q = R)")]
    Layout { p: usize, q: usize, r: usize },
    #[error("Gram system for slot {0:?} is singular; use lambda > 0")]
    SingularGram(Slot),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("tolerance {tol} is not below half the minimum gap {half_gap} of the value set")]
    InvalidTolerance { tol: f64, half_gap: f64 },
    #[error("factor file: {0}")]
    FactorFile(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}
