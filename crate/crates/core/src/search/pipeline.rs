//! Seeded restarts of the full pipeline: phase 1, sparsification, rounding.

use num_rational::BigRational;
use serde::Serialize;

use super::phase1::{phase1_from, Phase1Options};
use super::schedule::{run_schedule, Schedule, SessionState, SparsifyPlan};
use super::{factors::CyclicFactors, SearchError};
use crate::cancel::CancelToken;
use crate::decomposition::Decomposition;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub phase1: Phase1Options,
    /// Phase-1 objective a restart must reach before sparsification.
    pub accept: f64,
    pub schedule: Schedule,
}

impl SearchConfig {
    /// Defaults: z = 55% of a factor matrix's entries.
    pub fn new(n: usize, p: usize, q: usize) -> Self {
        let m = n * n;
        let zeros = (m * (p + 3 * q)) * 11 / 20;
        SearchConfig {
            n,
            p,
            q,
            phase1: Phase1Options::default(),
            accept: 1e-6,
            schedule: Schedule::sparsify(&SparsifyPlan::new(zeros)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RestartReport {
    pub seed: u64,
    pub phase1_objective: f64,
    pub phase1_iterations: usize,
    pub final_objective: Option<f64>,
    pub sparsity: Option<usize>,
    pub exact: bool,
    pub message: String,
    #[serde(skip)]
    pub decomposition: Option<Decomposition<BigRational>>,
}

/// One restart from the uniform random start given by `seed`.
pub fn run_restart(cfg: &SearchConfig, seed: u64, cancel: &CancelToken) -> Result<RestartReport, SearchError> {
    if cfg.p + 3 * cfg.q == 0 {
        return Err(SearchError::InvalidParameter("rank must be positive".into()));
    }
    let start = CyclicFactors::<f64>::random(cfg.n, cfg.p, cfg.q, cfg.phase1.max_abs, seed);
    let p1 = phase1_from(start, &cfg.phase1, cancel)?;
    let mut report = RestartReport {
        seed,
        phase1_objective: p1.objective,
        phase1_iterations: p1.iterations,
        final_objective: None,
        sparsity: None,
        exact: false,
        message: String::new(),
        decomposition: None,
    };
    if !(p1.objective <= cfg.accept) {
        report.message = format!("phase 1 stopped at {:.3e}", p1.objective);
        return Ok(report);
    }
    let state = SessionState::from_cyclic(&p1.factors, seed);
    let (out, _) = run_schedule(&state, &cfg.schedule, cancel, &mut |_| {})?;
    report.final_objective = Some(out.objective);
    report.sparsity = Some(out.sparsity);
    match out.last_round {
        Some(r) => {
            report.exact = r.success;
            report.message = r.message;
            report.decomposition = r.decomposition;
        }
        None => report.message = "schedule made no rounding attempt".into(),
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub restarts: Vec<RestartReport>,
    /// Index into `restarts`: exact results first, then lowest objective,
    /// then lowest seed.
    pub best: Option<usize>,
}

impl SearchReport {
    pub fn best(&self) -> Option<&RestartReport> {
        self.best.map(|i| &self.restarts[i])
    }
}

fn rank_key(r: &RestartReport) -> (bool, f64, u64) {
    (!r.exact, r.final_objective.unwrap_or(r.phase1_objective), r.seed)
}

/// Runs the given seeds on up to `jobs` threads. The report lists the
/// restarts in seed order regardless of scheduling.
pub fn run_search(
    cfg: &SearchConfig,
    seeds: &[u64],
    jobs: usize,
    cancel: &CancelToken,
) -> Result<SearchReport, SearchError> {
    let next = std::sync::atomic::AtomicUsize::new(0);
    let results = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1).min(seeds.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= seeds.len() || cancel.is_cancelled() {
                    break;
                }
                let r = run_restart(cfg, seeds[i], cancel);
                results.lock().expect("poisoned").push((i, r));
            });
        }
    });
    let mut v = results.into_inner().expect("poisoned");
    v.sort_by_key(|(i, _)| *i);
    let restarts = v.into_iter().map(|(_, r)| r).collect::<Result<Vec<_>, _>>()?;
    let best = (0..restarts.len()).min_by(|&a, &b| {
        rank_key(&restarts[a])
            .partial_cmp(&rank_key(&restarts[b]))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(SearchReport { restarts, best })
}
