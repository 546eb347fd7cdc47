//! Session state and the phase schedule driving the sparsification loop.

use std::collections::VecDeque;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::als::als_update;
use super::factors::{cyclic_project, CyclicFactors, FactorMatrices, Slot};
use super::objective::objective_full;
use super::round::{round_decomposition, RoundOptions};
use super::targets::{build_targets, RegularizationParams};
use super::{default_value_set, SearchError, DEFAULT_TOL, ZERO_THRESHOLD};
use crate::cancel::CancelToken;
use crate::decomposition::Decomposition;
use crate::scalar::{format_rational, parse_rational};
use crate::tensor::{matmul_tensor, Tensor3};

pub const HISTORY_CAPACITY: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub iter: u64,
    pub objective: f64,
    pub sparsity: usize,
    pub phase: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundOutcome {
    pub iteration: u64,
    pub success: bool,
    pub message: String,
    pub rank: Option<usize>,
    pub dropped_terms: Vec<usize>,
    /// Where the decomposition was written, if anyone saved it.
    pub path: Option<String>,
    #[serde(skip)]
    pub decomposition: Option<Decomposition<BigRational>>,
}

/// The working point of a sparsification run. ALS acts on the assembled
/// factors; the cyclic blocks are recovered by projection.
#[derive(Clone, Debug)]
pub struct SessionState {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub factors: FactorMatrices<f64>,
    pub objective: f64,
    pub sparsity: usize,
    pub iteration: u64,
    pub history: VecDeque<HistoryEntry>,
    pub seed: u64,
    pub last_round: Option<RoundOutcome>,
}

impl SessionState {
    /// Uniform random start on [−1, 1].
    pub fn random(n: usize, p: usize, q: usize, seed: u64) -> Result<Self, SearchError> {
        if n == 0 {
            return Err(SearchError::InvalidParameter("n must be positive".into()));
        }
        Ok(Self::from_cyclic(&CyclicFactors::random(n, p, q, 1.0, seed), seed))
    }

    pub fn from_cyclic(f: &CyclicFactors<f64>, seed: u64) -> Self {
        Self::from_factors(f.assemble(), f.p(), f.q(), seed).expect("assembled layout is consistent")
    }

    pub fn from_factors(factors: FactorMatrices<f64>, p: usize, q: usize, seed: u64) -> Result<Self, SearchError> {
        if factors.rank() != p + 3 * q {
            return Err(SearchError::Layout { p, q, r: factors.rank() });
        }
        let mut s = SessionState {
            n: factors.n,
            p,
            q,
            factors,
            objective: 0.0,
            sparsity: 0,
            iteration: 0,
            history: VecDeque::new(),
            seed,
            last_round: None,
        };
        s.refresh()?;
        Ok(s)
    }

    pub fn rank(&self) -> usize {
        self.p + 3 * self.q
    }

    pub fn cyclic(&self) -> CyclicFactors<f64> {
        cyclic_project(&self.factors, self.p, self.q).expect("layout checked at construction")
    }

    /// Recomputes the objective and the sparsity count from the factors.
    pub fn refresh(&mut self) -> Result<(), SearchError> {
        self.objective = objective_full(&self.factors)?;
        self.sparsity = self.cyclic().sparsity(ZERO_THRESHOLD);
        Ok(())
    }

    /// Replaces the factors by the assembled cyclic projection.
    pub fn project(&mut self) -> Result<(), SearchError> {
        self.factors = self.cyclic().assemble();
        self.refresh()
    }

    /// Three ALS updates (X, Y, Z), each anchored at its own target.
    pub fn als_sweep(&mut self, t: &Tensor3<f64>, reg: &RegularizationParams) -> Result<(), SearchError> {
        for slot in Slot::ALL {
            let target = build_targets(self.factors.slot(slot), reg.zeros, reg.max_abs);
            let upd = als_update(t, &self.factors, slot, reg.lambda, &target)?;
            if !upd.is_finite() {
                return Err(SearchError::NonFinite);
            }
            *self.factors.slot_mut(slot) = upd;
        }
        Ok(())
    }

    pub fn round_attempt(&mut self, opts: &RoundOptions) -> Result<&RoundOutcome, SearchError> {
        let outcome = match round_decomposition(&self.cyclic(), opts)? {
            Ok(ok) => RoundOutcome {
                iteration: self.iteration,
                success: true,
                message: format!(
                    "exact rank-{} decomposition, residual {}",
                    ok.decomposition.rank(),
                    format_rational(&ok.residual_norm_sq)
                ),
                rank: Some(ok.decomposition.rank()),
                dropped_terms: ok.dropped_terms,
                path: None,
                decomposition: Some(ok.decomposition),
            },
            Err(fail) => RoundOutcome {
                iteration: self.iteration,
                success: false,
                message: fail.to_string(),
                rank: None,
                dropped_terms: Vec::new(),
                path: None,
                decomposition: None,
            },
        };
        Ok(self.last_round.insert(outcome))
    }

    fn record(&mut self, phase: usize) -> HistoryEntry {
        let e = HistoryEntry {
            iter: self.iteration,
            objective: self.objective,
            sparsity: self.sparsity,
            phase,
        };
        if self.history.len() == HISTORY_CAPACITY {
            self.history.pop_front();
        }
        self.history.push_back(e);
        e
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpec {
    pub iterations: usize,
    pub lambda: f64,
    #[serde(default)]
    pub zeros: usize,
    /// Project every this many iterations; 0 never projects.
    #[serde(default)]
    pub project_every: usize,
    #[serde(default)]
    pub round_attempt: bool,
}

/// Smallest λ reached by [`Schedule::sparsify`].
pub const FINAL_LAMBDA: f64 = 1e-3;

/// Parameters of the standard sparsification schedule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparsifyPlan {
    /// Final z: entries per factor matrix targeted to 0.
    pub zeros: usize,
    pub lambda: f64,
    pub ramp_phases: usize,
    pub ramp_iterations: usize,
    pub hold_iterations: usize,
    pub tail_iterations: usize,
    pub project_every: usize,
}

impl SparsifyPlan {
    pub fn new(zeros: usize) -> Self {
        SparsifyPlan {
            zeros,
            lambda: 0.1,
            ramp_phases: 4,
            ramp_iterations: 50,
            hold_iterations: 1000,
            tail_iterations: 100,
            project_every: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    #[serde(default = "schedule_tag")]
    pub format: String,
    pub phases: Vec<PhaseSpec>,
    /// Rationals as strings, e.g. "-1/2"; defaults to {0, ±1}.
    #[serde(default)]
    pub value_set: Option<Vec<String>>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub max_abs: Option<f64>,
}

fn schedule_tag() -> String {
    "mmsym-schedule".into()
}

impl Schedule {
    pub fn new(phases: Vec<PhaseSpec>) -> Self {
        Schedule {
            format: schedule_tag(),
            phases,
            value_set: None,
            tol: None,
            max_abs: None,
        }
    }

    /// Ramp z up at fixed λ, hold, then step λ down by decades to 1e−3
    /// and attempt rounding at the end.
    pub fn sparsify(plan: &SparsifyPlan) -> Self {
        let mut phases = Vec::new();
        let steps = plan.ramp_phases.max(1);
        for i in 0..steps {
            phases.push(PhaseSpec {
                iterations: plan.ramp_iterations,
                lambda: plan.lambda,
                zeros: plan.zeros * (i + 1) / steps,
                project_every: plan.project_every,
                round_attempt: false,
            });
        }
        phases.push(PhaseSpec {
            iterations: plan.hold_iterations,
            lambda: plan.lambda,
            zeros: plan.zeros,
            project_every: plan.project_every,
            round_attempt: false,
        });
        let mut lambda = plan.lambda;
        while lambda > FINAL_LAMBDA * 1.000001 {
            lambda = (lambda / 10.0).max(FINAL_LAMBDA);
            phases.push(PhaseSpec {
                iterations: plan.tail_iterations,
                lambda,
                zeros: plan.zeros,
                project_every: plan.project_every,
                round_attempt: false,
            });
        }
        if let Some(last) = phases.last_mut() {
            last.round_attempt = true;
        }
        Schedule::new(phases)
    }

    pub fn parse(text: &str) -> Result<Self, SearchError> {
        let s: Schedule = serde_json::from_str(text).map_err(|e| SearchError::InvalidParameter(e.to_string()))?;
        if s.format != schedule_tag() {
            return Err(SearchError::InvalidParameter(format!(
                "schedule format tag must be {:?}",
                schedule_tag()
            )));
        }
        s.round_options()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn round_options(&self) -> Result<RoundOptions, SearchError> {
        let value_set = match &self.value_set {
            None => default_value_set(),
            Some(v) => v
                .iter()
                .map(|s| parse_rational(s).map_err(|e| SearchError::InvalidParameter(format!("value {s:?}: {e}"))))
                .collect::<Result<_, _>>()?,
        };
        let opts = RoundOptions {
            value_set,
            tol: self.tol.unwrap_or(DEFAULT_TOL),
            allow_nonzero: false,
        };
        opts.validate()?;
        Ok(opts)
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs.unwrap_or(1.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum ScheduleEvent {
    Iteration {
        iter: u64,
        objective: f64,
        sparsity: usize,
        phase: usize,
    },
    PhaseEnd {
        phase: usize,
        iterations: usize,
        objective: f64,
        sparsity: usize,
    },
    Round {
        phase: usize,
        iter: u64,
        success: bool,
        message: String,
    },
    Cancelled {
        iter: u64,
    },
}

impl ScheduleEvent {
    /// One line of the event log.
    pub fn to_log_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Runs the phases in order on a copy of `state`. Failed rounding
/// attempts are logged and the run continues; `on_event` sees every
/// event as it happens.
pub fn run_schedule(
    state: &SessionState,
    schedule: &Schedule,
    cancel: &CancelToken,
    on_event: &mut dyn FnMut(&ScheduleEvent),
) -> Result<(SessionState, Vec<ScheduleEvent>), SearchError> {
    let mut s = state.clone();
    let t = matmul_tensor::<f64>(s.n);
    let m = s.n * s.n;
    let round_opts = schedule.round_options()?;
    let mut log = Vec::new();
    let mut emit = |e: ScheduleEvent, log: &mut Vec<ScheduleEvent>| {
        on_event(&e);
        log.push(e);
    };
    for (pi, phase) in schedule.phases.iter().enumerate() {
        let reg = RegularizationParams {
            lambda: phase.lambda,
            zeros: phase.zeros,
            max_abs: schedule.max_abs(),
        };
        reg.validate(m * s.rank())?;
        let mut done = 0;
        for k in 0..phase.iterations {
            if cancel.is_cancelled() {
                emit(ScheduleEvent::Cancelled { iter: s.iteration }, &mut log);
                return Ok((s, log));
            }
            s.als_sweep(&t, &reg)?;
            if phase.project_every > 0 && (k + 1) % phase.project_every == 0 {
                s.factors = s.cyclic().assemble();
            }
            s.iteration += 1;
            s.refresh()?;
            let e = s.record(pi);
            done += 1;
            emit(
                ScheduleEvent::Iteration {
                    iter: e.iter,
                    objective: e.objective,
                    sparsity: e.sparsity,
                    phase: pi,
                },
                &mut log,
            );
        }
        emit(
            ScheduleEvent::PhaseEnd {
                phase: pi,
                iterations: done,
                objective: s.objective,
                sparsity: s.sparsity,
            },
            &mut log,
        );
        if phase.round_attempt {
            let r = s.round_attempt(&round_opts)?;
            let e = ScheduleEvent::Round {
                phase: pi,
                iter: r.iteration,
                success: r.success,
                message: r.message.clone(),
            };
            emit(e, &mut log);
        }
    }
    Ok((s, log))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_phase_only_logs() {
        let s = SessionState::random(2, 1, 2, 4).unwrap();
        let sched = Schedule::new(vec![PhaseSpec {
            iterations: 0,
            lambda: 0.1,
            zeros: 0,
            project_every: 0,
            round_attempt: false,
        }]);
        let (out, log) = run_schedule(&s, &sched, &CancelToken::new(), &mut |_| {}).unwrap();
        assert_eq!(out.factors, s.factors);
        assert_eq!(out.iteration, 0);
        assert_eq!(log.len(), 1);
        assert!(matches!(log[0], ScheduleEvent::PhaseEnd { iterations: 0, .. }));
    }

    #[test]
    fn lambda_zero_is_monotone() {
        let s = SessionState::random(2, 1, 2, 11).unwrap();
        let sched = Schedule::new(vec![PhaseSpec {
            iterations: 10,
            lambda: 0.0,
            zeros: 0,
            project_every: 0,
            round_attempt: false,
        }]);
        let (_, log) = run_schedule(&s, &sched, &CancelToken::new(), &mut |_| {}).unwrap();
        let mut prev = s.objective;
        for e in &log {
            if let ScheduleEvent::Iteration { objective, .. } = e {
                assert!(*objective <= prev + 1e-10);
                prev = *objective;
            }
        }
    }

    #[test]
    fn deterministic() {
        let s = SessionState::random(2, 1, 2, 5).unwrap();
        let mut plan = SparsifyPlan::new(4);
        plan.ramp_iterations = 3;
        plan.hold_iterations = 5;
        plan.tail_iterations = 2;
        plan.project_every = 2;
        let sched = Schedule::sparsify(&plan);
        let a = run_schedule(&s, &sched, &CancelToken::new(), &mut |_| {}).unwrap();
        let b = run_schedule(&s, &sched, &CancelToken::new(), &mut |_| {}).unwrap();
        assert_eq!(a.0.factors, b.0.factors);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn cancellation_stops_between_iterations() {
        let s = SessionState::random(2, 1, 2, 5).unwrap();
        let cancel = CancelToken::new();
        cancel.cancel();
        let sched = Schedule::sparsify(&SparsifyPlan::new(0));
        let (out, log) = run_schedule(&s, &sched, &cancel, &mut |_| {}).unwrap();
        assert_eq!(out.iteration, 0);
        assert_eq!(log, vec![ScheduleEvent::Cancelled { iter: 0 }]);
    }

    #[test]
    fn sparsify_shape() {
        let s = Schedule::sparsify(&SparsifyPlan::new(140));
        let lambdas: Vec<f64> = s.phases.iter().map(|p| p.lambda).collect();
        assert_eq!(lambdas.len(), 7);
        assert!((lambdas[6] - FINAL_LAMBDA).abs() < 1e-15);
        assert_eq!(s.phases.iter().map(|p| p.zeros).collect::<Vec<_>>(), vec![35, 70, 105, 140, 140, 140, 140]);
        assert_eq!(s.phases.iter().filter(|p| p.round_attempt).count(), 1);
        assert!(s.phases[6].round_attempt);
    }

    #[test]
    fn schedule_json_round_trip() {
        let mut sched = Schedule::sparsify(&SparsifyPlan::new(30));
        sched.value_set = Some(vec!["0".into(), "1".into(), "-1".into(), "1/2".into(), "-1/2".into()]);
        sched.tol = Some(0.05);
        let back = Schedule::parse(&sched.to_json()).unwrap();
        assert_eq!(back, sched);
        assert_eq!(back.round_options().unwrap().value_set.len(), 5);
        assert!(Schedule::parse(r#"{"format":"x","phases":[]}"#).is_err());
    }
}
