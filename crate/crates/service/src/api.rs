//! Request and response bodies.

use mmsym_core::search::{CyclicFactors, FactorMatrix, HistoryEntry, RoundOutcome, SessionState};
use serde::{Deserialize, Serialize};

/// History entries carried in a snapshot.
pub const HISTORY_WINDOW: usize = 256;

/// Upper bound on iterations in one Step.
pub const MAX_STEP_ITERATIONS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SessionCommand {
    Step {
        iterations: usize,
        lambda: f64,
        #[serde(default)]
        zeros: usize,
        /// Project onto the cyclic layout every k iterations (0 = never).
        #[serde(default)]
        project_every: usize,
    },
    Project,
    RoundAttempt {
        #[serde(default)]
        value_set: Option<Vec<String>>,
        #[serde(default)]
        tol: Option<f64>,
    },
    /// Fresh random start. Omitted dimensions keep the current session's.
    Reset {
        seed: u64,
        #[serde(default)]
        n: Option<usize>,
        #[serde(default)]
        p: Option<usize>,
        #[serde(default)]
        q: Option<usize>,
    },
    LoadFactors {
        file: String,
    },
    SaveFactors {
        file: String,
    },
}

impl SessionCommand {
    pub fn name(&self) -> &'static str {
        match self {
            SessionCommand::Step { .. } => "step",
            SessionCommand::Project => "project",
            SessionCommand::RoundAttempt { .. } => "round_attempt",
            SessionCommand::Reset { .. } => "reset",
            SessionCommand::LoadFactors { .. } => "load_factors",
            SessionCommand::SaveFactors { .. } => "save_factors",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommandReply {
    pub accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Cyclic blocks as row lists, rounded for transport.
#[derive(Clone, Debug, Serialize)]
pub struct BlockGrid {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
    pub c: Vec<Vec<f64>>,
    pub d: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SessionSnapshot {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub seed: u64,
    pub iteration: u64,
    pub objective: f64,
    pub sparsity: usize,
    pub blocks: BlockGrid,
    pub last_round: Option<RoundOutcome>,
    pub last_error: Option<String>,
    pub history: Vec<HistoryEntry>,
}

/// `v` rounded to six significant digits.
pub fn round6(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.5e}").parse().unwrap_or(v)
}

fn grid(m: &FactorMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| round6(m.get(i, j))).collect()).collect()
}

impl SessionSnapshot {
    pub fn of(state: &SessionState, last_error: Option<String>) -> Self {
        let c: CyclicFactors<f64> = state.cyclic();
        let skip = state.history.len().saturating_sub(HISTORY_WINDOW);
        SessionSnapshot {
            n: state.n,
            p: state.p,
            q: state.q,
            r: state.rank(),
            seed: state.seed,
            iteration: state.iteration,
            objective: state.objective,
            sparsity: state.sparsity,
            blocks: BlockGrid {
                a: grid(&c.a),
                b: grid(&c.b),
                c: grid(&c.c),
                d: grid(&c.d),
            },
            last_round: state.last_round.clone(),
            last_error,
            history: state.history.iter().skip(skip).copied().collect(),
        }
    }
}

/// One streamed iteration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationEvent {
    pub iter: u64,
    pub objective: f64,
    pub sparsity: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_digits() {
        assert_eq!(round6(0.123456789), 0.123457);
        assert_eq!(round6(-1234567.0), -1234570.0);
        assert_eq!(round6(0.0), 0.0);
        assert_eq!(round6(1e-9 * 3.14159265), 3.14159e-9);
    }

    #[test]
    fn command_json() {
        let c: SessionCommand = serde_json::from_str(r#"{"type":"step","iterations":5,"lambda":0.1}"#).unwrap();
        assert_eq!(
            c,
            SessionCommand::Step {
                iterations: 5,
                lambda: 0.1,
                zeros: 0,
                project_every: 0
            }
        );
        let c: SessionCommand = serde_json::from_str(r#"{"type":"project"}"#).unwrap();
        assert_eq!(c.name(), "project");
        assert!(serde_json::from_str::<SessionCommand>(r#"{"type":"step","iterations":5}"#).is_err());
        assert!(serde_json::from_str::<SessionCommand>(r#"{"type":"jump"}"#).is_err());
    }

    #[test]
    fn snapshot_window() {
        let s = SessionState::random(2, 1, 2, 0).unwrap();
        let snap = SessionSnapshot::of(&s, None);
        assert_eq!((snap.r, snap.iteration), (7, 0));
        assert_eq!(snap.blocks.a.len(), 4);
        assert_eq!(snap.blocks.a[0].len(), 1);
        assert_eq!(snap.blocks.b[0].len(), 2);
        assert!(snap.history.is_empty());
    }
}
