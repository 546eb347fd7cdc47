//! The single session, its worker and the published snapshot.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use mmsym_core::catalog;
use mmsym_core::search::{
    parse_factors, run_schedule, to_factor_json, FactorMatrices, PhaseSpec, RegularizationParams, Schedule, ScheduleEvent,
    SearchError, SessionState,
};
use mmsym_core::CancelToken;
use tokio::sync::broadcast;

use crate::api::{IterationEvent, SessionCommand, SessionSnapshot, MAX_STEP_ITERATIONS};
use crate::ServiceError;

/// Per-subscriber buffer; a slower reader sees a gap marker.
pub const EVENT_BUFFER: usize = 1024;

#[derive(Clone, Debug)]
pub enum StreamMessage {
    Iteration(IterationEvent),
    /// The session was replaced; open streams end here.
    Reset,
}

/// A validated command, ready for the worker.
enum Job {
    Step(Schedule),
    Project,
    Round(mmsym_core::search::RoundOptions),
    Reset(SessionState),
    Load(FactorMatrices<f64>, usize, usize),
    Save(PathBuf),
}

struct Inner {
    state: Mutex<Option<SessionState>>,
    snapshot: RwLock<Option<Arc<SessionSnapshot>>>,
    busy: AtomicBool,
    events: broadcast::Sender<StreamMessage>,
    output_dir: PathBuf,
    rounds: AtomicU64,
    cancel: CancelToken,
}

/// Shared handle; clones refer to the same session.
#[derive(Clone)]
pub struct Service {
    inner: Arc<Inner>,
}

/// Releases the single-flight flag when the job ends, even on panic.
struct Flight(Arc<Inner>);

impl Drop for Flight {
    fn drop(&mut self) {
        self.0.busy.store(false, Ordering::SeqCst);
    }
}

impl Service {
    /// No session until a Reset or LoadFactors. Round results go to `output_dir`.
    pub fn new(output_dir: impl Into<PathBuf>) -> Self {
        let (events, _) = broadcast::channel(EVENT_BUFFER);
        Service {
            inner: Arc::new(Inner {
                state: Mutex::new(None),
                snapshot: RwLock::new(None),
                busy: AtomicBool::new(false),
                events,
                output_dir: output_dir.into(),
                rounds: AtomicU64::new(0),
                cancel: CancelToken::new(),
            }),
        }
    }

    pub fn with_state(state: SessionState, output_dir: impl Into<PathBuf>) -> Self {
        let s = Self::new(output_dir);
        s.publish(&state, None);
        *s.inner.state.lock().expect("state lock") = Some(state);
        s
    }

    /// Starts from a factor file written by SaveFactors.
    pub fn from_file(path: &Path, seed: u64, output_dir: impl Into<PathBuf>) -> Result<Self, ServiceError> {
        let (f, p, q) = read_factors(path)?;
        let state = SessionState::from_factors(f, p, q, seed).map_err(|e| ServiceError::Invalid(e.to_string()))?;
        Ok(Self::with_state(state, output_dir))
    }

    pub fn snapshot(&self) -> Option<Arc<SessionSnapshot>> {
        self.inner.snapshot.read().expect("snapshot lock").clone()
    }

    pub fn is_busy(&self) -> bool {
        self.inner.busy.load(Ordering::SeqCst)
    }

    pub fn subscribe(&self) -> broadcast::Receiver<StreamMessage> {
        self.inner.events.subscribe()
    }

    /// Stops a running Step at the next iteration boundary. Later
    /// commands are cancelled immediately.
    pub fn shutdown(&self) {
        self.inner.cancel.cancel();
    }

    fn publish(&self, state: &SessionState, last_error: Option<String>) {
        let snap = Arc::new(SessionSnapshot::of(state, last_error));
        *self.inner.snapshot.write().expect("snapshot lock") = Some(snap);
    }

    /// Validates `cmd` and hands it to a worker thread. Returns once the
    /// command is accepted; completion shows up in the snapshot.
    pub fn submit(&self, cmd: SessionCommand) -> Result<(), ServiceError> {
        if self
            .inner
            .busy
            .compare_exchange(false, true, Ordering::SeqCst, Ordering::SeqCst)
            .is_err()
        {
            return Err(ServiceError::Busy);
        }
        let flight = Flight(self.inner.clone());
        let job = self.validate(cmd)?;
        let svc = self.clone();
        tokio::task::spawn_blocking(move || {
            let _flight = flight;
            svc.run(job);
        });
        Ok(())
    }

    fn validate(&self, cmd: SessionCommand) -> Result<Job, ServiceError> {
        let guard = self.inner.state.lock().expect("state lock");
        let current = guard.as_ref();
        let need = || current.ok_or(ServiceError::NoSession);
        let invalid = |e: SearchError| ServiceError::Invalid(e.to_string());
        Ok(match cmd {
            SessionCommand::Step {
                iterations,
                lambda,
                zeros,
                project_every,
            } => {
                let s = need()?;
                if iterations > MAX_STEP_ITERATIONS {
                    return Err(ServiceError::Invalid(format!("iterations must be <= {MAX_STEP_ITERATIONS}")));
                }
                RegularizationParams::new(lambda, zeros)
                    .validate(s.n * s.n * s.rank())
                    .map_err(invalid)?;
                Job::Step(Schedule::new(vec![PhaseSpec {
                    iterations,
                    lambda,
                    zeros,
                    project_every,
                    round_attempt: false,
                }]))
            }
            SessionCommand::Project => {
                need()?;
                Job::Project
            }
            SessionCommand::RoundAttempt { value_set, tol } => {
                need()?;
                let schedule = Schedule {
                    value_set,
                    tol,
                    ..Schedule::new(Vec::new())
                };
                Job::Round(schedule.round_options().map_err(invalid)?)
            }
            SessionCommand::Reset { seed, n, p, q } => {
                let (n, p, q) = match (current, n, p, q) {
                    (_, Some(n), Some(p), Some(q)) => (n, p, q),
                    (Some(s), n, p, q) => (n.unwrap_or(s.n), p.unwrap_or(s.p), q.unwrap_or(s.q)),
                    (None, ..) => return Err(ServiceError::Invalid("no session: Reset needs n, p and q".into())),
                };
                if n == 0 || p + 3 * q == 0 {
                    return Err(ServiceError::Invalid("n and p + 3q must be positive".into()));
                }
                Job::Reset(SessionState::random(n, p, q, seed).map_err(invalid)?)
            }
            SessionCommand::LoadFactors { file } => {
                let (f, p, q) = read_factors(Path::new(&file))?;
                Job::Load(f, p, q)
            }
            SessionCommand::SaveFactors { file } => {
                need()?;
                Job::Save(PathBuf::from(file))
            }
        })
    }

    fn run(&self, job: Job) {
        let mut guard = self.inner.state.lock().expect("state lock");
        let result = match job {
            Job::Reset(fresh) => {
                let _ = self.inner.events.send(StreamMessage::Reset);
                *guard = Some(fresh);
                Ok(())
            }
            Job::Load(f, p, q) => {
                let seed = guard.as_ref().map_or(0, |s| s.seed);
                SessionState::from_factors(f, p, q, seed).map(|s| {
                    let _ = self.inner.events.send(StreamMessage::Reset);
                    *guard = Some(s);
                })
                .map_err(|e| e.to_string())
            }
            job => match guard.as_mut() {
                None => Err("no session".to_string()),
                Some(state) => self.run_on(state, job),
            },
        };
        if let Some(state) = guard.as_ref() {
            self.publish(state, result.err());
        }
    }

    fn run_on(&self, state: &mut SessionState, job: Job) -> Result<(), String> {
        match job {
            Job::Step(schedule) => {
                let events = &self.inner.events;
                let mut forward = |e: &ScheduleEvent| {
                    if let ScheduleEvent::Iteration {
                        iter,
                        objective,
                        sparsity,
                        ..
                    } = *e
                    {
                        let _ = events.send(StreamMessage::Iteration(IterationEvent {
                            iter,
                            objective,
                            sparsity,
                        }));
                    }
                };
                let (next, _) = run_schedule(state, &schedule, &self.inner.cancel, &mut forward).map_err(|e| e.to_string())?;
                *state = next;
                Ok(())
            }
            Job::Project => state.project().map_err(|e| e.to_string()),
            Job::Round(opts) => {
                let outcome = state.round_attempt(&opts).map_err(|e| e.to_string())?;
                if let Some(d) = outcome.decomposition.clone() {
                    let k = self.inner.rounds.fetch_add(1, Ordering::SeqCst);
                    let path = self.inner.output_dir.join(format!("round-{:06}-{k}.json", outcome.iteration));
                    std::fs::create_dir_all(&self.inner.output_dir).map_err(|e| e.to_string())?;
                    catalog::save(&d, &path).map_err(|e| e.to_string())?;
                    if let Some(r) = state.last_round.as_mut() {
                        r.path = Some(path.display().to_string());
                    }
                }
                Ok(())
            }
            Job::Save(path) => std::fs::write(&path, to_factor_json(&state.factors, state.p, state.q))
                .map_err(|e| format!("{}: {e}", path.display())),
            Job::Reset(_) | Job::Load(..) => unreachable!("handled by run"),
        }
    }
}

fn read_factors(path: &Path) -> Result<(FactorMatrices<f64>, usize, usize), ServiceError> {
    let text = std::fs::read_to_string(path).map_err(|e| ServiceError::Invalid(format!("{}: {e}", path.display())))?;
    parse_factors(&text).map_err(|e| ServiceError::Invalid(format!("{}: {e}", path.display())))
}
