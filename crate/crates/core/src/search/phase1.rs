//! Box-constrained least squares over cyclic-invariant factors.

use serde::{Deserialize, Serialize};

use super::factors::{lit, CyclicFactors};
use super::objective::{gradient_cyclic, model_tensor, objective_cyclic};
use super::SearchError;
use crate::cancel::CancelToken;
use crate::linalg::solve_dense;
use crate::scalar::Real;
use crate::tensor::matmul_tensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Phase1Method {
    /// Levenberg–Marquardt steps clipped to the box, accepted only on decrease.
    #[default]
    LevenbergMarquardt,
    /// Projected gradient with backtracking.
    ProjectedGradient,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Phase1Options {
    pub max_iters: usize,
    /// Stop once the objective (not squared) is at most this.
    pub target: f64,
    pub max_abs: f64,
    pub method: Phase1Method,
}

impl Default for Phase1Options {
    fn default() -> Self {
        Phase1Options {
            max_iters: 2000,
            target: 1e-9,
            max_abs: 1.0,
            method: Phase1Method::LevenbergMarquardt,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Phase1Result<F> {
    pub factors: CyclicFactors<F>,
    pub objective: F,
    pub iterations: usize,
    /// Best objective after each iteration (non-increasing).
    pub history: Vec<F>,
}

/// Random start uniform on the box, then [`phase1_from`].
pub fn phase1_optimize<F: Real>(
    n: usize,
    r: usize,
    p: usize,
    q: usize,
    seed: u64,
    opts: &Phase1Options,
) -> Result<Phase1Result<F>, SearchError> {
    if p + 3 * q != r {
        return Err(SearchError::Layout { p, q, r });
    }
    if n == 0 {
        return Err(SearchError::Shape("n must be positive".into()));
    }
    let start = CyclicFactors::random(n, p, q, lit::<F>(opts.max_abs), seed);
    phase1_from(start, opts, &CancelToken::new())
}

pub fn phase1_from<F: Real>(
    start: CyclicFactors<F>,
    opts: &Phase1Options,
    cancel: &CancelToken,
) -> Result<Phase1Result<F>, SearchError> {
    match opts.method {
        Phase1Method::LevenbergMarquardt => levenberg_marquardt(start, opts, cancel),
        Phase1Method::ProjectedGradient => projected_gradient(start, opts, cancel),
    }
}

fn clamp<F: Real>(v: F, max_abs: F) -> F {
    v.max(-max_abs).min(max_abs)
}

fn squared<F: Real>(f: &CyclicFactors<F>) -> Result<F, SearchError> {
    objective_cyclic(f).map(|v| v * v)
}

/// Where each assembled column draws its parameters from: (block, column).
fn column_sources(p: usize, q: usize) -> [Vec<(usize, usize)>; 3] {
    let layout = [[0, 1, 2, 3], [0, 3, 1, 2], [0, 2, 3, 1]];
    layout.map(|blocks| {
        let mut v: Vec<(usize, usize)> = (0..p).map(|j| (0, j)).collect();
        for b in &blocks[1..] {
            v.extend((0..q).map(|j| (*b, j)));
        }
        v
    })
}

/// Residual model − M⟨n⟩ and its Jacobian (rows m³, row-major by entry).
fn residual_and_jacobian<F: Real>(f: &CyclicFactors<F>) -> (Vec<F>, Vec<F>, usize) {
    let m = f.n * f.n;
    let (p, q) = (f.p(), f.q());
    let offsets = [0, m * p, m * (p + q), m * (p + 2 * q)];
    let k = f.param_count();
    let asm = f.assemble();
    let res: Vec<F> = model_tensor(&asm)
        .sub(&matmul_tensor(f.n))
        .as_slice()
        .to_vec();
    let src = column_sources(p, q);
    let param = |slot: usize, j: usize, i: usize| {
        let (blk, col) = src[slot][j];
        offsets[blk] + col * m + i
    };
    let mut jac = vec![F::zero(); m * m * m * k];
    for j in 0..asm.rank() {
        let (x, y, z) = (asm.x.col(j), asm.y.col(j), asm.z.col(j));
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let row = ((a * m + b) * m + c) * k;
                    jac[row + param(0, j, a)] = jac[row + param(0, j, a)] + y[b] * z[c];
                    jac[row + param(1, j, b)] = jac[row + param(1, j, b)] + x[a] * z[c];
                    jac[row + param(2, j, c)] = jac[row + param(2, j, c)] + x[a] * y[b];
                }
            }
        }
    }
    (res, jac, k)
}

fn levenberg_marquardt<F: Real>(
    start: CyclicFactors<F>,
    opts: &Phase1Options,
    cancel: &CancelToken,
) -> Result<Phase1Result<F>, SearchError> {
    let max_abs = lit::<F>(opts.max_abs);
    let target_sq = lit::<F>(opts.target * opts.target);
    let mut cur = start;
    for b in cur.blocks_mut() {
        for v in b.as_mut_slice() {
            *v = clamp(*v, max_abs);
        }
    }
    let mut f = squared(&cur)?;
    let mut mu = lit::<F>(1e-3);
    let mut history = Vec::new();
    let mut iterations = 0;
    'outer: while iterations < opts.max_iters && f > target_sq && !cancel.is_cancelled() {
        iterations += 1;
        let (res, jac, k) = residual_and_jacobian(&cur);
        let rows = res.len();
        let mut h = vec![F::zero(); k * k];
        let mut g = vec![F::zero(); k];
        for e in 0..rows {
            let row = &jac[e * k..(e + 1) * k];
            let nz: Vec<usize> = (0..k).filter(|&i| row[i] != F::zero()).collect();
            for &i in &nz {
                g[i] = g[i] + row[i] * res[e];
                for &j in &nz {
                    h[i * k + j] = h[i * k + j] + row[i] * row[j];
                }
            }
        }
        let theta = cur.to_params();
        loop {
            let mut hm = h.clone();
            for i in 0..k {
                hm[i * k + i] = hm[i * k + i] + mu;
            }
            let neg_g: Vec<F> = g.iter().map(|v| -*v).collect();
            let accepted = match solve_dense(&hm, k, &[neg_g]) {
                Some(delta) => {
                    let trial: Vec<F> = theta
                        .iter()
                        .zip(&delta[0])
                        .map(|(t, d)| clamp(*t + *d, max_abs))
                        .collect();
                    let mut cand = cur.clone();
                    cand.set_params(&trial);
                    let fc = squared(&cand)?;
                    if fc < f {
                        cur = cand;
                        f = fc;
                        true
                    } else {
                        false
                    }
                }
                None => false,
            };
            if accepted {
                mu = (mu / lit::<F>(3.0)).max(lit::<F>(1e-12));
                break;
            }
            mu = mu * lit::<F>(4.0);
            if mu > lit::<F>(1e12) {
                history.push(f.sqrt());
                break 'outer;
            }
        }
        history.push(f.sqrt());
    }
    Ok(Phase1Result {
        factors: cur,
        objective: f.sqrt(),
        iterations,
        history,
    })
}

fn projected_gradient<F: Real>(
    start: CyclicFactors<F>,
    opts: &Phase1Options,
    cancel: &CancelToken,
) -> Result<Phase1Result<F>, SearchError> {
    let max_abs = lit::<F>(opts.max_abs);
    let target_sq = lit::<F>(opts.target * opts.target);
    let mut cur = start;
    let mut f = squared(&cur)?;
    let mut step = lit::<F>(1e-2);
    let mut history = Vec::new();
    let mut iterations = 0;
    while iterations < opts.max_iters && f > target_sq && !cancel.is_cancelled() {
        iterations += 1;
        let g = gradient_cyclic(&cur)?.to_params();
        let theta = cur.to_params();
        let mut accepted = false;
        for _ in 0..40 {
            let trial: Vec<F> = theta
                .iter()
                .zip(&g)
                .map(|(t, d)| clamp(*t - step * *d, max_abs))
                .collect();
            let decrease = theta
                .iter()
                .zip(&trial)
                .zip(&g)
                .fold(F::zero(), |acc, ((t, s), d)| acc + *d * (*t - *s));
            let mut cand = cur.clone();
            cand.set_params(&trial);
            let fc = squared(&cand)?;
            if fc <= f - lit::<F>(1e-4) * decrease && fc < f {
                cur = cand;
                f = fc;
                step = step * lit::<F>(2.0);
                accepted = true;
                break;
            }
            step = step * lit::<F>(0.5);
        }
        history.push(f.sqrt());
        if !accepted {
            break;
        }
    }
    Ok(Phase1Result {
        factors: cur,
        objective: f.sqrt(),
        iterations,
        history,
    })
}

/// Runs one restart per seed on up to `jobs` threads; results come back
/// in seed order.
pub fn phase1_restarts(
    n: usize,
    p: usize,
    q: usize,
    seeds: &[u64],
    opts: &Phase1Options,
    jobs: usize,
    cancel: &CancelToken,
) -> Vec<(u64, Result<Phase1Result<f64>, SearchError>)> {
    let next = std::sync::atomic::AtomicUsize::new(0);
    let results = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1).min(seeds.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= seeds.len() || cancel.is_cancelled() {
                    break;
                }
                let seed = seeds[i];
                let start = CyclicFactors::<f64>::random(n, p, q, opts.max_abs, seed);
                let r = phase1_from(start, opts, cancel);
                results.lock().expect("poisoned").push((i, seed, r));
            });
        }
    });
    let mut v = results.into_inner().expect("poisoned");
    v.sort_by_key(|(i, _, _)| *i);
    v.into_iter().map(|(_, s, r)| (s, r)).collect()
}
