//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any failure.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::figures::*;
use common::tables::TABLES;
use common::{compare_incidence, compare_pairing};
use mmsym_core::catalog::{builtin, expand_compact, BUILTIN_NAMES};
use mmsym_core::invariants::*;
use mmsym_core::scalar::int;
use mmsym_core::search::*;
use mmsym_core::symmetry::*;
use mmsym_core::{CancelToken, ExactScalar, Poly, Tensor3};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const M2_SEED: u64 = 1;
const M2_MAX_RESTARTS: u64 = 100;
const RECOVERY_SEED: u64 = 0;
const RECOVERY_SIGMA: f64 = 0.05;
const FD_STEP: f64 = 1e-5;
const FD_TOL: f64 = 1e-5;
const ALS_SLACK: f64 = 1e-10;
const IDEMPOTENT_TOL: f64 = 1e-15;
const OBJECTIVE_TOL: f64 = 1e-12;
const ACCEPT: f64 = 1e-6;

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_verification() -> Check {
    for name in BUILTIN_NAMES {
        let d = builtin(name).map_err(|e| e.to_string())?;
        let (_, norm) = d.residual();
        ensure(norm.is_zero(), || format!("{name}: residual {norm}"))?;
        let want = if *name == "standard3" { 27 } else { 23 };
        ensure(d.rank() == want, || format!("{name}: {} terms", d.rank()))?;
    }
    Ok(())
}

fn compact_cross_check() -> Check {
    for (compact, explicit) in [("z4z3_compact", "z4z3"), ("lader_z3_compact", "lader_z3")] {
        let a = expand_compact(compact).map_err(|e| e.to_string())?;
        let b = builtin(explicit).map_err(|e| e.to_string())?;
        ensure(decompositions_equal(&a, &b), || format!("{compact} differs from {explicit}"))?;
    }
    Ok(())
}

fn orbit_sizes(name: &str, words: &[&str]) -> Result<Vec<usize>, String> {
    let d = builtin(name).map_err(|e| e.to_string())?;
    let gens = words.iter().map(|w| parse_word(w, 3)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let mut sizes: Vec<usize> = orbit_partition(&d, &gens).map_err(|e| e.to_string())?.iter().map(Vec::len).collect();
    sizes.sort();
    Ok(sizes)
}

fn symmetry_verification() -> Check {
    let pi = GroupElement::pi(3);
    for name in ["z4z3", "lader_z3", "twofix_z3", "addtl1", "addtl2", "addtl3"] {
        ensure(is_decomposition_symmetry(&pi, &builtin(name).unwrap()), || format!("pi moves {name}"))?;
    }
    let a0conj = parse_word("a0conj", 3).unwrap();
    let group = generate_group(&[a0conj.clone(), pi], 100).map_err(|e| e.to_string())?;
    ensure(group.len() == 12, || format!("<a0conj, pi> has order {}", group.len()))?;
    let z = builtin("z4z3").unwrap();
    ensure(group.iter().all(|g| is_decomposition_symmetry(g, &z)), || "z4z3 not preserved".into())?;
    let s = orbit_sizes("z4z3", &["a0conj", "pi"])?;
    ensure(s == [1, 2, 4, 4, 12], || format!("z4z3 orbits {s:?}"))?;
    let s = orbit_sizes("lader_z3", &["pi", "lader_phi", "lader_zeta"])?;
    ensure(s == [1, 4, 4, 6, 8], || format!("lader_z3 orbits {s:?}"))?;
    ensure(!is_decomposition_symmetry(&a0conj, &builtin("twofix_z3").unwrap()), || "a0conj preserves twofix_z3".into())
}

fn graph_reproduction() -> Check {
    let graphs = [
        ("standard3", STANDARD3_INCIDENCE, STANDARD3_PAIRING),
        ("z4z3", Z4Z3_INCIDENCE, Z4Z3_PAIRING),
        ("lader_z3", LADER_Z3_INCIDENCE, LADER_Z3_PAIRING),
        ("twofix_z3", TWOFIX_Z3_INCIDENCE, TWOFIX_Z3_PAIRING),
    ];
    for (name, inc, pair) in graphs {
        let d = builtin(name).unwrap();
        compare_incidence(&incidence_graph(&d), &inc).map_err(|e| format!("{name}: {e}"))?;
        let p = pairing_graph(&d);
        compare_pairing(&p, &pair).map_err(|e| format!("{name}: {e}"))?;
        ensure(p.cube_edge_count() == pair.dashed.len(), || {
            format!("{name}: {} dashed edges, want {}", p.cube_edge_count(), pair.dashed.len())
        })?;
    }
    Ok(())
}

fn poly(s: &str) -> Result<Poly, String> {
    Poly::parse(s).ok_or_else(|| format!("bad polynomial {s}"))
}

fn fingerprints() -> Check {
    ensure(TABLES.len() == 6, || format!("{} tables", TABLES.len()))?;
    for (name, (sym, triples)) in TABLES {
        let fp = fingerprint(&builtin(name).unwrap());
        let mut want_sym = BTreeMap::new();
        for (p, c) in *sym {
            want_sym.insert(poly(p)?, *c);
        }
        let mut want_tri = BTreeMap::new();
        for (k, c) in *triples {
            let mut key = [poly(k[0])?, poly(k[1])?, poly(k[2])?];
            key.sort();
            want_tri.insert(key, *c);
        }
        ensure(fp.symmetric == want_sym, || format!("{name}: symmetric part differs"))?;
        ensure(fp.triples == want_tri, || format!("{name}: triple part differs"))?;
    }
    Ok(())
}

fn dimension_formulas() -> Check {
    ensure(z3_invariant_dim(9) == 249, || "z3_invariant_dim(9)".into())?;
    let d = [2, 3, 4].map(znp1_invariant_dim);
    ensure(d == [22, 183, 820], || format!("znp1 dims {d:?}"))?;
    let d = [2, 3, 4].map(znp1_z3_invariant_dim);
    ensure(d == [(8, 2, 10), (43, 20, 63), (164, 112, 276)], || format!("znp1_z3 dims {d:?}"))?;
    let cancel = CancelToken::new();
    let r = projector_rank(&znp1_group(2), &cancel).map_err(|e| e.to_string())?;
    ensure(r.rank == 22, || format!("Z3 conjugation projector rank {}", r.rank))?;
    let r = projector_rank(&znp1_z3_group(3), &cancel).map_err(|e| e.to_string())?;
    ensure(r.rank == 63, || format!("Z4xZ3 projector rank {}", r.rank))
}

fn m3_components() -> Check {
    let c = m3_component_norms();
    ensure(c.outside.is_zero(), || format!("mass outside invariant blocks: {}", c.outside))?;
    let alt0 = ComponentLabel { kind: SummandKind::Alt, labels: [0, 0, 0] };
    for s in znp1_z3_summands(3).into_iter().filter(|s| s.dim > 0) {
        let label = ComponentLabel { kind: s.kind, labels: s.labels };
        let v = c.components.get(&label).cloned().unwrap_or_else(ExactScalar::zero);
        ensure(v.is_zero() == (label == alt0), || format!("{label}: {v}"))?;
    }
    let sum = c.components.values().fold(ExactScalar::zero(), |a, b| a + b);
    ensure(sum == int(27), || format!("component norms sum to {sum}"))
}

fn numerical_properties() -> Check {
    for (n, p, q) in [(2, 1, 2), (3, 11, 4)] {
        for seed in 0..10 {
            let c = CyclicFactors::<f64>::random(n, p, q, 1.0, seed);
            let g = gradient_cyclic(&c).map_err(|e| e.to_string())?.to_params();
            let theta = c.to_params();
            let f = |t: &[f64]| {
                let mut d = c.clone();
                d.set_params(t);
                objective_cyclic(&d).unwrap().powi(2)
            };
            for i in 0..theta.len() {
                let (mut up, mut down) = (theta.clone(), theta.clone());
                up[i] += FD_STEP;
                down[i] -= FD_STEP;
                let fd = (f(&up) - f(&down)) / (2.0 * FD_STEP);
                let err = (fd - g[i]).abs() / g[i].abs().max(1.0);
                ensure(err <= FD_TOL, || format!("gradient ({n},{p},{q}) seed {seed} coord {i}: {err:e}"))?;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for trial in 0..20 {
        let m = 4;
        let t = Tensor3::from_vec(m, (0..m * m * m).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap();
        let mut fm = FactorMatrices::new(
            2,
            FactorMatrix::random(m, 5, 1.0, &mut rng),
            FactorMatrix::random(m, 5, 1.0, &mut rng),
            FactorMatrix::random(m, 5, 1.0, &mut rng),
        )
        .unwrap();
        for slot in Slot::ALL {
            let before = t.sub(&model_tensor(&fm)).norm_sq();
            *fm.slot_mut(slot) = als_update(&t, &fm, slot, 0.0, &FactorMatrix::zeros(m, 5)).map_err(|e| e.to_string())?;
            let after = t.sub(&model_tensor(&fm)).norm_sq();
            ensure(after <= before + ALS_SLACK, || format!("ALS trial {trial}: {before} -> {after}"))?;
        }
    }

    for seed in 0..20 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FactorMatrices::new(
            3,
            FactorMatrix::random(9, 23, 1.0, &mut rng),
            FactorMatrix::random(9, 23, 1.0, &mut rng),
            FactorMatrix::random(9, 23, 1.0, &mut rng),
        )
        .unwrap();
        let once = cyclic_project(&f, 11, 4).unwrap().assemble();
        let twice = cyclic_project(&once, 11, 4).unwrap().assemble();
        let diff: f64 = once.x.max_abs_diff(&twice.x);
        let diff = diff.max(once.y.max_abs_diff(&twice.y)).max(once.z.max_abs_diff(&twice.z));
        ensure(diff <= IDEMPOTENT_TOL, || format!("projection not idempotent: {diff:e}"))?;

        let target = build_targets(&f.x, 100, 0.7);
        ensure(build_targets(&target, 100, 0.7) == target, || "build_targets not idempotent".into())?;

        let c = CyclicFactors::<f64>::random(3, 11, 4, 1.0, seed);
        let gap = (objective_cyclic(&c).unwrap() - objective_full(&c.assemble()).unwrap()).abs();
        ensure(gap <= OBJECTIVE_TOL, || format!("cyclic vs full objective: {gap:e}"))?;
    }
    Ok(())
}

fn recovery() -> Check {
    let z = builtin("z4z3").unwrap();
    let cf = CyclicFactors::<f64>::from_decomposition(&z).map_err(|e| e.to_string())?;
    let noisy = perturb(&cf, RECOVERY_SIGMA, RECOVERY_SEED).map_err(|e| e.to_string())?;
    let state = SessionState::from_cyclic(&noisy, RECOVERY_SEED);
    let schedule = Schedule::sparsify(&SparsifyPlan::new(140));
    let (out, _) = run_schedule(&state, &schedule, &CancelToken::new(), &mut |_| {}).map_err(|e| e.to_string())?;
    let round = out.last_round.ok_or("no rounding attempt")?;
    ensure(round.success, || round.message.clone())?;
    let d = round.decomposition.ok_or("no decomposition")?;
    ensure(decompositions_equal(&d, &z), || "recovered decomposition differs from z4z3".into())
}

fn m2_search() -> Check {
    let mut cfg = SearchConfig::new(2, 1, 2);
    cfg.accept = ACCEPT;
    cfg.schedule = Schedule::sparsify(&SparsifyPlan::new(16));
    cfg.schedule.value_set = Some(["0", "1", "-1", "1/2", "-1/2"].map(String::from).to_vec());
    let cancel = CancelToken::new();
    for seed in (M2_SEED..).take(M2_MAX_RESTARTS as usize) {
        let r = run_restart(&cfg, seed, &cancel).map_err(|e| e.to_string())?;
        if r.exact && r.phase1_objective <= ACCEPT {
            let d = r.decomposition.ok_or("no decomposition")?;
            return ensure(d.rank() == 7 && d.is_exact_fit(), || format!("seed {seed}: rank {}", d.rank()));
        }
    }
    Err(format!("no exact rank-7 decomposition in {M2_MAX_RESTARTS} restarts"))
}

fn main() -> ExitCode {
    let checks: [(&str, fn() -> Check, Duration); 10] = [
        ("exact verification", exact_verification, Duration::from_secs(1)),
        ("compact presentation cross-check", compact_cross_check, Duration::from_secs(1)),
        ("symmetry verification", symmetry_verification, Duration::from_secs(1)),
        ("graph reproduction", graph_reproduction, Duration::from_secs(1)),
        ("fingerprints", fingerprints, Duration::from_secs(1)),
        ("dimension formulas and projector ranks", dimension_formulas, Duration::from_secs(60)),
        ("M3 component check", m3_components, Duration::from_secs(60)),
        ("numerical properties", numerical_properties, Duration::from_secs(30)),
        ("recovery experiment", recovery, Duration::from_secs(120)),
        ("M2 search", m2_search, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (name, check, budget) in checks {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|_| {
            ensure(elapsed <= budget, || format!("took {:.1}s, budget {}s", elapsed.as_secs_f64(), budget.as_secs()))
        });
        match result {
            Ok(()) => println!("PASS {name} ({:.2}s)", elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {name} ({:.2}s): {e}", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
