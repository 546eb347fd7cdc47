use std::fmt::Write as _;
use std::path::Path;

use mmsym_core::catalog::{self, element_from_json, resolve_source};
use mmsym_core::invariants::*;
use mmsym_core::scalar::format_rational;
use mmsym_core::search::{run_search, Schedule, SearchConfig, SparsifyPlan};
use mmsym_core::symmetry::*;
use mmsym_core::{CancelToken, ExactDecomposition};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::args::{AnalyzeArgs, DimsArgs, Group, SearchArgs, ServeArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => m,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

/// What a subcommand reports: a verdict, human text and records.
pub struct Outcome {
    pub ok: bool,
    pub human: String,
    pub records: Vec<Value>,
}

impl Outcome {
    fn new(ok: bool, human: String, record: Value) -> Self {
        Outcome {
            ok,
            human,
            records: vec![record],
        }
    }
}

fn load(src: &str) -> Result<ExactDecomposition, CliError> {
    resolve_source(src).map_err(|e| CliError::Usage(format!("{src}: {e}")))
}

pub fn verify(src: &str) -> Result<Outcome, CliError> {
    let d = load(src)?;
    let (_, norm) = d.residual();
    let zero = norm.is_zero();
    let parts = rank_triple_partition(&d);
    let mut human = format!(
        "{}: {} terms, residual {}\n",
        d.name,
        d.rank(),
        if zero { "0".to_string() } else { format!("nonzero (squared norm {})", format_rational(&norm)) }
    );
    for (k, v) in &parts {
        let _ = writeln!(human, "  ranks ({}, {}, {}): {}", k[0], k[1], k[2], v.len());
    }
    let record = json!({
        "command": "verify",
        "name": d.name,
        "n": d.n(),
        "terms": d.rank(),
        "residual_zero": zero,
        "residual_norm_sq": format_rational(&norm),
        "rank_triples": parts.iter().map(|(k, v)| json!({"ranks": k, "count": v.len()})).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(zero, human, record))
}

fn generators(spec: &str, n: usize) -> Result<Vec<GroupElement>, CliError> {
    let path = Path::new(spec);
    if !path.is_file() {
        return spec
            .split(',')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(|w| parse_word(w, n).map_err(input))
            .collect();
    }
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{spec}: {e}")))?;
    match serde_json::from_str::<Value>(&text) {
        Ok(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, v)| element_from_json(v, n, &format!("generator {i}")).map_err(input))
            .collect(),
        Ok(v) => Ok(vec![element_from_json(&v, n, "element").map_err(input)?]),
        Err(_) => text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|w| !w.is_empty())
            .map(|w| parse_word(w, n).map_err(input))
            .collect(),
    }
}

fn points(list: &[(ProjPoint, usize)]) -> Vec<Value> {
    list.iter().map(|(p, w)| json!({"point": p.to_string(), "weight": w})).collect()
}

pub fn analyze(args: &AnalyzeArgs) -> Result<Outcome, CliError> {
    let d = load(&args.source)?;
    let inc = incidence_graph(&d);
    let pair = pairing_graph(&d);
    let cubes = d.terms().iter().filter(|t| t.is_cube()).count();
    let mut ok = true;
    let mut human = format!(
        "{}: n = {}, {} terms, {} cubes\nincidence graph: {} top, {} bottom, {} edges\npairing graph: {} colour groups, {} cube edges\n",
        d.name,
        d.n(),
        d.rank(),
        cubes,
        inc.top.len(),
        inc.bottom.len(),
        inc.edges.len(),
        pair.color_count(),
        pair.cube_edge_count()
    );
    let mut record = json!({
        "command": "analyze",
        "name": d.name,
        "n": d.n(),
        "terms": d.rank(),
        "cubes": cubes,
        "incidence": {"top": inc.top.len(), "bottom": inc.bottom.len(), "edges": inc.edges.len()},
        "pairing": {"colors": pair.color_count(), "cube_edges": pair.cube_edge_count()},
    });

    if let Some(dir) = &args.graphs {
        let stem = d.name.replace(|c: char| !c.is_ascii_alphanumeric() && c != '_' && c != '-', "_");
        let inc_dot = inc.to_dot(&format!("{stem}_incidence"));
        let pair_dot = pair.to_dot(&format!("{stem}_pairing"));
        match dir {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(|e| internal(format!("{}: {e}", dir.display())))?;
                let a = dir.join(format!("{stem}_incidence.dot"));
                let b = dir.join(format!("{stem}_pairing.dot"));
                std::fs::write(&a, &inc_dot).map_err(|e| internal(format!("{}: {e}", a.display())))?;
                std::fs::write(&b, &pair_dot).map_err(|e| internal(format!("{}: {e}", b.display())))?;
                let _ = writeln!(human, "wrote {} and {}", a.display(), b.display());
                record["graph_files"] = json!([a.display().to_string(), b.display().to_string()]);
            }
            None => {
                human.push_str(&inc_dot);
                human.push_str(&pair_dot);
                record["incidence_dot"] = json!(inc_dot);
                record["pairing_dot"] = json!(pair_dot);
            }
        }
    }

    if args.charpolys {
        let fp = fingerprint(&d);
        human.push_str(&fp.to_string());
        record["charpolys"] = json!({
            "symmetric": fp.symmetric.iter().map(|(p, c)| json!({"poly": p.to_string(), "count": c})).collect::<Vec<_>>(),
            "triples": fp.triples.iter().map(|(k, c)| json!({"polys": k.iter().map(ToString::to_string).collect::<Vec<_>>(), "count": c})).collect::<Vec<_>>(),
            "triple_terms": fp.triple_terms,
            "grouped_by_shift": fp.grouped_by_shift,
        });
    }

    if let Some(spec) = &args.orbits {
        let gens = generators(spec, d.n())?;
        match orbit_partition(&d, &gens) {
            Ok(orbits) => {
                let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
                sizes.sort();
                let order = generate_group(&gens, 100_000).map(|g| g.len()).ok();
                let _ = writeln!(
                    human,
                    "orbit sizes: {}\ngroup order: {}",
                    sizes.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
                    order.map_or("too large".into(), |o| o.to_string())
                );
                for o in &orbits {
                    let _ = writeln!(human, "  {:?}", o);
                }
                record["orbits"] = json!({"sizes": sizes, "partition": orbits, "group_order": order});
            }
            Err(e @ SymmetryError::NotASymmetry { .. }) => {
                ok = false;
                let _ = writeln!(human, "not a symmetry: {e}");
                record["orbits"] = json!({"error": e.to_string()});
            }
            Err(e) => return Err(input(e)),
        }
    }

    if args.config {
        let c = extract_configuration(&d);
        let _ = writeln!(human, "row points:");
        for (p, w) in &c.rows {
            let _ = writeln!(human, "  {p} x{w}");
        }
        let _ = writeln!(human, "column points:");
        for (p, w) in &c.columns {
            let _ = writeln!(human, "  {p} x{w}");
        }
        record["configuration"] = json!({"rows": points(&c.rows), "columns": points(&c.columns)});
    }
    Ok(Outcome::new(ok, human, record))
}

pub fn dims(args: &DimsArgs) -> Result<Outcome, CliError> {
    let n = args.n;
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let groups = match args.group {
        Some(g) => vec![g],
        None => vec![Group::Z3, Group::Zn1, Group::Zn1xz3],
    };
    if n < 2 && groups.iter().any(|g| *g != Group::Z3) {
        return Err(CliError::Usage("Z_(n+1) dimensions need n >= 2".into()));
    }
    let cancel = CancelToken::new();
    let mut ok = true;
    let mut human = String::new();
    let mut records = Vec::new();
    for g in groups {
        let (label, closed, extra) = match g {
            Group::Z3 => ("z3", z3_invariant_dim(n * n), String::new()),
            Group::Zn1 => {
                let d = znp1_invariant_dim(n);
                let agree = znp1_summand_table(n) == d && znp1_by_enumeration(n) == d;
                ok &= agree;
                ("zn1", d, if agree { String::new() } else { " (cross-checks disagree)".into() })
            }
            Group::Zn1xz3 => {
                let (s, a, t) = znp1_z3_invariant_dim(n);
                ok &= znp1_z3_by_type(n) == (s, a);
                ("zn1xz3", t, format!(" = {s} + {a}"))
            }
        };
        let _ = writeln!(human, "{label}: {closed}{extra}");
        let mut rec = json!({"command": "dims", "n": n, "group": label, "dim": closed});
        if g == Group::Zn1xz3 {
            let (s, a, _) = znp1_z3_invariant_dim(n);
            rec["sym"] = json!(s);
            rec["alt"] = json!(a);
        }
        if args.check_projector {
            let n = n as usize;
            let elements = match g {
                Group::Z3 => z3_group(n),
                Group::Zn1 => znp1_group(n),
                Group::Zn1xz3 => znp1_z3_group(n),
            };
            let r = projector_rank(&elements, &cancel).map_err(internal)?;
            let agree = r.rank as u64 == closed;
            ok &= agree;
            let _ = writeln!(
                human,
                "  closed-form {closed} {} projector rank {}",
                if agree { "=" } else { "!=" },
                r.rank
            );
            rec["projector_rank"] = json!(r.rank);
            rec["agree"] = json!(agree);
        }
        records.push(rec);
    }
    Ok(Outcome { ok, human, records })
}

pub fn search(args: &SearchArgs) -> Result<Outcome, CliError> {
    if args.n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    if args.p + 3 * args.q != args.rank {
        return Err(CliError::Usage(format!(
            "--p {} --q {} gives rank {}, not --rank {}",
            args.p,
            args.q,
            args.p + 3 * args.q,
            args.rank
        )));
    }
    if args.rank == 0 {
        return Err(CliError::Usage("--rank must be positive".into()));
    }
    if args.jobs == 0 {
        return Err(CliError::Usage("--jobs must be positive".into()));
    }
    let mut cfg = SearchConfig::new(args.n, args.p, args.q);
    if let Some(path) = &args.schedule {
        let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
        cfg.schedule = Schedule::parse(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    }
    if let Some(z) = args.zeros {
        cfg.schedule = Schedule::sparsify(&SparsifyPlan::new(z));
    }
    if let Some(v) = &args.value_set {
        cfg.schedule.value_set = Some(v.clone());
    }
    if args.tol.is_some() {
        cfg.schedule.tol = args.tol;
    }
    cfg.schedule.round_options().map_err(input)?;
    let m = args.n * args.n;
    for (i, p) in cfg.schedule.phases.iter().enumerate() {
        if p.zeros > m * args.rank {
            return Err(CliError::Usage(format!("phase {i}: zeros {} exceeds {} entries", p.zeros, m * args.rank)));
        }
    }

    let seeds: Vec<u64> = (0..args.restarts).map(|k| args.seed + k).collect();
    let report = run_search(&cfg, &seeds, args.jobs, &CancelToken::new()).map_err(internal)?;
    let mut human = format!(
        "search n={} R={} P={} Q={}: {} restart(s) from seed {}\n",
        args.n, args.rank, args.p, args.q, args.restarts, args.seed
    );
    let mut records = Vec::new();
    for r in &report.restarts {
        let _ = writeln!(
            human,
            "  seed {:>4}  phase1 {:.3e}  final {}  zeros {}  {}  {}",
            r.seed,
            r.phase1_objective,
            r.final_objective.map_or("-".into(), |v| format!("{v:.3e}")),
            r.sparsity.map_or("-".into(), |v| v.to_string()),
            if r.exact { "EXACT" } else { "-" },
            r.message
        );
        let mut rec = serde_json::to_value(r).map_err(internal)?;
        rec["command"] = json!("search");
        rec["record"] = json!("restart");
        records.push(rec);
    }
    let best = report.best();
    let exact = best.filter(|b| b.exact);
    let mut written = None;
    if let (Some(b), Some(out)) = (exact, &args.out) {
        let d = b.decomposition.as_ref().ok_or_else(|| internal("exact restart without decomposition"))?;
        let mut d = d.clone();
        d.name = format!("search_n{}_r{}_seed{}", args.n, args.rank, b.seed);
        catalog::save(&d, out).map_err(internal)?;
        written = Some(out.display().to_string());
        let _ = writeln!(human, "wrote exact decomposition (seed {}) to {}", b.seed, out.display());
    }
    match best {
        Some(b) => {
            let _ = writeln!(human, "best: seed {} ({})", b.seed, if b.exact { "exact" } else { "not exact" });
        }
        None => human.push_str("no restarts run\n"),
    }
    let summary = json!({
        "command": "search",
        "record": "summary",
        "n": args.n, "rank": args.rank, "p": args.p, "q": args.q,
        "restarts": args.restarts,
        "seeds": seeds,
        "best_seed": best.map(|b| b.seed),
        "exact": exact.is_some(),
        "out": written,
    });
    if let Some(path) = &args.report {
        let full = json!({"summary": summary, "restarts": report.restarts, "schedule": serde_json::from_str::<Value>(&cfg.schedule.to_json()).map_err(internal)?});
        std::fs::write(path, serde_json::to_string_pretty(&full).map_err(internal)?)
            .map_err(|e| internal(format!("{}: {e}", path.display())))?;
    }
    records.push(summary);
    let ok = args.restarts == 0 || exact.is_some();
    Ok(Outcome { ok, human, records })
}

pub fn transform(src: &str, element: &str, out: &Path) -> Result<Outcome, CliError> {
    let d = load(src)?;
    let e = generators(element, d.n())?;
    let e = match e.as_slice() {
        [one] => one.clone(),
        _ => return Err(CliError::Usage("--element must name exactly one element".into())),
    };
    let mut image = e.apply_decomposition(&d);
    image.name = format!("{}_transformed", d.name);
    image.note = None;
    image.generators.clear();
    let exact = image.is_exact_fit();
    catalog::save(&image, out).map_err(internal)?;
    let preserved = decompositions_equal(&image, &d);
    let human = format!(
        "wrote {} ({} terms, residual {}); image {} the source\n",
        out.display(),
        image.rank(),
        if exact { "0" } else { "nonzero" },
        if preserved { "equals" } else { "differs from" }
    );
    let record = json!({
        "command": "transform",
        "out": out.display().to_string(),
        "terms": image.rank(),
        "residual_zero": exact,
        "equal_to_source": preserved,
        "tensor_symmetry": e.is_tensor_symmetry(),
    });
    Ok(Outcome::new(true, human, record))
}

pub fn equal(a: &str, b: &str) -> Result<Outcome, CliError> {
    let (da, db) = (load(a)?, load(b)?);
    let eq = da.n() == db.n() && decompositions_equal(&da, &db);
    let human = format!("{}\n", if eq { "equal" } else { "not equal" });
    Ok(Outcome::new(eq, human, json!({"command": "equal", "a": a, "b": b, "equal": eq})))
}

pub fn serve(args: &ServeArgs) -> Result<Outcome, CliError> {
    use mmsym_core::search::SessionState;
    use mmsym_service::{bind, serve, Service};

    let service = match &args.session {
        Some(path) => Service::from_file(path, args.seed, &args.output_dir).map_err(input)?,
        None => {
            if args.n == 0 || args.p + 3 * args.q == 0 {
                return Err(CliError::Usage("--n and --p + 3 --q must be positive".into()));
            }
            let state = SessionState::random(args.n, args.p, args.q, args.seed).map_err(input)?;
            Service::with_state(state, &args.output_dir)
        }
    };
    let rt = tokio::runtime::Runtime::new().map_err(internal)?;
    rt.block_on(async {
        let listener = bind(args.port).await.map_err(internal)?;
        let addr = listener.local_addr().map_err(internal)?;
        eprintln!("listening on http://{addr}");
        serve(listener, service).await.map_err(internal)
    })?;
    Ok(Outcome::new(true, String::new(), json!({"command": "serve"})))
}
