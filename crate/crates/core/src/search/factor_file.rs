//! Bit-exact factor files and seeded perturbation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde_json::{json, Value};

use super::factors::{CyclicFactors, FactorMatrices, FactorMatrix};
use super::SearchError;

pub const FACTOR_FORMAT: &str = "mmsym-factors";

fn hex(v: f64) -> String {
    format!("0x{:016x}", v.to_bits())
}

fn unhex(v: &Value) -> Result<f64, SearchError> {
    match v {
        Value::String(s) => {
            let digits = s
                .strip_prefix("0x")
                .ok_or_else(|| SearchError::FactorFile(format!("expected 0x-prefixed bits, got {s:?}")))?;
            u64::from_str_radix(digits, 16)
                .map(f64::from_bits)
                .map_err(|e| SearchError::FactorFile(format!("bad hex {s:?}: {e}")))
        }
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| SearchError::FactorFile("number out of range".into())),
        other => Err(SearchError::FactorFile(format!("unexpected entry {other}"))),
    }
}

fn matrix_json(f: &FactorMatrix<f64>) -> Value {
    Value::Array(
        f.row_major()
            .into_iter()
            .map(|row| Value::Array(row.into_iter().map(|v| Value::String(hex(v))).collect()))
            .collect(),
    )
}

fn matrix_from_json(v: Option<&Value>, name: &str, m: usize) -> Result<FactorMatrix<f64>, SearchError> {
    let rows = v
        .and_then(Value::as_array)
        .ok_or_else(|| SearchError::FactorFile(format!("missing matrix {name}")))?;
    if rows.len() != m {
        return Err(SearchError::FactorFile(format!("{name} has {} rows, expected {m}", rows.len())));
    }
    let parsed = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| SearchError::FactorFile(format!("{name}: row is not an array")))?
                .iter()
                .map(unhex)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    FactorMatrix::from_rows(&parsed).ok_or_else(|| SearchError::FactorFile(format!("{name}: ragged rows")))
}

/// Serializes assembled factors with their (P, Q) layout; entries are
/// the hex bit patterns of the f64 values.
pub fn to_factor_json(f: &FactorMatrices<f64>, p: usize, q: usize) -> String {
    let v = json!({
        "format": FACTOR_FORMAT,
        "version": 1,
        "n": f.n,
        "p": p,
        "q": q,
        "encoding": "f64-bits-hex",
        "x": matrix_json(&f.x),
        "y": matrix_json(&f.y),
        "z": matrix_json(&f.z),
    });
    serde_json::to_string_pretty(&v).expect("serializable")
}

/// Inverse of [`to_factor_json`]; plain JSON numbers are accepted too.
pub fn parse_factors(text: &str) -> Result<(FactorMatrices<f64>, usize, usize), SearchError> {
    let v: Value = serde_json::from_str(text).map_err(|e| SearchError::FactorFile(e.to_string()))?;
    if v.get("format").and_then(Value::as_str) != Some(FACTOR_FORMAT) {
        return Err(SearchError::FactorFile(format!("format tag must be {FACTOR_FORMAT:?}")));
    }
    let field = |k: &str| {
        v.get(k)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| SearchError::FactorFile(format!("missing integer field {k:?}")))
    };
    let (n, p, q) = (field("n")?, field("p")?, field("q")?);
    let m = n * n;
    let x = matrix_from_json(v.get("x"), "x", m)?;
    let y = matrix_from_json(v.get("y"), "y", m)?;
    let z = matrix_from_json(v.get("z"), "z", m)?;
    let f = FactorMatrices::new(n, x, y, z)?;
    if f.rank() != p + 3 * q {
        return Err(SearchError::Layout { p, q, r: f.rank() });
    }
    Ok((f, p, q))
}

/// Adds independent N(0, sigma²) noise to every block entry.
pub fn perturb(f: &CyclicFactors<f64>, sigma: f64, seed: u64) -> Result<CyclicFactors<f64>, SearchError> {
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(SearchError::InvalidParameter(format!("sigma must be >= 0, got {sigma}")));
    }
    let normal =
        Normal::new(0.0, sigma).map_err(|e| SearchError::InvalidParameter(format!("sigma {sigma}: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = f.clone();
    for b in out.blocks_mut() {
        for v in b.as_mut_slice() {
            *v += normal.sample(&mut rng);
        }
    }
    Ok(out)
}
