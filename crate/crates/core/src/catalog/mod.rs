//! Decomposition files, orbit notation and the built-in fixtures.

mod format;

use std::path::{Path, PathBuf};

use num_rational::BigRational;
use thiserror::Error;

pub use format::{
    element_from_json, element_to_json, parse_decomposition, parse_exact, parse_float, parse_orbits,
    to_json, FileScalar, LoadedDecomposition, FORMAT_TAG, ORBITS_TAG,
};

use crate::decomposition::{Decomposition, RankOneTriple};
use crate::error::CoreError;
use crate::scalar::ScalarMode;
use crate::symmetry::{GroupElement, SymmetryError};

/// Environment variable that redirects built-in lookups to a directory of
/// `<name>.json` files.
pub const CATALOG_DIR_ENV: &str = "MMSYM_CATALOG_DIR";

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {message}")]
    Format { location: String, message: String },
    #[error("scalar mode mismatch: expected {expected}, file is {found}")]
    Mode { expected: ScalarMode, found: ScalarMode },
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

impl CatalogError {
    pub(crate) fn format(location: impl Into<String>, message: impl Into<String>) -> Self {
        CatalogError::Format {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub const BUILTIN_NAMES: &[&str] = &[
    "standard3",
    "z4z3",
    "lader_z3",
    "twofix_z3",
    "addtl1",
    "addtl2",
    "addtl3",
];

/// Compact orbit presentations shipped alongside the explicit listings.
pub const COMPACT_NAMES: &[&str] = &["z4z3_compact", "lader_z3_compact"];

fn embedded(name: &str) -> Option<&'static str> {
    Some(match name {
        "standard3" => include_str!("../../data/standard3.json"),
        "z4z3" => include_str!("../../data/z4z3.json"),
        "lader_z3" => include_str!("../../data/lader_z3.json"),
        "twofix_z3" => include_str!("../../data/twofix_z3.json"),
        "addtl1" => include_str!("../../data/addtl1.json"),
        "addtl2" => include_str!("../../data/addtl2.json"),
        "addtl3" => include_str!("../../data/addtl3.json"),
        "z4z3_compact" => include_str!("../../data/z4z3_compact.json"),
        "lader_z3_compact" => include_str!("../../data/lader_z3_compact.json"),
        _ => return None,
    })
}

fn builtin_text(name: &str) -> Result<String, CatalogError> {
    if let Some(dir) = std::env::var_os(CATALOG_DIR_ENV) {
        let path = Path::new(&dir).join(format!("{name}.json"));
        if path.exists() {
            return read(&path);
        }
    }
    embedded(name)
        .map(str::to_string)
        .ok_or_else(|| CatalogError::UnknownBuiltin(name.to_string()))
}

/// A built-in decomposition by catalog key.
pub fn builtin(name: &str) -> Result<Decomposition<BigRational>, CatalogError> {
    if !BUILTIN_NAMES.contains(&name) {
        return Err(CatalogError::UnknownBuiltin(name.to_string()));
    }
    parse_exact(&builtin_text(name)?)
}

/// Orbit specs of a compact presentation (`z4z3_compact`, `lader_z3_compact`).
pub fn builtin_orbits(name: &str) -> Result<(usize, Vec<OrbitSpec>), CatalogError> {
    if !COMPACT_NAMES.contains(&name) {
        return Err(CatalogError::UnknownBuiltin(name.to_string()));
    }
    parse_orbits(&builtin_text(name)?)
}

/// Expands every orbit of a compact presentation into one decomposition.
pub fn expand_compact(name: &str) -> Result<Decomposition<BigRational>, CatalogError> {
    let (n, specs) = builtin_orbits(name)?;
    let mut terms = Vec::new();
    for s in &specs {
        terms.extend(expand_orbit(s)?);
    }
    Ok(Decomposition::new(n, terms, name)?)
}

fn read(path: &Path) -> Result<String, CatalogError> {
    std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load(path: &Path) -> Result<LoadedDecomposition, CatalogError> {
    parse_decomposition(&read(path)?)
}

pub fn load_exact(path: &Path) -> Result<Decomposition<BigRational>, CatalogError> {
    parse_exact(&read(path)?)
}

pub fn save<S: FileScalar>(d: &Decomposition<S>, path: &Path) -> Result<(), CatalogError> {
    std::fs::write(path, to_json(d)).map_err(|source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `builtin:NAME` or a file path; the result must be exact.
pub fn resolve_source(src: &str) -> Result<Decomposition<BigRational>, CatalogError> {
    match src.strip_prefix("builtin:") {
        Some(name) => builtin(name),
        None => load_exact(Path::new(src)),
    }
}

/// A seed term and the group elements to apply to it.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSpec {
    pub seed: RankOneTriple<BigRational>,
    pub elements: Vec<GroupElement>,
}

/// `[e(seed) for e in elements]`, order preserved.
pub fn expand_orbit(spec: &OrbitSpec) -> Result<Vec<RankOneTriple<BigRational>>, CatalogError> {
    let n = spec.seed.n();
    spec.elements
        .iter()
        .map(|e| {
            if e.n() != n {
                Err(CatalogError::Core(CoreError::DimensionMismatch {
                    expected: n,
                    found: e.n(),
                }))
            } else {
                Ok(e.apply(&spec.seed))
            }
        })
        .collect()
}
