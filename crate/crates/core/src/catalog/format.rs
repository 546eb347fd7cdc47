//! JSON encoding of decompositions, group elements and orbit files.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use super::{CatalogError, OrbitSpec};
use crate::decomposition::{Decomposition, RankOneTriple};
use crate::mat::Mat;
use crate::scalar::{format_rational, parse_rational, Scalar, ScalarMode};
use crate::symmetry::{parse_word, GeneratorSpec, GroupElement};

pub const FORMAT_TAG: &str = "mmsym-decomposition";
pub const ORBITS_TAG: &str = "mmsym-orbits";
const VERSION: u64 = 1;

/// Scalars that can be written to and read from decomposition files.
pub trait FileScalar: Scalar {
    fn encode(&self) -> Value;
    fn decode(v: &Value) -> Result<Self, String>;
}

impl FileScalar for BigRational {
    fn encode(&self) -> Value {
        if self.is_integer() {
            if let Ok(i) = i64::try_from(self.to_integer()) {
                return json!(i);
            }
        }
        Value::String(format_rational(self))
    }

    fn decode(v: &Value) -> Result<Self, String> {
        match v {
            Value::Number(n) => match n.as_i64() {
                Some(i) => Ok(BigRational::from_integer(i.into())),
                None => parse_rational(&n.to_string())
                    .map_err(|_| format!("non-integer number {n} in exact file; write it as \"p/q\"")),
            },
            Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
            other => Err(format!("expected integer or \"p/q\" string, found {other}")),
        }
    }
}

impl FileScalar for f64 {
    fn encode(&self) -> Value {
        json!(self)
    }

    fn decode(v: &Value) -> Result<Self, String> {
        let x = match v {
            Value::Number(n) => n.as_f64().ok_or("number out of range")?,
            Value::String(s) => parse_rational(s)
                .map(|q| Scalar::to_f64(&q))
                .map_err(|e| e.to_string())?,
            other => return Err(format!("expected number, found {other}")),
        };
        if x.is_finite() {
            Ok(x)
        } else {
            Err("non-finite entry".into())
        }
    }
}

/// A decomposition file in whichever mode it declares.
#[derive(Clone, Debug, PartialEq)]
pub enum LoadedDecomposition {
    Exact(Decomposition<BigRational>),
    Float(Decomposition<f64>),
}

impl LoadedDecomposition {
    pub fn mode(&self) -> ScalarMode {
        match self {
            LoadedDecomposition::Exact(_) => ScalarMode::Exact,
            LoadedDecomposition::Float(_) => ScalarMode::Float,
        }
    }
}

fn syntax(e: serde_json::Error) -> CatalogError {
    CatalogError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, loc: &str) -> Result<&'a Value, CatalogError> {
    obj.get(key)
        .ok_or_else(|| CatalogError::format(loc, format!("missing field {key:?}")))
}

fn as_object<'a>(v: &'a Value, loc: &str) -> Result<&'a Map<String, Value>, CatalogError> {
    v.as_object()
        .ok_or_else(|| CatalogError::format(loc, "expected an object"))
}

fn as_usize(v: &Value, loc: &str) -> Result<usize, CatalogError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| CatalogError::format(loc, "expected a non-negative integer"))
}

fn read_mat<S: FileScalar>(v: &Value, n: usize, loc: &str) -> Result<Mat<S>, CatalogError> {
    let rows = v
        .as_array()
        .ok_or_else(|| CatalogError::format(loc, "expected an array of rows"))?;
    if rows.len() != n {
        return Err(CatalogError::format(loc, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| CatalogError::format(format!("{loc} row {i}"), "expected an array"))?;
        if row.len() != n {
            return Err(CatalogError::format(
                format!("{loc} row {i}"),
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        for (j, e) in row.iter().enumerate() {
            data.push(S::decode(e).map_err(|m| CatalogError::format(format!("{loc} entry ({i},{j})"), m))?);
        }
    }
    Ok(Mat::from_vec(n, data).expect("n*n entries"))
}

fn write_mat<S: FileScalar>(m: &Mat<S>) -> String {
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|v| v.encode().to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn read_triple<S: FileScalar>(v: &Value, n: usize, loc: &str) -> Result<RankOneTriple<S>, CatalogError> {
    let obj = as_object(v, loc)?;
    let x = read_mat(field(obj, "x", loc)?, n, &format!("{loc} slot x"))?;
    let y = read_mat(field(obj, "y", loc)?, n, &format!("{loc} slot y"))?;
    let z = read_mat(field(obj, "z", loc)?, n, &format!("{loc} slot z"))?;
    Ok(RankOneTriple { x, y, z })
}

fn header<'a>(v: &'a Value, tag: &str) -> Result<(&'a Map<String, Value>, usize), CatalogError> {
    let obj = as_object(v, "file")?;
    let format = field(obj, "format", "file")?.as_str().unwrap_or_default();
    if format != tag {
        return Err(CatalogError::format("file", format!("format must be {tag:?}, found {format:?}")));
    }
    let version = field(obj, "version", "file")?.as_u64();
    if version != Some(VERSION) {
        return Err(CatalogError::format("file", format!("unsupported version {version:?}")));
    }
    let n = as_usize(field(obj, "n", "file")?, "field n")?;
    if n == 0 {
        return Err(CatalogError::format("field n", "n must be positive"));
    }
    Ok((obj, n))
}

/// Explicit element as `{g, h, k, cyclic, transpose}`.
pub fn element_from_json(v: &Value, n: usize, loc: &str) -> Result<GroupElement, CatalogError> {
    if let Some(word) = v.as_str() {
        return Ok(parse_word(word, n)?);
    }
    let obj = as_object(v, loc)?;
    let g = read_mat::<BigRational>(field(obj, "g", loc)?, n, &format!("{loc} g"))?;
    let h = read_mat::<BigRational>(field(obj, "h", loc)?, n, &format!("{loc} h"))?;
    let k = read_mat::<BigRational>(field(obj, "k", loc)?, n, &format!("{loc} k"))?;
    let cyclic = obj.get("cyclic").map_or(Ok(0), |c| as_usize(c, loc))? as u8;
    let transpose = obj.get("transpose").and_then(Value::as_bool).unwrap_or(false);
    Ok(GroupElement::new(g, h, k, cyclic, transpose)?)
}

pub fn element_to_json(e: &GroupElement) -> Value {
    let m = |m: &Mat<BigRational>| -> Value {
        Value::Array(
            m.rows()
                .iter()
                .map(|r| Value::Array(r.iter().map(FileScalar::encode).collect()))
                .collect(),
        )
    };
    json!({
        "g": m(e.g()),
        "h": m(e.h()),
        "k": m(e.k()),
        "cyclic": e.cyclic(),
        "transpose": e.transpose(),
    })
}

fn read_body<S: FileScalar>(obj: &Map<String, Value>, n: usize) -> Result<Decomposition<S>, CatalogError> {
    let terms_v = field(obj, "terms", "file")?
        .as_array()
        .ok_or_else(|| CatalogError::format("field terms", "expected an array"))?;
    let mut terms = Vec::with_capacity(terms_v.len());
    for (i, t) in terms_v.iter().enumerate() {
        terms.push(read_triple::<S>(t, n, &format!("term {i}"))?);
    }
    let name = obj.get("name").and_then(Value::as_str).unwrap_or("unnamed");
    let mut d = Decomposition::new(n, terms, name)?;
    d.note = obj.get("note").and_then(Value::as_str).map(str::to_string);
    if let Some(gens) = obj.get("generators").and_then(Value::as_array) {
        for (i, g) in gens.iter().enumerate() {
            let loc = format!("generator {i}");
            let spec = match g.as_str() {
                Some(word) => {
                    parse_word(word, n)?;
                    GeneratorSpec::Named(word.to_string())
                }
                None => GeneratorSpec::Element(element_from_json(g, n, &loc)?),
            };
            d.generators.push(spec);
        }
    }
    Ok(d)
}

pub fn parse_decomposition(text: &str) -> Result<LoadedDecomposition, CatalogError> {
    let v: Value = serde_json::from_str(text).map_err(syntax)?;
    let (obj, n) = header(&v, FORMAT_TAG)?;
    match field(obj, "scalar", "file")?.as_str() {
        Some("exact") => Ok(LoadedDecomposition::Exact(read_body(obj, n)?)),
        Some("float") => Ok(LoadedDecomposition::Float(read_body(obj, n)?)),
        other => Err(CatalogError::format("field scalar", format!("unknown scalar mode {other:?}"))),
    }
}

/// Exact decomposition; a float file is a mode error.
pub fn parse_exact(text: &str) -> Result<Decomposition<BigRational>, CatalogError> {
    match parse_decomposition(text)? {
        LoadedDecomposition::Exact(d) => Ok(d),
        LoadedDecomposition::Float(_) => Err(CatalogError::Mode {
            expected: ScalarMode::Exact,
            found: ScalarMode::Float,
        }),
    }
}

/// Float decomposition; exact files are converted.
pub fn parse_float(text: &str) -> Result<Decomposition<f64>, CatalogError> {
    match parse_decomposition(text)? {
        LoadedDecomposition::Exact(d) => Ok(d.to_f64()),
        LoadedDecomposition::Float(d) => Ok(d),
    }
}

pub fn to_json<S: FileScalar>(d: &Decomposition<S>) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"format\": \"{FORMAT_TAG}\",\n  \"version\": {VERSION},\n"));
    out.push_str(&format!("  \"n\": {},\n  \"scalar\": \"{}\",\n", d.n(), S::MODE));
    out.push_str(&format!("  \"name\": {},\n", Value::String(d.name.clone())));
    if let Some(note) = &d.note {
        out.push_str(&format!("  \"note\": {},\n", Value::String(note.clone())));
    }
    if !d.generators.is_empty() {
        let gens: Vec<Value> = d
            .generators
            .iter()
            .map(|g| match g {
                GeneratorSpec::Named(w) => Value::String(w.clone()),
                GeneratorSpec::Element(e) => element_to_json(e),
            })
            .collect();
        out.push_str(&format!("  \"generators\": {},\n", Value::Array(gens)));
    }
    out.push_str("  \"terms\": [");
    for (i, t) in d.terms().iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        out.push_str(&format!(
            "    {{\"x\": {}, \"y\": {}, \"z\": {}}}",
            write_mat(&t.x),
            write_mat(&t.y),
            write_mat(&t.z)
        ));
    }
    out.push_str("\n  ]\n}\n");
    out
}

/// Orbit file: `{format: "mmsym-orbits", n, orbits: [{seed, elements}]}`
/// where elements are words or explicit element objects.
pub fn parse_orbits(text: &str) -> Result<(usize, Vec<OrbitSpec>), CatalogError> {
    let v: Value = serde_json::from_str(text).map_err(syntax)?;
    let (obj, n) = header(&v, ORBITS_TAG)?;
    let orbits = field(obj, "orbits", "file")?
        .as_array()
        .ok_or_else(|| CatalogError::format("field orbits", "expected an array"))?;
    let mut specs = Vec::new();
    for (i, o) in orbits.iter().enumerate() {
        let loc = format!("orbit {i}");
        let o = as_object(o, &loc)?;
        let seed = read_triple::<BigRational>(field(o, "seed", &loc)?, n, &format!("{loc} seed"))?;
        let elements = field(o, "elements", &loc)?
            .as_array()
            .ok_or_else(|| CatalogError::format(&loc, "elements must be an array"))?
            .iter()
            .enumerate()
            .map(|(j, e)| element_from_json(e, n, &format!("{loc} element {j}")))
            .collect::<Result<Vec<_>, _>>()?;
        specs.push(OrbitSpec { seed, elements });
    }
    Ok((n, specs))
}
