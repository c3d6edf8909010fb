//! Matrix and presentation documents: the stable file formats of the CLI.
//!
//! Matrices are accepted in two interchangeable forms everywhere:
//!
//! - plain text: first token the side length n, then n² integers row major,
//!   any whitespace layout;
//! - structured (JSON): `{"n": 3, "entries": [...], "name": "..."}` with
//!   entries as numbers, or as decimal strings when they do not fit a JSON
//!   number.
//!
//! Both round-trip bit-exactly through the corresponding emitters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt::Write as _;
use std::str::FromStr;

use ncgram::exactmat::IntMatrix;
use ncgram::ncalgebra::{gram_family, gram_family_blowup, gram_p2, gram_quadric};
use ncgram::GramMatrix;

/// A parsed matrix file: the raw square matrix plus the optional name
/// carried by the structured form.
pub struct MatrixDocument {
    pub matrix: IntMatrix,
    pub name: Option<String>,
}

pub fn parse_matrix_document(input: &str) -> Result<MatrixDocument, String> {
    if input.trim_start().starts_with('{') {
        parse_structured(input)
    } else {
        parse_text(input)
    }
}

fn parse_text(input: &str) -> Result<MatrixDocument, String> {
    let mut tokens = input.split_whitespace();
    let n: usize = tokens
        .next()
        .ok_or("empty matrix file")?
        .parse()
        .map_err(|e| format!("bad side length: {e}"))?;
    if n == 0 {
        return Err("side length must be positive".into());
    }
    let mut entries = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let tok = tokens
            .next()
            .ok_or_else(|| format!("expected {} entries", n * n))?;
        let v = BigInt::from_str(tok).map_err(|e| format!("bad entry {tok:?}: {e}"))?;
        entries.push(v);
    }
    if let Some(extra) = tokens.next() {
        return Err(format!("trailing content {extra:?} after {} entries", n * n));
    }
    let matrix = IntMatrix::new(n, entries).map_err(|e| e.to_string())?;
    Ok(MatrixDocument { matrix, name: None })
}

fn parse_structured(input: &str) -> Result<MatrixDocument, String> {
    let value: serde_json::Value =
        serde_json::from_str(input).map_err(|e| format!("bad JSON: {e}"))?;
    let obj = value.as_object().ok_or("expected a JSON object")?;
    let n = obj
        .get("n")
        .and_then(|v| v.as_u64())
        .ok_or("missing or invalid field \"n\"")? as usize;
    let raw = obj
        .get("entries")
        .and_then(|v| v.as_array())
        .ok_or("missing or invalid field \"entries\"")?;
    if raw.len() != n * n {
        return Err(format!("expected {} entries, got {}", n * n, raw.len()));
    }
    let mut entries = Vec::with_capacity(raw.len());
    for v in raw {
        let parsed = match v {
            serde_json::Value::Number(num) => {
                let s = num.to_string();
                BigInt::from_str(&s).map_err(|e| format!("non-integer entry {s}: {e}"))?
            }
            serde_json::Value::String(s) => {
                BigInt::from_str(s).map_err(|e| format!("bad entry {s:?}: {e}"))?
            }
            other => return Err(format!("bad entry {other}")),
        };
        entries.push(parsed);
    }
    let name = obj
        .get("name")
        .and_then(|v| v.as_str())
        .map(|s| s.to_string());
    let matrix = IntMatrix::new(n, entries).map_err(|e| e.to_string())?;
    Ok(MatrixDocument { matrix, name })
}

pub fn emit_text(m: &IntMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", m.n());
    let _ = write!(out, "{m}");
    out
}

pub fn emit_structured(m: &IntMatrix, name: Option<&str>) -> String {
    let entries: Vec<serde_json::Value> = m.entries().iter().map(bigint_json).collect();
    let mut obj = serde_json::Map::new();
    obj.insert("n".into(), serde_json::json!(m.n()));
    obj.insert("entries".into(), serde_json::Value::Array(entries));
    if let Some(name) = name {
        obj.insert("name".into(), serde_json::json!(name));
    }
    serde_json::Value::Object(obj).to_string()
}

/// Integers that fit i64 are emitted as JSON numbers, everything else as a
/// decimal string.
pub fn bigint_json(v: &BigInt) -> serde_json::Value {
    match i64::try_from(v) {
        Ok(small) => serde_json::json!(small),
        Err(_) => serde_json::json!(v.to_string()),
    }
}

/// The built-in registry: P2, A, B:m, Bp:m.
pub fn named_matrix(name: &str) -> Result<GramMatrix, String> {
    if name == "P2" {
        return Ok(gram_p2());
    }
    if name == "A" {
        return Ok(gram_quadric());
    }
    if let Some(m) = name.strip_prefix("B:") {
        let m: usize = m.parse().map_err(|e| format!("bad family index: {e}"))?;
        return Ok(gram_family(m));
    }
    if let Some(m) = name.strip_prefix("Bp:") {
        let m: usize = m.parse().map_err(|e| format!("bad family index: {e}"))?;
        return Ok(gram_family_blowup(m));
    }
    Err(format!(
        "unknown matrix name {name:?} (expected P2, A, B:<m> or Bp:<m>)"
    ))
}

/// Presentation files: `generators <g>`, then one `relation` line per
/// relation followed by its coefficient triples `u v c` (1-based generator
/// indices, rational coefficient). Blank lines and `#` comments are
/// ignored.
pub fn parse_presentation(input: &str) -> Result<(usize, Vec<Vec<BigRational>>), String> {
    let mut generators: Option<usize> = None;
    let mut relations: Vec<Vec<BigRational>> = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().expect("nonempty line has a token");
        match head {
            "generators" => {
                let g: usize = tokens
                    .next()
                    .ok_or(format!("line {}: missing generator count", lineno + 1))?
                    .parse()
                    .map_err(|e| format!("line {}: {e}", lineno + 1))?;
                generators = Some(g);
            }
            "relation" => {
                let g = generators.ok_or(format!(
                    "line {}: relation before generators",
                    lineno + 1
                ))?;
                relations.push(vec![BigRational::zero(); g * g]);
            }
            _ => {
                let g = generators
                    .ok_or(format!("line {}: coefficients before generators", lineno + 1))?;
                let current = relations
                    .last_mut()
                    .ok_or(format!("line {}: coefficients before a relation", lineno + 1))?;
                let u: usize = head
                    .parse()
                    .map_err(|e| format!("line {}: bad index: {e}", lineno + 1))?;
                let v: usize = tokens
                    .next()
                    .ok_or(format!("line {}: missing second index", lineno + 1))?
                    .parse()
                    .map_err(|e| format!("line {}: bad index: {e}", lineno + 1))?;
                let c = tokens
                    .next()
                    .ok_or(format!("line {}: missing coefficient", lineno + 1))?;
                let c = BigRational::from_str(c)
                    .map_err(|e| format!("line {}: bad coefficient {c:?}: {e}", lineno + 1))?;
                if u == 0 || u > g || v == 0 || v > g {
                    return Err(format!(
                        "line {}: generator index out of range 1..={g}",
                        lineno + 1
                    ));
                }
                current[(u - 1) * g + (v - 1)] += c;
            }
        }
    }
    let g = generators.ok_or("missing \"generators <g>\" line")?;
    Ok((g, relations))
}
