//! Text formats: `.poly` systems, `.pde` systems, point files and the JSON
//! dump of a prolonged system.
//!
//! ```text
//! # .poly
//! vars x y
//! eq x^2 + y^2 - 5
//! eq x*y - 2
//!
//! # .pde
//! unknowns 1
//! surplus 1
//! vars x
//! eq S1[1] - S1^2
//! eq S1[1] - S1
//! ```

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::jet::{Counts, JetError, JetVar, PdeSystem, ProlongedSystem};
use crate::poly::{parse_polynomial, parse_polynomial_with, parse_scalar, Point, PolyError, Polynomial, VarTable};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Format(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub type Result<T, E = IoError> = std::result::Result<T, E>;

/// Non-blank lines with comments removed, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn split_keyword(line: &str) -> (&str, &str) {
    match line.split_once(char::is_whitespace) {
        Some((k, rest)) => (k, rest.trim()),
        None => (line, ""),
    }
}

fn line_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Line { line, message: message.into() }
}

/// A polynomial system over a declared variable table.
#[derive(Clone, Debug)]
pub struct PolyFile {
    pub vars: VarTable,
    pub equations: Vec<Polynomial>,
}

pub fn parse_poly_file(text: &str) -> Result<PolyFile> {
    let mut vars: Option<VarTable> = None;
    let mut equations = Vec::new();
    for (n, line) in lines(text) {
        match split_keyword(line) {
            ("vars", rest) => {
                if vars.is_some() {
                    return Err(line_err(n, "duplicate `vars` line"));
                }
                let names: Vec<&str> = rest.split_whitespace().collect();
                if names.is_empty() {
                    return Err(line_err(n, "`vars` needs at least one name"));
                }
                vars = Some(VarTable::new(names));
            }
            ("eq", rest) => {
                let table = vars.as_ref().ok_or_else(|| line_err(n, "`eq` before `vars`"))?;
                let f = parse_polynomial_with(rest, table).map_err(|e| line_err(n, e.to_string()))?;
                equations.push(f);
            }
            (k, _) => return Err(line_err(n, format!("unknown keyword `{k}`"))),
        }
    }
    let vars = vars.ok_or_else(|| IoError::Format("missing `vars` line".into()))?;
    if equations.is_empty() {
        return Err(IoError::Format("no `eq` lines".into()));
    }
    Ok(PolyFile { vars, equations })
}

pub fn parse_pde_file(text: &str) -> Result<PdeSystem> {
    let (mut p, mut n, mut base) = (None, None, None);
    let mut equations = Vec::new();
    let count = |line: usize, rest: &str| -> Result<usize> {
        rest.parse::<usize>().map_err(|_| line_err(line, format!("expected a nonnegative integer, found `{rest}`")))
    };
    for (ln, line) in lines(text) {
        match split_keyword(line) {
            ("unknowns", rest) => p = Some(count(ln, rest)?),
            ("surplus", rest) => n = Some(count(ln, rest)?),
            ("vars", rest) => base = Some(rest.split_whitespace().map(String::from).collect::<Vec<_>>()),
            ("eq", rest) => equations.push(parse_polynomial(rest).map_err(|e| line_err(ln, e.to_string()))?),
            (k, _) => return Err(line_err(ln, format!("unknown keyword `{k}`"))),
        }
    }
    let missing = |what: &str| IoError::Format(format!("missing `{what}` line"));
    Ok(PdeSystem::new(
        p.ok_or_else(|| missing("unknowns"))?,
        n.ok_or_else(|| missing("surplus"))?,
        base.ok_or_else(|| missing("vars"))?,
        equations,
    )?)
}

/// Parses a JSON object of variable names to rational strings or integers.
/// Jet tokens are normalized, so `S1` and `S1[ 0 ]` both name `S1[0]` when
/// `m = 1`.
pub fn parse_point_json(text: &str, m: usize) -> Result<Point> {
    let value: Value = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| IoError::Format("point must be a JSON object".into()))?;
    let mut point = Point::new();
    for (key, v) in obj {
        let text = match v {
            Value::String(s) => s.clone(),
            Value::Number(num) if num.is_i64() || num.is_u64() => num.to_string(),
            _ => return Err(IoError::Format(format!("value of `{key}` must be an integer or a \"p/q\" string"))),
        };
        let x = parse_scalar(&text).map_err(PolyError::from)?;
        let name = match JetVar::parse(&key.split_whitespace().collect::<String>(), m) {
            Some(jv) => jv.name(),
            None => key.clone(),
        };
        point.insert(name, x);
    }
    Ok(point)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpEquation {
    pub alpha: usize,
    pub k: usize,
    pub i: Vec<u32>,
    pub polynomial: String,
}

/// JSON form of a prolonged system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProlongedDump {
    pub variables: Vec<String>,
    pub equations: Vec<DumpEquation>,
    pub counts: Counts,
}

impl ProlongedDump {
    pub fn new(ps: &ProlongedSystem) -> Self {
        ProlongedDump {
            variables: ps.table().names().to_vec(),
            equations: ps
                .equations
                .iter()
                .map(|e| DumpEquation {
                    alpha: e.alpha,
                    k: e.k,
                    i: e.i.0.clone(),
                    polynomial: e.polynomial.to_string(),
                })
                .collect(),
            counts: ps.counts(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dump serializes")
    }

    /// Polynomials parsed back over the recorded table.
    pub fn polynomials(&self) -> Result<Vec<Polynomial>> {
        let table = VarTable::new(self.variables.iter().cloned());
        self.equations
            .iter()
            .map(|e| Ok(parse_polynomial_with(&e.polynomial, &table).map_err(PolyError::from)?))
            .collect()
    }

    /// Re-renders every polynomial after parsing it back.
    pub fn normalized(&self) -> Result<Self> {
        let polys = self.polynomials()?;
        let mut out = self.clone();
        for (e, f) in out.equations.iter_mut().zip(polys) {
            e.polynomial = f.to_string();
        }
        Ok(out)
    }
}
