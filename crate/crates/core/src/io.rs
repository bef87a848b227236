//! The `.wsc` text format and the JSON report types.
//!
//! ```text
//! wsc v1
//! # solid triangle with a cone point of zero g-weight
//! vertex v0 f=1 g=1
//! vertex v1 f=1/2 g=-3
//! vertex v2 f=0.25 g=2
//! vertex v3 f=1 g=0
//! simplex v0 v1 v2
//! simplex v0 v3
//! ```
//!
//! Declaration order fixes the vertex order. `simplex` lines name generators
//! and the complex is their closure. `#` starts a comment anywhere on a line.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::Serialize;
use thiserror::Error;

use crate::chain::{VertexWeights, WeightPair};
use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::exact::Rational;

pub const FORMAT_VERSION: &str = "v1";

/// Generators with more vertices than this are rejected; closure is exponential.
pub const MAX_SIMPLEX_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVertex(String),
    DuplicateVertex(String),
    UnsupportedVersion(String),
}

/// A diagnostic at a 1-based line and column (columns count characters).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            ParseErrorKind::DuplicateVertex(v) => write!(f, "duplicate vertex `{v}`"),
            ParseErrorKind::UnsupportedVersion(v) => write!(f, "unsupported format version `{v}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDecl {
    pub name: String,
    pub f: Rational,
    pub g: Rational,
}

/// The syntactic content of a `.wsc` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WscDocument {
    pub version: String,
    pub vertices: Vec<VertexDecl>,
    pub simplices: Vec<Vec<String>>,
}

impl WscDocument {
    /// Closure of the generators, with `f` and `g` indexed by declaration order.
    pub fn to_complex(&self) -> (SimplicialComplex, WeightPair) {
        let universe: Vec<Vertex> =
            self.vertices.iter().enumerate().map(|(rank, v)| Vertex { id: v.name.clone(), rank }).collect();
        let gens: Vec<Simplex> = self
            .simplices
            .iter()
            .map(|s| {
                let ranks = s.iter().map(|n| self.vertices.iter().position(|v| &v.name == n).expect("checked")).collect();
                Simplex::new(ranks).expect("checked")
            })
            .collect();
        let k = SimplicialComplex::from_generators(universe, &gens).expect("checked");
        let f = VertexWeights::new(self.vertices.iter().map(|v| v.f.clone()).collect());
        let g = VertexWeights::new(self.vertices.iter().map(|v| v.g.clone()).collect());
        (k, WeightPair::new(f, g))
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (i, c)) in body.char_indices().enumerate() {
        if c.is_whitespace() {
            if let Some((s, sc)) = start.take() {
                out.push(Token { text: &body[s..i], column: sc + 1 });
            }
        } else if start.is_none() {
            start = Some((i, col));
        }
    }
    if let Some((s, sc)) = start {
        out.push(Token { text: &body[s..], column: sc + 1 });
    }
    out
}

pub fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `-?[0-9]+(/[1-9][0-9]*)?` or a finite decimal `-?[0-9]+.[0-9]+`, converted exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let value = if let Some((n, d)) = body.split_once('/') {
        if !digits(n) || !digits(d) || d.starts_with('0') {
            return None;
        }
        Rational::new(n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?)
    } else if let Some((i, frac)) = body.split_once('.') {
        if !digits(i) || !digits(frac) {
            return None;
        }
        let scale: BigInt = Pow::pow(BigInt::from(10u8), frac.len());
        Rational::new(format!("{i}{frac}").parse::<BigInt>().ok()?, scale)
    } else {
        if !digits(body) {
            return None;
        }
        Rational::from_integer(body.parse::<BigInt>().ok()?)
    };
    Some(if neg { -value } else { value })
}

/// Parse a document without building the complex.
pub fn parse_document(text: &str) -> Result<WscDocument, ParseError> {
    let mut version: Option<String> = None;
    let mut doc = WscDocument { version: String::new(), vertices: Vec::new(), simplices: Vec::new() };
    let mut last_line = 0;
    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let tokens = tokenize(line);
        let Some(head) = tokens.first() else { continue };
        let err = |column: usize, kind: ParseErrorKind| ParseError { line: line_no, column, kind };
        let syntax = |column: usize, m: &str| err(column, ParseErrorKind::Syntax(m.to_string()));

        if version.is_none() {
            if head.text != "wsc" {
                return Err(syntax(head.column, "expected header `wsc v1`"));
            }
            let Some(v) = tokens.get(1) else {
                return Err(syntax(head.column + head.text.chars().count(), "missing format version"));
            };
            if v.text != FORMAT_VERSION {
                return Err(err(v.column, ParseErrorKind::UnsupportedVersion(v.text.to_string())));
            }
            if let Some(extra) = tokens.get(2) {
                return Err(syntax(extra.column, "unexpected token after header"));
            }
            version = Some(v.text.to_string());
            continue;
        }

        match head.text {
            "vertex" => {
                let Some(name) = tokens.get(1) else {
                    return Err(syntax(head.column, "expected `vertex <name> f=<rat> g=<rat>`"));
                };
                if !is_valid_name(name.text) {
                    return Err(syntax(name.column, "invalid vertex name"));
                }
                if doc.vertices.iter().any(|v| v.name == name.text) {
                    return Err(err(name.column, ParseErrorKind::DuplicateVertex(name.text.to_string())));
                }
                let mut f = None;
                let mut g = None;
                for t in &tokens[2..] {
                    let (key, val) = t.text.split_once('=').ok_or_else(|| syntax(t.column, "expected `f=` or `g=`"))?;
                    let slot = match key {
                        "f" => &mut f,
                        "g" => &mut g,
                        _ => return Err(syntax(t.column, "expected `f=` or `g=`")),
                    };
                    if slot.is_some() {
                        return Err(syntax(t.column, "weight given twice"));
                    }
                    let q = parse_rational(val).ok_or_else(|| syntax(t.column + key.len() + 1, "invalid rational"))?;
                    *slot = Some(q);
                }
                let end = line.chars().count() + 1;
                let f = f.ok_or_else(|| syntax(end, "missing `f=`"))?;
                let g = g.ok_or_else(|| syntax(end, "missing `g=`"))?;
                doc.vertices.push(VertexDecl { name: name.text.to_string(), f, g });
            }
            "simplex" => {
                if tokens.len() < 2 {
                    return Err(syntax(head.column, "simplex needs at least one vertex"));
                }
                if tokens.len() - 1 > MAX_SIMPLEX_VERTICES {
                    return Err(syntax(tokens[1].column, "simplex has too many vertices"));
                }
                let mut names: Vec<String> = Vec::with_capacity(tokens.len() - 1);
                for t in &tokens[1..] {
                    if !is_valid_name(t.text) {
                        return Err(syntax(t.column, "invalid vertex name"));
                    }
                    if !doc.vertices.iter().any(|v| v.name == t.text) {
                        return Err(err(t.column, ParseErrorKind::UnknownVertex(t.text.to_string())));
                    }
                    if names.iter().any(|n| n == t.text) {
                        return Err(err(t.column, ParseErrorKind::DuplicateVertex(t.text.to_string())));
                    }
                    names.push(t.text.to_string());
                }
                doc.simplices.push(names);
            }
            _ => return Err(syntax(head.column, "expected `vertex` or `simplex`")),
        }
    }
    doc.version = version.ok_or(ParseError {
        line: last_line.max(1),
        column: 1,
        kind: ParseErrorKind::Syntax("missing header `wsc v1`".into()),
    })?;
    Ok(doc)
}

pub fn parse_wsc(text: &str) -> Result<(SimplicialComplex, WeightPair), ParseError> {
    Ok(parse_document(text)?.to_complex())
}

/// Like [`parse_wsc`] but reports invalid UTF-8 as a positioned diagnostic.
pub fn parse_wsc_bytes(bytes: &[u8]) -> Result<(SimplicialComplex, WeightPair), ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse_wsc(text),
        Err(e) => {
            let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).expect("prefix is valid");
            let line = valid.matches('\n').count() + 1;
            let column = valid.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            Err(ParseError { line, column, kind: ParseErrorKind::Syntax("invalid UTF-8".into()) })
        }
    }
}

/// Canonical text: vertices in order, then maximal faces in canonical order.
pub fn serialize_wsc(k: &SimplicialComplex, w: &WeightPair) -> String {
    let mut out = format!("wsc {FORMAT_VERSION}\n");
    for v in k.vertices() {
        out.push_str(&format!("vertex {} f={} g={}\n", v.id, w.f.get(v.rank), w.g.get(v.rank)));
    }
    for s in k.maximal_faces() {
        out.push_str(&format!("simplex {}\n", k.simplex_name(&s)));
    }
    out
}

/// Exact rationals as `p/q` strings (`p` alone when `q = 1`).
pub fn exact_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidateReport {
    pub valid: bool,
    pub vertices: usize,
    pub dimension: isize,
    pub simplex_counts: Vec<usize>,
    pub euler_characteristic: i64,
    pub maximal_faces: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomologyDegreeReport {
    pub degree: usize,
    pub betti: usize,
    /// Rank of the induced form on homology.
    pub form_rank: usize,
    pub inner_product: bool,
    /// Gram matrix of the induced form, entries as exact strings.
    pub gram: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomologyReport {
    pub degrees: Vec<HomologyDegreeReport>,
    pub euler_characteristic: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumDegreeReport {
    pub degree: usize,
    pub dimension: usize,
    pub eigenvalues: Vec<f64>,
    pub zero_count: usize,
    pub exact_rank: usize,
    pub pseudo_determinant: String,
    pub threshold_disagrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    /// Degrees refer to the restricted complex `K×_g`.
    pub degrees: Vec<SpectrumDegreeReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorsionReport {
    pub mode: String,
    pub s_exponent: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_torsion: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_squared: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pseudo_determinants: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub trial: usize,
    pub passed: bool,
    pub f: Vec<String>,
    pub g: Vec<String>,
    /// Per-identity exact sides, `[lhs, rhs]`.
    pub sides: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub law: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub outcomes: Vec<TrialReport>,
}
