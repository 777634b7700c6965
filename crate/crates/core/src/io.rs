//! JSON formats for bodies, exponent supports, and the canonical corpus.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{RationalVector, VPolytope};
use crate::rational;

/// `{"name": ..., "dim": n, "vertices": [["p/q", ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BodyFile {
    pub name: String,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

/// `{"name": ..., "exponents": [[a, b], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportFile {
    pub name: String,
    pub exponents: Vec<(u32, u32)>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Parses and validates a body file; vertex lists with redundant points are rejected.
pub fn parse_body(text: &str) -> Result<(String, VPolytope)> {
    let file: BodyFile = serde_json::from_str(text).map_err(json_error)?;
    let mut points = Vec::with_capacity(file.vertices.len());
    for row in &file.vertices {
        if row.len() != file.dim {
            return Err(Error::Validation(format!(
                "vertex with {} coordinates in a body of dimension {}",
                row.len(),
                file.dim
            )));
        }
        let coords = row.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>()?;
        points.push(RationalVector::new(coords).map_err(|e| Error::Validation(e.to_string()))?);
    }
    let body = VPolytope::from_vertices(points).map_err(|e| match e {
        Error::Validation(_) => e,
        other => Error::Validation(other.to_string()),
    })?;
    Ok((file.name, body))
}

pub fn body_file(name: &str, p: &VPolytope) -> BodyFile {
    BodyFile {
        name: name.to_string(),
        dim: p.dim(),
        vertices: p
            .vertices()
            .iter()
            .map(|v| v.coords().iter().map(rational::format).collect())
            .collect(),
    }
}

pub fn body_json(name: &str, p: &VPolytope) -> String {
    serde_json::to_string_pretty(&body_file(name, p)).expect("body serializes")
}

pub fn parse_support(text: &str) -> Result<(String, Vec<(u32, u32)>)> {
    let file: SupportFile = serde_json::from_str(text).map_err(json_error)?;
    if file.exponents.is_empty() {
        return Err(Error::Validation("empty exponent support".into()));
    }
    Ok((file.name, file.exponents))
}

pub fn support_json(name: &str, exponents: &[(u32, u32)]) -> String {
    let file = SupportFile {
        name: name.to_string(),
        exponents: exponents.to_vec(),
    };
    serde_json::to_string_pretty(&file).expect("support serializes")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CorpusKind {
    Simplex,
    Cube,
    CrossPolytope,
}

impl CorpusKind {
    pub const ALL: [CorpusKind; 3] = [CorpusKind::Simplex, CorpusKind::Cube, CorpusKind::CrossPolytope];

    pub fn name(self) -> &'static str {
        match self {
            CorpusKind::Simplex => "simplex",
            CorpusKind::Cube => "cube",
            CorpusKind::CrossPolytope => "crosspolytope",
        }
    }

    pub fn body(self, n: usize) -> Result<VPolytope> {
        match self {
            CorpusKind::Simplex => VPolytope::simplex(n),
            CorpusKind::Cube => VPolytope::cube(n),
            CorpusKind::CrossPolytope => VPolytope::cross_polytope(n),
        }
    }
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorpusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CorpusKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown corpus body {s:?}")))
    }
}

/// Canonical corpus entry: file name (`simplex-3.json`) and its JSON text.
pub fn corpus_generate(kind: CorpusKind, n: usize) -> Result<(String, String)> {
    let body = kind.body(n)?;
    let name = format!("{kind}-{n}");
    Ok((format!("{name}.json"), body_json(&name, &body)))
}
