//! Bezout-type functionals of mixed volumes and the inequalities around them.

mod checks;
mod search;
mod sweep;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{RationalVector, VPolytope};
use crate::mixed::{first_mixed_volume, mv};
use crate::rational::{self, Rational};
use crate::value::Value;

pub use checks::{
    af_check, diskant_check, fenchel_check, fenchel_sharp_check, fgm_check, rectangle_lemma_check,
    simplex_check, xiao_bound_check,
};
pub use search::{search_b2_lower, SearchOptions};
pub use sweep::{sweep, CheckKind, SweepReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportKind {
    B2Ratio,
    BRatio,
    BprimeRatio,
    B2Search,
    Diskant,
    Fenchel,
    FenchelSharp,
    Fgm,
    Rectangle,
    AlexandrovFenchel,
    SimplexBezout,
    Xiao,
}

/// An argument that produced a reported value.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    /// A body given by its vertices.
    Body { label: String, vertices: Vec<RationalVector> },
    /// The segment `[0, direction]`.
    Segment { direction: RationalVector },
    /// A segment found by the floating-point search.
    FloatSegment { direction: Vec<f64> },
    /// The facet perturbation `P_{facet, t}` of the reference body.
    Perturbation {
        facet: usize,
        #[serde(serialize_with = "rational::serialize")]
        t: Rational,
    },
}

impl Witness {
    pub fn body(label: impl Into<String>, p: &VPolytope) -> Self {
        Witness::Body {
            label: label.into(),
            vertices: p.vertices().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BezoutReport {
    pub kind: ReportKind,
    pub value: Value,
    pub witness: Vec<Witness>,
    /// Every arithmetic step behind `value` and `holds` was exact.
    pub certified: bool,
    /// Slack of the checked inequality (negative means violated); for ratios, `value - 1`.
    pub margin: Value,
    pub holds: bool,
    pub details: BTreeMap<String, serde_json::Value>,
}

impl BezoutReport {
    pub(crate) fn new(kind: ReportKind, value: Value, margin: Value, holds: bool) -> Self {
        BezoutReport {
            kind,
            certified: value.is_exact() && margin.is_exact(),
            value,
            witness: Vec::new(),
            margin,
            holds,
            details: BTreeMap::new(),
        }
    }

    pub(crate) fn detail(mut self, key: &str, value: impl Serialize) -> Self {
        self.details
            .insert(key.to_string(), serde_json::to_value(value).expect("serializable detail"));
        self
    }

    pub(crate) fn with_witness(mut self, witness: Vec<Witness>) -> Self {
        self.witness = witness;
        self
    }
}

pub(crate) fn exact_detail(r: &Rational) -> String {
    rational::format(r)
}

/// `V(A, K[n-1])`, through the facet measure of `K` when `K` is full-dimensional.
pub(crate) fn v1(a: &VPolytope, k: &VPolytope) -> Result<Rational> {
    if k.is_full_dimensional() {
        first_mixed_volume(a, k)
    } else {
        mv(&[(a, 1), (k, k.dim() - 1)])
    }
}

/// `V(A, B, K[n-2])`.
pub(crate) fn v2(a: &VPolytope, b: &VPolytope, k: &VPolytope) -> Result<Rational> {
    mv(&[(a, 1), (b, 1), (k, k.dim() - 2)])
}

fn volume_of(k: &VPolytope) -> Result<Rational> {
    k.require_full_dim()?;
    Ok(k.volume())
}

fn checked_ratio(num: Rational, den: Rational, what: &str) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::DegenerateDenominator(what.to_string()));
    }
    Ok(num / den)
}

/// `F_{K,b}(A,B) = b V(A,K[n-1]) V(B,K[n-1]) - V(A,B,K[n-2]) V(K)`.
pub fn fenchel_form(a: &VPolytope, b: &VPolytope, k: &VPolytope, b_const: &Rational) -> Result<Rational> {
    a.check_same_dim(k.dim())?;
    b.check_same_dim(k.dim())?;
    let vk = volume_of(k)?;
    Ok(b_const * v1(a, k)? * v1(b, k)? - v2(a, b, k)? * vk)
}

/// `G_{K,b}(A_1..A_n) = b V(A_2..A_n, K) V(A_1, K[n-1]) - V(A_1..A_n) V(K)`,
/// the form whose nonnegativity for `b = 1` is the simplex Bezout inequality.
pub fn bezout_form(a: &[VPolytope], k: &VPolytope, b_const: &Rational) -> Result<Rational> {
    let n = k.dim();
    check_tuple(a, n, n)?;
    let (num, den) = b_parts(a, k)?;
    Ok(b_const * den - num)
}

fn check_tuple(a: &[VPolytope], expected: usize, n: usize) -> Result<()> {
    if a.len() != expected {
        return Err(Error::Multiplicity {
            expected,
            found: a.len(),
        });
    }
    for body in a {
        body.check_same_dim(n)?;
    }
    Ok(())
}

/// Numerator `V(A_1..A_n) V(K)` and denominator `V(A_2..A_n, K) V(A_1, K[n-1])` of the b-ratio.
fn b_parts(a: &[VPolytope], k: &VPolytope) -> Result<(Rational, Rational)> {
    let all: Vec<(&VPolytope, usize)> = a.iter().map(|b| (b, 1)).collect();
    let mut tail: Vec<(&VPolytope, usize)> = a[1..].iter().map(|b| (b, 1)).collect();
    tail.push((k, 1));
    Ok((mv(&all)? * volume_of(k)?, mv(&tail)? * v1(&a[0], k)?))
}

/// `V(A,B,K[n-2]) V(K) / (V(A,K[n-1]) V(B,K[n-1]))`, a lower bound for `b_2(K)`.
pub fn ratio_b2(a: &VPolytope, b: &VPolytope, k: &VPolytope) -> Result<Rational> {
    a.check_same_dim(k.dim())?;
    b.check_same_dim(k.dim())?;
    let vk = volume_of(k)?;
    let den = v1(a, k)? * v1(b, k)?;
    checked_ratio(v2(a, b, k)? * vk, den, "V(A,K[n-1]) V(B,K[n-1]) = 0")
}

/// `V(A_1..A_n) V(K) / (V(A_2..A_n, K) V(A_1, K[n-1]))`, a lower bound for `b(K)`.
pub fn ratio_b(a: &[VPolytope], k: &VPolytope) -> Result<Rational> {
    check_tuple(a, k.dim(), k.dim())?;
    let (num, den) = b_parts(a, k)?;
    checked_ratio(num, den, "V(A_2..A_n,K) V(A_1,K[n-1]) = 0")
}

/// `V(L_1..L_{n-1}, K) V(K) / (V(K, K, L_2..L_{n-1}) V(L_1, K[n-1]))`.
pub fn ratio_bprime(l: &[VPolytope], k: &VPolytope) -> Result<Rational> {
    let n = k.dim();
    check_tuple(l, n - 1, n)?;
    let vk = volume_of(k)?;
    let mut with_k: Vec<(&VPolytope, usize)> = l.iter().map(|b| (b, 1)).collect();
    with_k.push((k, 1));
    let mut den_tuple: Vec<(&VPolytope, usize)> = l[1..].iter().map(|b| (b, 1)).collect();
    den_tuple.push((k, 2));
    let den = mv(&den_tuple)? * v1(&l[0], k)?;
    checked_ratio(mv(&with_k)? * vk, den, "V(K,K,L_2..L_{n-1}) V(L_1,K[n-1]) = 0")
}

/// Wraps a ratio as a report, with `margin = value - 1`.
pub fn ratio_report(kind: ReportKind, value: Rational, witness: Vec<Witness>) -> BezoutReport {
    let margin = &value - Rational::from_integer(1.into());
    BezoutReport::new(kind, Value::Exact(value), Value::Exact(margin), true).with_witness(witness)
}
