use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::Serialize;

use crate::bezout::{
    af_check, diskant_check, fenchel_check, fenchel_sharp_check, fgm_check, ratio_b, rectangle_lemma_check,
    simplex_check, BezoutReport, ReportKind, Witness,
};
use crate::error::{Error, Result};
use crate::geom::VPolytope;
use crate::par;
use crate::random::{random_body, random_polytope, trial_rng, TrialRng};
use crate::rational::Rational;
use crate::value::Value;

/// Inequalities that can be swept over random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Fenchel,
    FenchelSharp,
    Fgm,
    Diskant,
    Xiao,
    Af,
    Rectangle,
    Simplex,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Fenchel,
        CheckKind::FenchelSharp,
        CheckKind::Fgm,
        CheckKind::Diskant,
        CheckKind::Xiao,
        CheckKind::Af,
        CheckKind::Rectangle,
        CheckKind::Simplex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Fenchel => "fenchel",
            CheckKind::FenchelSharp => "fenchel-sharp",
            CheckKind::Fgm => "fgm",
            CheckKind::Diskant => "diskant",
            CheckKind::Xiao => "xiao",
            CheckKind::Af => "af",
            CheckKind::Rectangle => "rectangle",
            CheckKind::Simplex => "simplex",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check '{s}'")))
    }
}

/// Outcome of checking one inequality on many seeded random instances.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub kind: CheckKind,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub evaluated: usize,
    /// Instances with a vanishing denominator, which the inequality does not cover.
    pub skipped: Vec<usize>,
    pub violations: Vec<usize>,
    pub min_margin: Option<Value>,
    pub worst_trial: Option<usize>,
    /// True when every evaluated instance was decided in exact arithmetic.
    pub certified: bool,
    /// Per-trial margin as a decimal (`null` for skipped trials).
    pub margins: Vec<Option<f64>>,
    pub worst: Option<BezoutReport>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs `kind` on `trials` random instances in dimension `dim` (forced to 2 for the rectangle lemma).
pub fn sweep(kind: CheckKind, dim: usize, trials: usize, seed: u64, digits: u32) -> Result<SweepReport> {
    let dim = if kind == CheckKind::Rectangle { 2 } else { dim };
    crate::geom::vector::check_dim(dim)?;
    let outcomes: Vec<Result<Option<BezoutReport>>> = par::map_range(trials, |t| {
        let mut rng = trial_rng(seed, t as u64);
        match instance(kind, dim, digits, &mut rng) {
            Ok(r) => Ok(Some(r)),
            Err(Error::DegenerateDenominator(_)) => Ok(None),
            Err(e) => Err(e),
        }
    });
    let mut report = SweepReport {
        kind,
        dim,
        trials,
        seed,
        evaluated: 0,
        skipped: Vec::new(),
        violations: Vec::new(),
        min_margin: None,
        worst_trial: None,
        certified: true,
        margins: Vec::with_capacity(trials),
        worst: None,
    };
    let mut worst_value = f64::INFINITY;
    for (t, outcome) in outcomes.into_iter().enumerate() {
        let Some(r) = outcome? else {
            report.skipped.push(t);
            report.margins.push(None);
            continue;
        };
        report.evaluated += 1;
        report.certified &= r.certified;
        if !r.holds {
            report.violations.push(t);
        }
        let m = r.margin.to_f64();
        report.margins.push(Some(m));
        let worse = match (&report.min_margin, &r.margin) {
            (None, _) => true,
            (Some(Value::Exact(a)), Value::Exact(b)) => b < a,
            _ => m < worst_value,
        };
        if worse {
            worst_value = m;
            report.min_margin = Some(r.margin.clone());
            report.worst_trial = Some(t);
            report.worst = Some(r);
        }
    }
    Ok(report)
}

fn polytope(rng: &mut TrialRng, dim: usize) -> VPolytope {
    use rand::Rng;
    let extra = rng.gen_range(0..=3);
    random_polytope(rng, dim, dim + 1 + extra)
}

fn instance(kind: CheckKind, n: usize, digits: u32, rng: &mut TrialRng) -> Result<BezoutReport> {
    match kind {
        CheckKind::Fenchel => {
            let k = polytope(rng, n);
            let (a, b) = (random_body(rng, n), random_body(rng, n));
            fenchel_check(&a, &b, &k)
        }
        CheckKind::Simplex => {
            let s = random_polytope(rng, n, n + 1);
            let a: Vec<VPolytope> = (0..n).map(|_| random_body(rng, n)).collect();
            simplex_check(&a, &s)
        }
        CheckKind::FenchelSharp => {
            let k = polytope(rng, n);
            let (m, l) = (random_body(rng, n), random_body(rng, n));
            fenchel_sharp_check(&k, &m, &l)
        }
        CheckKind::Fgm => {
            let k = polytope(rng, n);
            let (a, b, c) = (random_body(rng, n), random_body(rng, n), random_body(rng, n));
            fgm_check(&a, &b, &c, &k)
        }
        CheckKind::Diskant => {
            let (k, l) = (polytope(rng, n), polytope(rng, n));
            diskant_check(&k, &l, digits)
        }
        CheckKind::Xiao => {
            let k = polytope(rng, n);
            let a: Vec<VPolytope> = (0..n).map(|_| random_body(rng, n)).collect();
            let r = ratio_b(&a, &k)?;
            let bound = Rational::from_integer(n.into());
            let margin = &bound - &r;
            let mut witness: Vec<Witness> = a
                .iter()
                .enumerate()
                .map(|(i, b)| Witness::body(format!("A{}", i + 1), b))
                .collect();
            witness.push(Witness::body("K", &k));
            Ok(BezoutReport::new(ReportKind::Xiao, Value::Exact(r), Value::Exact(margin.clone()), !margin.is_negative())
                .with_witness(witness))
        }
        CheckKind::Af => {
            let (k1, k2) = (random_body(rng, n), random_body(rng, n));
            let rest: Vec<(VPolytope, usize)> = (0..n - 2).map(|_| (polytope(rng, n), 1)).collect();
            af_check(&k1, &k2, &rest)
        }
        CheckKind::Rectangle => {
            let (a, b) = (random_body(rng, 2), random_body(rng, 2));
            rectangle_lemma_check(&a, &b)
        }
    }
}
