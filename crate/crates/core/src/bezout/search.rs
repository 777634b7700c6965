use argmin::core::{CostFunction, Error as ArgminError, Executor};
use argmin::solver::neldermead::NelderMead;
use num_traits::One;
use serde::Serialize;

use crate::bezout::{ratio_b2, ratio_report, BezoutReport, ReportKind, Witness};
use crate::error::{Error, Result};
use crate::exclusion::{perturb_with, Arrangement};
use crate::geom::{RationalVector, VPolytope};
use crate::mixed::SegmentKernel;
use crate::par;
use crate::random::{random_unit, trial_rng};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Number of floating-point direction pairs scanned by the sphere search.
    pub budget: usize,
    pub seed: u64,
    pub float_search: bool,
    pub perturbations: bool,
    /// How many of the best scanned pairs are refined and re-certified.
    pub refine: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 10_000,
            seed: 0,
            float_search: true,
            perturbations: true,
            refine: 6,
        }
    }
}

/// Candidate families, in tie-breaking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Family {
    Baseline,
    EdgePair,
    Perturbation,
    Recertified,
}

struct Candidate {
    value: Rational,
    key: (Family, usize),
    witness: Vec<Witness>,
}

/// Best certified lower bound for `b_2(K)` over segment pairs along edge
/// directions, re-certified floating-point sphere-search optima, and pairs of
/// facet perturbations. Ties keep the candidate from the earliest family.
pub fn search_b2_lower(k: &VPolytope, opts: &SearchOptions) -> Result<BezoutReport> {
    k.require_full_dim()?;
    let n = k.dim();
    let mut candidates = vec![Candidate {
        value: Rational::one(),
        key: (Family::Baseline, 0),
        witness: vec![Witness::body("K", k), Witness::body("K", k)],
    }];

    let dirs = k.edge_directions();
    let pairs: Vec<(usize, usize)> = (0..dirs.len())
        .flat_map(|i| (i + 1..dirs.len()).map(move |j| (i, j)))
        .collect();
    let edge_values = par::map(&pairs, |&(i, j)| segment_ratio(k, &dirs[i], &dirs[j]));
    for (idx, (&(i, j), v)) in pairs.iter().zip(edge_values).enumerate() {
        if let Some(value) = v? {
            candidates.push(Candidate {
                value,
                key: (Family::EdgePair, idx),
                witness: vec![
                    Witness::Segment { direction: dirs[i].clone() },
                    Witness::Segment { direction: dirs[j].clone() },
                ],
            });
        }
    }

    let mut perturbation_pairs = 0;
    if opts.perturbations {
        let arr = Arrangement::new(k)?;
        let mut bodies = Vec::new();
        for i in 0..arr.facet_count() {
            let interval = crate::exclusion::stability_interval(k, i)?;
            for positive in [true, false] {
                if let Some(t) = interval.half_step(positive) {
                    bodies.push((i, t.clone(), perturb_with(&arr, k, i, &t)?.result));
                }
            }
        }
        let pairs: Vec<(usize, usize)> = (0..bodies.len())
            .flat_map(|i| (i + 1..bodies.len()).map(move |j| (i, j)))
            .collect();
        perturbation_pairs = pairs.len();
        let values = par::map(&pairs, |&(a, b)| ratio_b2(&bodies[a].2, &bodies[b].2, k));
        for (idx, (&(a, b), v)) in pairs.iter().zip(values).enumerate() {
            candidates.push(Candidate {
                value: v?,
                key: (Family::Perturbation, idx),
                witness: vec![
                    Witness::Perturbation { facet: bodies[a].0, t: bodies[a].1.clone() },
                    Witness::Perturbation { facet: bodies[b].0, t: bodies[b].1.clone() },
                ],
            });
        }
    }

    let mut float = FloatOutcome::default();
    if opts.float_search && opts.budget > 0 {
        float = sphere_search(k, n, opts)?;
        for (idx, (u, v)) in float.rational_pairs.iter().enumerate() {
            if let Some(value) = segment_ratio(k, u, v)? {
                candidates.push(Candidate {
                    value,
                    key: (Family::Recertified, idx),
                    witness: vec![
                        Witness::Segment { direction: u.clone() },
                        Witness::Segment { direction: v.clone() },
                    ],
                });
            }
        }
    }

    let best = candidates
        .iter()
        .max_by(|a, b| a.value.cmp(&b.value).then_with(|| b.key.cmp(&a.key)))
        .expect("baseline candidate");
    Ok(ratio_report(ReportKind::B2Search, best.value.clone(), best.witness.clone())
        .detail("family", best.key.0)
        .detail("decimal", rational::to_f64(&best.value))
        .detail("edge_directions", dirs.len())
        .detail("edge_pairs", pairs.len())
        .detail("perturbation_pairs", perturbation_pairs)
        .detail("float_pairs", float.pairs)
        .detail("float_incumbent", float.incumbent)
        .detail("float_incumbent_directions", &float.incumbent_dirs)
        .detail("recertified_candidates", float.rational_pairs.len())
        .detail("budget", opts.budget)
        .detail("seed", opts.seed))
}

/// Exact ratio for two segments, or `None` if a denominator vanishes.
fn segment_ratio(k: &VPolytope, u: &RationalVector, v: &RationalVector) -> Result<Option<Rational>> {
    match ratio_b2(&VPolytope::segment(u)?, &VPolytope::segment(v)?, k) {
        Ok(r) => Ok(Some(r)),
        Err(Error::DegenerateDenominator(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Default)]
struct FloatOutcome {
    pairs: usize,
    incumbent: Option<f64>,
    incumbent_dirs: Vec<Vec<f64>>,
    rational_pairs: Vec<(RationalVector, RationalVector)>,
}

/// Directions on a half-sphere: a Fibonacci lattice in R^3, equally spaced
/// angles in R^2, seeded uniform samples otherwise.
fn sphere_directions(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    match n {
        2 => (0..count)
            .map(|i| {
                let a = std::f64::consts::PI * i as f64 / count as f64;
                vec![a.cos(), a.sin()]
            })
            .collect(),
        3 => {
            let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
            let m = 2 * count;
            (0..count)
                .map(|i| {
                    let z = 1.0 - (2 * i + 1) as f64 / m as f64;
                    let r = (1.0 - z * z).sqrt();
                    let phi = golden * i as f64;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect()
        }
        _ => (0..count).map(|i| random_unit(&mut trial_rng(seed, i as u64), n)).collect(),
    }
}

struct PairCost<'a> {
    kernel: &'a SegmentKernel,
    n: usize,
}

impl CostFunction for PairCost<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Self::Param) -> std::result::Result<f64, ArgminError> {
        Ok(-self.kernel.ratio_b2(&p[..self.n], &p[self.n..]))
    }
}

fn refine(kernel: &SegmentKernel, n: usize, u: &[f64], v: &[f64]) -> (f64, Vec<f64>) {
    let start: Vec<f64> = u.iter().chain(v).copied().collect();
    let mut simplex = vec![start.clone()];
    for i in 0..start.len() {
        let mut p = start.clone();
        p[i] += 0.05;
        simplex.push(p);
    }
    let initial = (kernel.ratio_b2(u, v), start);
    let Ok(solver) = NelderMead::new(simplex).with_sd_tolerance(1e-13) else {
        return initial;
    };
    let run = Executor::new(PairCost { kernel, n }, solver)
        .configure(|s| s.max_iters(400))
        .run();
    match run {
        Ok(res) => match res.state().best_param.clone() {
            Some(p) => {
                let value = kernel.ratio_b2(&p[..n], &p[n..]);
                if value >= initial.0 {
                    (value, p)
                } else {
                    initial
                }
            }
            None => initial,
        },
        Err(_) => initial,
    }
}

/// Rounds a direction to a small-denominator rational one.
fn rationalize(u: &[f64], max_den: i64) -> Option<RationalVector> {
    let scale = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    let v = RationalVector::raw(u.iter().map(|x| rational::approximate(x / scale, max_den)).collect());
    (!v.is_zero()).then(|| v.primitive())
}

fn sphere_search(k: &VPolytope, n: usize, opts: &SearchOptions) -> Result<FloatOutcome> {
    let kernel = SegmentKernel::new(k)?;
    let count = (((1.0 + (1.0 + 8.0 * opts.budget as f64).sqrt()) / 2.0).floor() as usize).max(4);
    let dirs = sphere_directions(n, count, opts.seed);
    let total = count * (count - 1) / 2;
    let index = |p: usize| {
        // Row-major enumeration of i < j.
        let mut i = 0;
        let mut rem = p;
        while rem >= count - 1 - i {
            rem -= count - 1 - i;
            i += 1;
        }
        (i, i + 1 + rem)
    };
    let values = par::map_range(total, |p| {
        let (i, j) = index(p);
        kernel.ratio_b2(&dirs[i], &dirs[j])
    });
    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    order.truncate(opts.refine);

    let refined = par::map(&order, |&p| {
        let (i, j) = index(p);
        refine(&kernel, n, &dirs[i], &dirs[j])
    });
    let mut out = FloatOutcome {
        pairs: total,
        ..FloatOutcome::default()
    };
    let mut seen = std::collections::BTreeSet::new();
    for (&p, (value, params)) in order.iter().zip(&refined) {
        if out.incumbent.is_none_or(|best| *value > best) {
            out.incumbent = Some(*value);
            out.incumbent_dirs = vec![params[..n].to_vec(), params[n..].to_vec()];
        }
        let (i, j) = index(p);
        let sources = [(&params[..n], &params[n..]), (&dirs[i][..], &dirs[j][..])];
        for (u, v) in sources {
            for max_den in [4, 16, 64, 512] {
                if let (Some(ru), Some(rv)) = (rationalize(u, max_den), rationalize(v, max_den)) {
                    if seen.insert((ru.clone(), rv.clone())) {
                        out.rational_pairs.push((ru, rv));
                    }
                }
            }
        }
    }
    Ok(out)
}
