use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exclusion::perturb::{perturb_with, stability_from, Arrangement, PerturbedPolytope};
use crate::geom::{homothety_check, DirectionalMeasure, RationalVector, VPolytope};
use crate::mixed::{mixed_surface_measure, BodyTuple};
use crate::rational::{self, Rational};

/// `S(P[n-1-r], Q[r], .)`.
fn sigma(p: &VPolytope, q: &VPolytope, r: usize) -> Result<DirectionalMeasure> {
    let n = p.dim();
    mixed_surface_measure(&BodyTuple::new(vec![(p.clone(), n - 1 - r), (q.clone(), r)])?)
}

fn normal_set(m: &DirectionalMeasure) -> BTreeSet<&RationalVector> {
    m.normals().into_iter().collect()
}

fn stable_perturbation(p: &VPolytope, i: usize, t: &Rational) -> Result<PerturbedPolytope> {
    p.require_full_dim()?;
    perturb_with(&Arrangement::new(p)?, p, i, t)
}

/// Whether `S(P[n-1-r], P_{i,t}[r], .)` is supported on exactly the facet normals of `P`.
pub fn support_equality_check(p: &VPolytope, i: usize, t: &Rational, r: usize) -> Result<bool> {
    let n = p.dim();
    if r > n - 1 {
        return Err(Error::Multiplicity { expected: n - 1, found: r });
    }
    let q = stable_perturbation(p, i, t)?;
    let s_p = p.facet_measure()?;
    let s_r = sigma(p, &q.result, r)?;
    Ok(normal_set(&s_r) == normal_set(&s_p))
}

/// First atom where `sigma_r` and `lambda^r S_P` disagree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtomMismatch {
    pub normal: RationalVector,
    #[serde(serialize_with = "rational::serialize")]
    pub expected: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub found: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SigmaLevel {
    pub r: usize,
    pub proportional: bool,
    pub first_violation: Option<AtomMismatch>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SigmaReport {
    pub facet: usize,
    #[serde(serialize_with = "rational::serialize")]
    pub t: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub lambda_t: Rational,
    pub levels: Vec<SigmaLevel>,
}

impl SigmaReport {
    pub fn proportional(&self) -> bool {
        self.levels.iter().all(|l| l.proportional)
    }
}

/// Compares `sigma_r = S(P[n-1-r], P_{i,t}[r], .)` with `lambda_t^r S_P` atom by atom for `r = 1..n-1`.
pub fn sigma_proportionality(p: &VPolytope, i: usize, t: &Rational) -> Result<SigmaReport> {
    let n = p.dim();
    let q = stable_perturbation(p, i, t)?;
    let s_p = p.facet_measure()?;
    let mut levels = Vec::with_capacity(n - 1);
    let mut power = Rational::one();
    for r in 1..n {
        power *= &q.lambda_t;
        let s_r = sigma(p, &q.result, r)?;
        let normals: BTreeSet<&RationalVector> = normal_set(&s_p).union(&normal_set(&s_r)).copied().collect();
        let first_violation = normals.into_iter().find_map(|w| {
            let expected = s_p.weight(w).map_or_else(Rational::zero, |x| x * &power);
            let found = s_r.weight(w).cloned().unwrap_or_else(Rational::zero);
            (expected != found).then(|| AtomMismatch {
                normal: w.clone(),
                expected,
                found,
            })
        });
        levels.push(SigmaLevel {
            r,
            proportional: first_violation.is_none(),
            first_violation,
        });
    }
    Ok(SigmaReport {
        facet: i,
        t: t.clone(),
        lambda_t: q.lambda_t,
        levels,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeakDecomposition {
    pub decomposable: bool,
    /// A summand `L = P_{i,t}` that is not homothetic to `P` and adds no new facet normals to `P + L`.
    pub witness: Option<PerturbedPolytope>,
}

/// Decides weak decomposability of a full-dimensional polytope.
///
/// Simplices are the only weakly indecomposable polytopes; for any other
/// polytope the first facet (in normal order) with at least two vertices off
/// it is shifted outward by a stable amount and the result is verified as a
/// witness.
pub fn weakly_decomposable_polytope(p: &VPolytope) -> Result<WeakDecomposition> {
    p.require_full_dim()?;
    if p.is_simplex() {
        return Ok(WeakDecomposition {
            decomposable: false,
            witness: None,
        });
    }
    let arr = Arrangement::new(p)?;
    let normals = normal_set(&p.facet_measure()?).into_iter().cloned().collect::<BTreeSet<_>>();
    for (i, f) in p.hull().facets.iter().enumerate() {
        if p.vertices().len() - f.vertex_ids.len() < 2 {
            continue;
        }
        let Some(t) = stability_from(&arr, i)?.half_step(true).filter(|t| *t > Rational::zero()) else {
            continue;
        };
        let q = perturb_with(&arr, p, i, &t)?;
        let sum = p.minkowski_sum(&q.result)?;
        let sum_normals: BTreeSet<RationalVector> = sum.hull().facets.iter().map(|f| f.normal.clone()).collect();
        if sum_normals.is_subset(&normals) && homothety_check(p, &q.result)?.homothety.is_none() {
            return Ok(WeakDecomposition {
                decomposable: true,
                witness: Some(q),
            });
        }
    }
    Err(Error::DegenerateInput("no verified weak-decomposition witness".into()))
}
