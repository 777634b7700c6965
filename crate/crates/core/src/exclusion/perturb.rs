use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{RationalVector, VPolytope};
use crate::linalg;
use crate::rational::{self, Rational};

/// `P_{i,t}`: the polytope with the offset of facet `i` moved from `h_i` to `h_i + t`.
///
/// `t` is measured against the primitive integer normal of the facet, so the
/// facet plane moves by `t / |w_i|` in Euclidean distance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerturbedPolytope {
    pub base: VPolytope,
    pub facet_index: usize,
    #[serde(serialize_with = "rational::serialize")]
    pub t: Rational,
    pub result: VPolytope,
    /// `V(P_{i,t}, P[n-1]) / V(P)`.
    #[serde(serialize_with = "rational::serialize")]
    pub lambda_t: Rational,
}

/// Interval of shifts `t` that keep every facet normal of `P`; `None` marks an infinite end.
///
/// An end is closed when the polytope at that shift still has the normals of
/// `P`, as happens when only a vertex degenerates there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityInterval {
    #[serde(serialize_with = "serialize_end")]
    pub lower: Option<Rational>,
    #[serde(serialize_with = "serialize_end")]
    pub upper: Option<Rational>,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

fn serialize_end<S: serde::Serializer>(end: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match end {
        Some(r) => s.serialize_str(&rational::format(r)),
        None => s.serialize_none(),
    }
}

impl StabilityInterval {
    pub fn contains(&self, t: &Rational) -> bool {
        t.is_zero()
            || (self.lower.as_ref().is_none_or(|l| t > l || (self.lower_closed && t == l))
                && self.upper.as_ref().is_none_or(|u| t < u || (self.upper_closed && t == u)))
    }

    /// A shift halfway to the boundary on the requested side (or a unit shift when that side is unbounded).
    pub fn half_step(&self, positive: bool) -> Option<Rational> {
        let two = Rational::from_integer(2.into());
        let (near, far) = if positive { (&self.upper, &self.lower) } else { (&self.lower, &self.upper) };
        let step = match (near, far) {
            (Some(b), _) => b / &two,
            (None, Some(f)) => -(f / &two),
            (None, None) => {
                if positive {
                    Rational::one()
                } else {
                    -Rational::one()
                }
            }
        };
        (!step.is_zero()).then_some(step)
    }

    fn render(end: &Option<Rational>, inf: &str) -> String {
        end.as_ref().map_or(inf.to_string(), rational::format)
    }
}

impl fmt::Display for StabilityInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lower_closed { '[' } else { '(' },
            Self::render(&self.lower, "-inf"),
            Self::render(&self.upper, "+inf"),
            if self.upper_closed { ']' } else { ')' }
        )
    }
}

/// The halfspace description of a full-dimensional polytope together with all
/// basic solutions `x_S` of `n`-subsets `S` of facets, which are the vertex
/// candidates of every perturbation.
pub(crate) struct Arrangement {
    n: usize,
    normals: Vec<Vec<Rational>>,
    offsets: Vec<Rational>,
    /// `(S, x_S(0), A_S^{-1})` for every subset with independent normals.
    bases: Vec<(Vec<usize>, Vec<Rational>, Vec<Vec<Rational>>)>,
}

impl Arrangement {
    pub(crate) fn new(p: &VPolytope) -> Result<Self> {
        p.require_full_dim()?;
        let n = p.dim();
        let facets = &p.hull().facets;
        let normals: Vec<Vec<Rational>> = facets.iter().map(|f| f.normal.coords().to_vec()).collect();
        let offsets: Vec<Rational> = facets.iter().map(|f| f.offset.clone()).collect();
        let mut bases = Vec::new();
        for subset in subsets(normals.len(), n) {
            let a: Vec<Vec<Rational>> = subset.iter().map(|&j| normals[j].clone()).collect();
            let Some(inv) = inverse(&a) else { continue };
            let x0 = (0..n)
                .map(|r| subset.iter().enumerate().map(|(c, &j)| &inv[r][c] * &offsets[j]).sum())
                .collect();
            bases.push((subset, x0, inv));
        }
        Ok(Arrangement {
            n,
            normals,
            offsets,
            bases,
        })
    }

    pub(crate) fn facet_count(&self) -> usize {
        self.normals.len()
    }

    /// Position and velocity of the basic solution of `S` when facet `i` moves.
    fn motion(&self, b: &(Vec<usize>, Vec<Rational>, Vec<Vec<Rational>>), i: usize) -> (Vec<Rational>, Vec<Rational>) {
        let (subset, x0, inv) = b;
        let d = match subset.iter().position(|&j| j == i) {
            Some(c) => (0..self.n).map(|r| inv[r][c].clone()).collect(),
            None => vec![Rational::zero(); self.n],
        };
        (x0.clone(), d)
    }

    /// Largest open interval around 0 on which the set of feasible basic
    /// solutions (hence the facet structure) does not change, apart from changes at 0 itself.
    pub(crate) fn breakpoints(&self, i: usize) -> StabilityInterval {
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        for b in &self.bases {
            let (x0, d) = self.motion(b, i);
            for (j, (a, h)) in self.normals.iter().zip(&self.offsets).enumerate() {
                let s0 = h - linalg::dot(a, &x0);
                let mut c = -linalg::dot(a, &d);
                if j == i {
                    c += Rational::one();
                }
                if c.is_zero() || s0.is_zero() {
                    continue;
                }
                let t = -(s0 / c);
                if t.is_positive() {
                    if upper.as_ref().is_none_or(|u| t < *u) {
                        upper = Some(t);
                    }
                } else if lower.as_ref().is_none_or(|l| t > *l) {
                    lower = Some(t);
                }
            }
        }
        StabilityInterval {
            lower,
            upper,
            lower_closed: false,
            upper_closed: false,
        }
    }

    /// Vertices of `P_{i,t}` as the feasible basic solutions.
    pub(crate) fn vertices(&self, i: usize, t: &Rational) -> Vec<RationalVector> {
        let mut out: BTreeSet<RationalVector> = BTreeSet::new();
        for b in &self.bases {
            let (x0, d) = self.motion(b, i);
            let x: Vec<Rational> = x0.iter().zip(&d).map(|(x, v)| x + v * t).collect();
            let feasible = self.normals.iter().zip(&self.offsets).enumerate().all(|(j, (a, h))| {
                let bound = if j == i { h + t } else { h.clone() };
                linalg::dot(a, &x) <= bound
            });
            if feasible {
                out.insert(RationalVector::raw(x));
            }
        }
        out.into_iter().collect()
    }

    fn normal_set(&self) -> BTreeSet<Vec<Rational>> {
        self.normals.iter().cloned().collect()
    }
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..m {
            if m - j < k - cur.len() {
                break;
            }
            cur.push(j);
            rec(j + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

fn inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|c| {
            let mut e = vec![Rational::zero(); n];
            e[c] = Rational::one();
            linalg::solve(a, &e)
        })
        .collect::<Option<_>>()?;
    Some((0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect())
}

/// Stability interval for shifts of facet `i`: the breakpoint interval,
/// with each side verified to preserve the facet normal set at its midpoint.
pub fn stability_interval(p: &VPolytope, i: usize) -> Result<StabilityInterval> {
    let arr = Arrangement::new(p)?;
    check_index(&arr, i)?;
    stability_from(&arr, i)
}

pub(crate) fn stability_from(arr: &Arrangement, i: usize) -> Result<StabilityInterval> {
    let mut interval = arr.breakpoints(i);
    let expected = arr.normal_set();
    let keeps_normals = |t: &Rational| -> Result<bool> {
        let q = VPolytope::hull_of(arr.vertices(i, t))?;
        Ok(q.is_full_dimensional()
            && q.hull().facets.iter().map(|f| f.normal.coords().to_vec()).collect::<BTreeSet<_>>() == expected)
    };
    for positive in [true, false] {
        let Some(t) = interval.half_step(positive) else { continue };
        if !keeps_normals(&t)? {
            if positive {
                interval.upper = Some(Rational::zero());
            } else {
                interval.lower = Some(Rational::zero());
            }
        }
    }
    if let Some(u) = interval.upper.clone().filter(|u| !u.is_zero()) {
        interval.upper_closed = keeps_normals(&u)?;
    }
    if let Some(l) = interval.lower.clone().filter(|l| !l.is_zero()) {
        interval.lower_closed = keeps_normals(&l)?;
    }
    Ok(interval)
}

fn check_index(arr: &Arrangement, i: usize) -> Result<()> {
    if i >= arr.facet_count() {
        return Err(Error::FacetIndex {
            index: i,
            count: arr.facet_count(),
        });
    }
    Ok(())
}

/// Exact `P_{i,t}` by re-enumerating vertices of the shifted halfspace system.
pub fn perturb_facet(p: &VPolytope, i: usize, t: &Rational) -> Result<PerturbedPolytope> {
    let arr = Arrangement::new(p)?;
    check_index(&arr, i)?;
    perturb_with(&arr, p, i, t)
}

pub(crate) fn perturb_with(arr: &Arrangement, p: &VPolytope, i: usize, t: &Rational) -> Result<PerturbedPolytope> {
    let interval = stability_from(arr, i)?;
    if !interval.contains(t) {
        return Err(Error::UnstablePerturbation {
            t: rational::format(t),
            interval: interval.to_string(),
        });
    }
    let result = if t.is_zero() { p.clone() } else { VPolytope::hull_of(arr.vertices(i, t))? };
    let omega = &p.hull().facets[i].omega;
    let n = Rational::from_integer(p.dim().into());
    let lambda_t = Rational::one() + t * omega / (n * p.volume());
    Ok(PerturbedPolytope {
        base: p.clone(),
        facet_index: i,
        t: t.clone(),
        result,
        lambda_t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::homothety_check;
    use crate::mixed::first_mixed_volume;
    use crate::rational::{frac, int};

    #[test]
    fn zero_shift_is_identity() {
        let c = VPolytope::cube(3).unwrap();
        let p = perturb_facet(&c, 0, &int(0)).unwrap();
        assert_eq!(p.result, c);
        assert_eq!(p.lambda_t, int(1));
    }

    #[test]
    fn cube_top_facet() {
        let c = VPolytope::cube(3).unwrap();
        let top = c
            .hull()
            .facets
            .iter()
            .position(|f| f.normal == RationalVector::from_ints(&[0, 0, 1]))
            .unwrap();
        let p = perturb_facet(&c, top, &frac(1, 2)).unwrap();
        assert_eq!(p.result, VPolytope::cuboid(&[int(1), int(1), frac(3, 2)]).unwrap());
        assert_eq!(p.lambda_t, frac(7, 6));
        assert_eq!(first_mixed_volume(&p.result, &c).unwrap() / c.volume(), p.lambda_t);
        let s = stability_interval(&c, top).unwrap();
        assert_eq!((s.lower, s.upper), (Some(int(-1)), None));
        assert!(matches!(
            perturb_facet(&c, top, &int(-2)),
            Err(Error::UnstablePerturbation { .. })
        ));
    }

    #[test]
    fn simplex_shift_is_homothety() {
        let s = VPolytope::simplex(3).unwrap();
        for i in 0..4 {
            let p = perturb_facet(&s, i, &frac(1, 5)).unwrap();
            let h = homothety_check(&s, &p.result).unwrap().homothety.unwrap();
            assert_eq!(h.ratio, p.lambda_t);
            let back = perturb_facet(&p.result, i, &frac(-1, 5)).unwrap();
            assert_eq!(back.result, s);
        }
    }

    #[test]
    fn octahedron_is_stable_both_ways() {
        let o = VPolytope::cross_polytope(3).unwrap();
        let s = stability_interval(&o, 0).unwrap();
        assert!(s.lower.unwrap().is_negative());
        assert!(s.upper.unwrap().is_positive());
    }
}
