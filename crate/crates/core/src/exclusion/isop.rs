use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::Result;
use crate::geom::{RationalVector, VPolytope};
use crate::par;
use crate::random::trial_rng;
use crate::rational;

/// Relative width of the band in which two isoperimetric ratios count as tied.
pub const ISOP_TIE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FacetIsop {
    pub facet: usize,
    pub normal: RationalVector,
    pub isop: f64,
    pub excluded: bool,
    /// `kappa_d^{1/d} / Vol_d(F)^{1/d}` with `d = n - 1`, a lower bound for `isop`.
    pub isoperimetric_bound: f64,
}

/// `Isop(K) = (1/k) Vol_{k-1}(bd K) / Vol_k(K)` for the body and each facet.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsopReport {
    pub body_isop: f64,
    pub per_facet: Vec<FacetIsop>,
    /// Largest facet ratio minus the body ratio.
    pub margin: f64,
    /// Some facet exceeds the body ratio by more than the tie band.
    pub condition: bool,
    /// No facet is excluded but some facet ties with the body within the band.
    pub inconclusive: bool,
}

/// Facet areas and ridge lengths after applying `x -> M x` to the facet normals,
/// where `M = T^{-T}` for a unit-determinant map `T`.
struct FaceGeometry {
    n: usize,
    volume: f64,
    normals: Vec<Vec<f64>>,
    omega: Vec<f64>,
    /// Per facet: (other facet, rho).
    ridges: Vec<Vec<(usize, f64)>>,
}

impl FaceGeometry {
    fn new(p: &VPolytope) -> Result<Self> {
        p.require_full_dim()?;
        let h = p.hull();
        let mut ridges = vec![Vec::new(); h.facets.len()];
        for r in &h.ridges {
            let rho = rational::to_f64(&r.rho);
            ridges[r.facets.0].push((r.facets.1, rho));
            ridges[r.facets.1].push((r.facets.0, rho));
        }
        Ok(FaceGeometry {
            n: p.dim(),
            volume: rational::to_f64(&p.volume()),
            normals: h.facets.iter().map(|f| f.normal.to_f64()).collect(),
            omega: h.facets.iter().map(|f| rational::to_f64(&f.omega)).collect(),
            ridges,
        })
    }

    /// Body ratio and per-facet ratios, plus facet areas, for normals mapped by `m`.
    fn ratios(&self, m: Option<&[Vec<f64>]>) -> (f64, Vec<f64>, Vec<f64>) {
        let normals: Vec<Vec<f64>> = match m {
            None => self.normals.clone(),
            Some(m) => self.normals.iter().map(|a| mat_vec(m, a)).collect(),
        };
        let areas: Vec<f64> = normals.iter().zip(&self.omega).map(|(a, w)| norm(a) * w).collect();
        let body = areas.iter().sum::<f64>() / (self.n as f64 * self.volume);
        let facets = (0..normals.len())
            .map(|i| {
                let boundary: f64 =
                    self.ridges[i].iter().map(|&(j, rho)| rho * wedge_norm(&normals[i], &normals[j])).sum();
                boundary / ((self.n - 1) as f64 * areas[i])
            })
            .collect();
        (body, facets, areas)
    }

    fn max_ratio(&self, m: &[Vec<f64>]) -> f64 {
        let (body, facets, _) = self.ratios(Some(m));
        facets.into_iter().fold(f64::NEG_INFINITY, f64::max) / body
    }
}

fn mat_vec(m: &[Vec<f64>], a: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(a).map(|(x, y)| x * y).sum()).collect()
}

fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `|a ^ b|`, the square root of the Gram determinant of `a`, `b`.
fn wedge_norm(a: &[f64], b: &[f64]) -> f64 {
    let (aa, bb): (f64, f64) = (a.iter().map(|x| x * x).sum(), b.iter().map(|x| x * x).sum());
    let ab: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    (aa * bb - ab * ab).max(0.0).sqrt()
}

/// Volume of the unit ball in dimension `d`.
fn unit_ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * std::f64::consts::PI / d as f64 * unit_ball_volume(d - 2),
    }
}

pub fn isop(p: &VPolytope) -> Result<IsopReport> {
    let g = FaceGeometry::new(p)?;
    let (body, facets, areas) = g.ratios(None);
    let d = g.n - 1;
    let kappa = unit_ball_volume(d).powf(1.0 / d as f64);
    let tie = ISOP_TIE * body.abs().max(1.0);
    let per_facet: Vec<FacetIsop> = facets
        .iter()
        .zip(&areas)
        .enumerate()
        .map(|(i, (&f, &area))| FacetIsop {
            facet: i,
            normal: p.hull().facets[i].normal.clone(),
            isop: f,
            excluded: f > body + tie,
            isoperimetric_bound: kappa / area.powf(1.0 / d as f64),
        })
        .collect();
    let best = facets.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let condition = per_facet.iter().any(|f| f.excluded);
    Ok(IsopReport {
        body_isop: body,
        margin: best - body,
        condition,
        inconclusive: !condition && (best - body).abs() <= tie,
        per_facet,
    })
}

/// Some facet has a strictly larger isoperimetric ratio than the body.
pub fn isop_condition(p: &VPolytope) -> Result<bool> {
    Ok(isop(p)?.condition)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineSearch {
    /// Best unit-determinant upper-triangular map found.
    pub best_t: Vec<Vec<f64>>,
    /// `max_F Isop(TF) / Isop(TP)` at `best_t`.
    pub best_ratio: f64,
    pub identity_ratio: f64,
    pub restarts: usize,
    pub best_restart: usize,
}

const PARAM_BOUND: f64 = 8.0;

/// Upper-triangular `T` with diagonal `exp(s_i)`, `sum s_i = 0`, from the packed parameters.
fn upper_triangular(n: usize, x: &[f64]) -> Vec<Vec<f64>> {
    let mut t = vec![vec![0.0; n]; n];
    let last = -x[..n - 1].iter().sum::<f64>();
    for i in 0..n {
        t[i][i] = if i + 1 < n { x[i] } else { last }.exp();
    }
    let mut k = n - 1;
    for i in 0..n {
        for j in i + 1..n {
            t[i][j] = x[k];
            k += 1;
        }
    }
    t
}

/// `T^{-T}` for upper-triangular `T`, by back substitution.
fn inverse_transpose(t: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = t.len();
    let mut inv = vec![vec![0.0; n]; n];
    for c in 0..n {
        for i in (0..=c).rev() {
            let rhs = if i == c { 1.0 } else { 0.0 };
            let s: f64 = (i + 1..=c).map(|k| t[i][k] * inv[k][c]).sum();
            inv[i][c] = (rhs - s) / t[i][i];
        }
    }
    (0..n).map(|r| (0..n).map(|c| inv[c][r]).collect()).collect()
}

fn objective(g: &FaceGeometry, x: &[f64]) -> f64 {
    let v = g.max_ratio(&inverse_transpose(&upper_triangular(g.n, x)));
    if v.is_finite() {
        v
    } else {
        f64::NEG_INFINITY
    }
}

fn coordinate_descent(g: &FaceGeometry, mut x: Vec<f64>) -> (f64, Vec<f64>) {
    let mut best = objective(g, &x);
    let mut step = 0.5;
    for _ in 0..200 {
        if step < 1e-4 {
            break;
        }
        let mut improved = false;
        for k in 0..x.len() {
            for dir in [1.0, -1.0] {
                let mut y = x.clone();
                y[k] = (y[k] + dir * step).clamp(-PARAM_BOUND, PARAM_BOUND);
                let v = objective(g, &y);
                if v > best {
                    best = v;
                    x = y;
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    (best, x)
}

/// Maximizes `max_F Isop(TF) / Isop(TP)` over unit-determinant upper-triangular `T`.
///
/// Restart 0 starts at the identity; the others start from seeded random
/// parameters. Each restart runs a coordinate search on the matrix parameters.
pub fn affine_isop_search(p: &VPolytope, budget: usize, seed: u64) -> Result<AffineSearch> {
    let g = FaceGeometry::new(p)?;
    let n = g.n;
    let params = n * (n + 1) / 2 - 1;
    let restarts = budget.max(1);
    let results = par::map_range(restarts, |r| {
        let start = if r == 0 {
            vec![0.0; params]
        } else {
            let mut rng = trial_rng(seed, r as u64);
            (0..params).map(|_| 0.7 * rng.sample::<f64, _>(StandardNormal)).collect()
        };
        coordinate_descent(&g, start)
    });
    let (best_restart, (best_ratio, x)) = results
        .iter()
        .enumerate()
        .fold(None::<(usize, &(f64, Vec<f64>))>, |acc, (i, r)| match acc {
            Some((_, b)) if b.0 >= r.0 => acc,
            _ => Some((i, r)),
        })
        .expect("at least one restart");
    Ok(AffineSearch {
        best_t: upper_triangular(n, x),
        best_ratio: *best_ratio,
        identity_ratio: objective(&g, &vec![0.0; params]),
        restarts,
        best_restart,
    })
}

/// Face-dimension census of the directions charged by the surface measure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaCensus {
    pub dim: usize,
    pub vertex_count: usize,
    pub facet_count: usize,
    /// Number of atoms of `S_P` whose face `P^u` has each dimension.
    pub face_dims: BTreeMap<usize, usize>,
    /// Every atom lies in `Omega_{n-1}`.
    pub all_facets: bool,
}

pub fn classify_omega(p: &VPolytope) -> Result<OmegaCensus> {
    let n = p.dim();
    let s = p.facet_measure()?;
    let mut face_dims = BTreeMap::new();
    for w in s.normals() {
        *face_dims.entry(p.support(w)?.face_dim).or_insert(0) += 1;
    }
    Ok(OmegaCensus {
        dim: n,
        vertex_count: p.vertices().len(),
        facet_count: p.hull().facets.len(),
        all_facets: face_dims.keys().all(|&d| d + 1 == n),
        face_dims,
    })
}
