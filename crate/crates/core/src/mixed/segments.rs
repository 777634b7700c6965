use num_traits::Zero;

use crate::error::Result;
use crate::geom::polytope::orthonormal_complement_of;
use crate::geom::{RationalVector, VPolytope};
use crate::linalg;
use crate::mixed::polarize;
use crate::rational::{self, factorial, Rational};

/// `V([0,u_1], ..., [0,u_k], rest)` exactly, with the segments handed to the polarization engine.
///
/// `rest` must have total multiplicity `n - k`. Linearly dependent directions give 0.
pub fn mixed_volume_segments(dirs: &[RationalVector], rest: &[(VPolytope, usize)]) -> Result<Rational> {
    let n = check_arity(dirs.len(), dirs.first().map(|d| d.dim()), rest)?;
    let rows: Vec<Vec<Rational>> = dirs.iter().map(|d| d.coords().to_vec()).collect();
    if linalg::rank(&rows) < dirs.len() {
        return Ok(Rational::zero());
    }
    let mut entries: Vec<(VPolytope, usize)> = dirs
        .iter()
        .map(|d| Ok((VPolytope::segment(d)?, 1)))
        .collect::<Result<_>>()?;
    entries.extend(rest.iter().cloned());
    Ok(polarize(&entries, n))
}

/// Floating-point version for arbitrary real directions, using
/// `V([0,u_1..u_k], K_{k+1..n}) = (n-k)!/n! * Vol_k(u_1..u_k) * V_{n-k}(pi K_{k+1}, ..., pi K_n)`
/// with `pi` the orthogonal projection onto the complement of the directions.
pub fn mixed_volume_segments_f64(dirs: &[Vec<f64>], rest: &[(VPolytope, usize)]) -> Result<f64> {
    let k = dirs.len();
    let n = check_arity(k, dirs.first().map(|d| d.len()), rest)?;
    let gram = gram_det(dirs);
    let scale = dirs.iter().map(|d| linalg::norm_f64(d).powi(2)).product::<f64>();
    if gram <= 1e-24 * scale {
        return Ok(0.0);
    }
    let factor = gram.sqrt() * ratio_of_factorials(n - k, n);
    if k == n {
        return Ok(factor);
    }
    let basis = orthonormal_complement_of(dirs)?;
    let projected: Vec<(VPolytope, usize)> = rest
        .iter()
        .map(|(body, m)| {
            let points = body
                .vertices()
                .iter()
                .map(|v| {
                    let x = v.to_f64();
                    RationalVector::raw(
                        basis
                            .iter()
                            .map(|b| rational::from_f64(b.iter().zip(&x).map(|(s, t)| s * t).sum()))
                            .collect(),
                    )
                })
                .collect();
            Ok((VPolytope::hull_of(points)?, *m))
        })
        .collect::<Result<_>>()?;
    Ok(factor * rational::to_f64(&polarize(&projected, n - k)))
}

fn check_arity(k: usize, dim: Option<usize>, rest: &[(VPolytope, usize)]) -> Result<usize> {
    let n = dim.or_else(|| rest.first().map(|r| r.0.dim())).ok_or(crate::Error::Empty)?;
    let found = k + rest.iter().map(|r| r.1).sum::<usize>();
    if found != n {
        return Err(crate::Error::Multiplicity { expected: n, found });
    }
    for (b, _) in rest {
        b.check_same_dim(n)?;
    }
    Ok(n)
}

fn ratio_of_factorials(num: usize, den: usize) -> f64 {
    rational::to_f64(&Rational::new(factorial(num), factorial(den)))
}

fn gram_det(dirs: &[Vec<f64>]) -> f64 {
    let k = dirs.len();
    let mut g: Vec<Vec<f64>> = (0..k)
        .map(|i| (0..k).map(|j| dirs[i].iter().zip(&dirs[j]).map(|(a, b)| a * b).sum()).collect())
        .collect();
    let mut det = 1.0;
    for c in 0..k {
        let p = (c..k)
            .max_by(|&a, &b| g[a][c].abs().total_cmp(&g[b][c].abs()))
            .unwrap();
        if g[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            g.swap(p, c);
            det = -det;
        }
        det *= g[c][c];
        for r in c + 1..k {
            let f = g[r][c] / g[c][c];
            for j in c..k {
                g[r][j] -= f * g[c][j];
            }
        }
    }
    det
}

/// Precomputed facet and ridge data of a full-dimensional body `K` for fast
/// floating-point evaluation of mixed volumes with one or two segments.
#[derive(Clone, Debug)]
pub struct SegmentKernel {
    n: usize,
    volume: f64,
    facets: Vec<(Vec<f64>, f64)>,
    ridges: Vec<KernelRidge>,
    /// Per facet: `(ridge volume, unit outer normal of the ridge inside the facet)`.
    facet_ridges: Vec<Vec<(f64, Vec<f64>)>>,
}

#[derive(Clone, Debug)]
struct KernelRidge {
    a: Vec<f64>,
    b: Vec<f64>,
    /// Orthonormal basis of `span(a, b)`.
    e1: Vec<f64>,
    e2: Vec<f64>,
    volume: f64,
}

const PARALLEL_TOL: f64 = 1e-12;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl SegmentKernel {
    pub fn new(k: &VPolytope) -> Result<Self> {
        k.require_full_dim()?;
        let hull = k.hull();
        let facets: Vec<(Vec<f64>, f64)> = hull
            .facets
            .iter()
            .map(|f| (f.normal.to_f64(), rational::to_f64(&f.omega)))
            .collect();
        let ridges: Vec<KernelRidge> = hull
            .ridges
            .iter()
            .map(|r| {
                let a = facets[r.facets.0].0.clone();
                let b = facets[r.facets.1].0.clone();
                let (aa, bb, ab) = (dot(&a, &a), dot(&b, &b), dot(&a, &b));
                let wedge = (aa * bb - ab * ab).sqrt();
                let e1: Vec<f64> = a.iter().map(|x| x / aa.sqrt()).collect();
                let mut e2: Vec<f64> = b.iter().zip(&e1).map(|(y, e)| y - dot(&b, &e1) * e).collect();
                let norm = linalg::norm_f64(&e2);
                e2.iter_mut().for_each(|x| *x /= norm);
                KernelRidge {
                    a,
                    b,
                    e1,
                    e2,
                    volume: rational::to_f64(&r.rho) * wedge,
                }
            })
            .collect();
        let mut facet_ridges = vec![Vec::new(); facets.len()];
        for (r, kr) in hull.ridges.iter().zip(&ridges) {
            for (id, own, other) in [(r.facets.0, &kr.a, &kr.b), (r.facets.1, &kr.b, &kr.a)] {
                let t = dot(own, other) / dot(own, own);
                let nu: Vec<f64> = other.iter().zip(own).map(|(o, w)| o - t * w).collect();
                let norm = linalg::norm_f64(&nu);
                facet_ridges[id].push((kr.volume, nu.into_iter().map(|x| x / norm).collect()));
            }
        }
        Ok(SegmentKernel {
            n: k.dim(),
            volume: rational::to_f64(&k.volume()),
            facets,
            ridges,
            facet_ridges,
        })
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// `V([0,u], K[n-1]) = (1/2n) sum_F |<u, w_F>| omega_F`.
    pub fn first(&self, u: &[f64]) -> f64 {
        let s: f64 = self.facets.iter().map(|(w, om)| dot(u, w).abs() * om).sum();
        s / (2.0 * self.n as f64)
    }

    /// `V([0,u], [0,v], K[n-2])`, summed over the facets of `K + [0,v]`: zone
    /// facets `R + [0,v]` and facets of `K` parallel to `v`.
    pub fn second(&self, u: &[f64], v: &[f64]) -> f64 {
        let n = self.n as f64;
        let vn = linalg::norm_f64(v);
        let side = |w: &[f64]| {
            let x = dot(v, w);
            if x.abs() <= PARALLEL_TOL * vn * linalg::norm_f64(w) {
                0.0
            } else {
                x
            }
        };
        let mut s = 0.0;
        for ((w, _), ridges) in self.facets.iter().zip(&self.facet_ridges) {
            if side(w) != 0.0 {
                continue;
            }
            let h = dot(u, w).max(0.0) / linalg::norm_f64(w);
            if h > 0.0 {
                let width: f64 = ridges.iter().map(|(vol, nu)| dot(v, nu).abs() * vol).sum();
                s += h * width / 2.0;
            }
        }
        for r in &self.ridges {
            let va = side(&r.a);
            let vb = side(&r.b);
            if va * vb >= 0.0 {
                continue;
            }
            // Normal of the zone facet: the direction in span(a, b) orthogonal to v, taken inside cone(a, b).
            let nv: Vec<f64> = r.a.iter().zip(&r.b).map(|(x, y)| va * y - vb * x).collect();
            let nv = if va > 0.0 { nv } else { nv.into_iter().map(|x| -x).collect() };
            let norm = linalg::norm_f64(&nv);
            let h = dot(u, &nv).max(0.0) / norm;
            if h == 0.0 {
                continue;
            }
            let (p1, p2) = (dot(v, &r.e1), dot(v, &r.e2));
            s += h * (p1 * p1 + p2 * p2).sqrt() * r.volume;
        }
        s / (n * (n - 1.0))
    }

    /// `V([0,u],[0,v],K[n-2]) V(K) / (V([0,u],K[n-1]) V([0,v],K[n-1]))`.
    pub fn ratio_b2(&self, u: &[f64], v: &[f64]) -> f64 {
        let den = self.first(u) * self.first(v);
        if den <= 0.0 {
            return 0.0;
        }
        self.second(u, v) * self.volume / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixed::mv;
    use crate::rational::{frac, int};

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    #[test]
    fn parallelepiped() {
        let dirs = [v(&[2, 0, 0]), v(&[1, 3, 0]), v(&[0, 1, 1])];
        assert_eq!(mixed_volume_segments(&dirs, &[]).unwrap(), frac(6, 6));
        let f: Vec<Vec<f64>> = dirs.iter().map(|d| d.to_f64()).collect();
        assert!((mixed_volume_segments_f64(&f, &[]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cross_polytope_diagonals() {
        let o = VPolytope::cross_polytope(3).unwrap();
        let dirs = [v(&[1, 1, 0]), v(&[1, -1, 0])];
        let rest = [(o.clone(), 1)];
        assert_eq!(mixed_volume_segments(&dirs, &rest).unwrap(), frac(2, 3));
        let f: Vec<Vec<f64>> = dirs.iter().map(|d| d.to_f64()).collect();
        assert!((mixed_volume_segments_f64(&f, &rest).unwrap() - 2.0 / 3.0).abs() < 1e-9);
        let kernel = SegmentKernel::new(&o).unwrap();
        assert!((kernel.ratio_b2(&f[0], &f[1]) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn dependent_directions() {
        let c = VPolytope::cube(3).unwrap();
        let dirs = [v(&[1, 2, 3]), v(&[2, 4, 6])];
        assert_eq!(mixed_volume_segments(&dirs, &[(c.clone(), 1)]).unwrap(), int(0));
        let f: Vec<Vec<f64>> = dirs.iter().map(|d| d.to_f64()).collect();
        assert_eq!(mixed_volume_segments_f64(&f, &[(c, 1)]).unwrap(), 0.0);
    }

    #[test]
    fn kernel_matches_exact_values() {
        let p = VPolytope::from_points(vec![
            v(&[0, 0, 0]),
            v(&[3, 1, 0]),
            v(&[0, 2, 1]),
            v(&[1, 1, 3]),
            v(&[2, -1, 2]),
            v(&[-1, 1, 1]),
        ])
        .unwrap();
        let kernel = SegmentKernel::new(&p).unwrap();
        for (a, b) in [([1, 2, -1], [0, 1, 3]), ([2, -1, 1], [1, 1, 1]), ([1, 0, 0], [0, 1, 0])] {
            let (sa, sb) = (VPolytope::segment(&v(&a)).unwrap(), VPolytope::segment(&v(&b)).unwrap());
            let exact1 = rational::to_f64(&mv(&[(&sa, 1), (&p, 2)]).unwrap());
            let exact2 = rational::to_f64(&mv(&[(&sa, 1), (&sb, 1), (&p, 1)]).unwrap());
            let (fa, fb) = (v(&a).to_f64(), v(&b).to_f64());
            assert!((kernel.first(&fa) - exact1).abs() < 1e-9 * exact1.max(1.0));
            assert!((kernel.second(&fa, &fb) - exact2).abs() < 1e-9 * exact2.max(1.0), "{a:?} {b:?}");
            assert!((kernel.second(&fb, &fa) - exact2).abs() < 1e-9 * exact2.max(1.0));
        }
    }
}
