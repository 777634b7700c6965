use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::hull::{convex_hull, HullStructure};
use crate::geom::lp::{self, LpOutcome};
use crate::geom::measure::DirectionalMeasure;
use crate::geom::vector::{check_dim, RationalVector};
use crate::linalg;
use crate::rational::{self, Rational};

/// A convex polytope given by its extreme points, sorted lexicographically.
///
/// The hull is computed lazily on first use and shared between clones.
#[derive(Clone)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<RationalVector>,
    hull: OnceLock<Arc<HullStructure>>,
}

impl fmt::Debug for VPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VPolytope")
            .field("dim", &self.dim)
            .field("vertices", &self.vertices)
            .finish()
    }
}

impl PartialEq for VPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for VPolytope {}

impl Serialize for VPolytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("VPolytope", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.end()
    }
}

/// Result of a support query.
#[derive(Clone, Debug, PartialEq)]
pub struct Support {
    pub value: Rational,
    pub face: VPolytope,
    pub face_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Homothety {
    #[serde(serialize_with = "rational::serialize")]
    pub ratio: Rational,
    pub translation: RationalVector,
}

/// Outcome of a homothety test `Q = x + t P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomothetyCheck {
    pub homothety: Option<Homothety>,
    /// The volume ratio has no rational n-th root, so no candidate ratio was tested.
    pub irrational_ratio: bool,
}

/// Optimal relative inradius `r(K, L)` with a center and an LP dual certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct Inradius {
    pub r: Rational,
    pub center: RationalVector,
    /// Nonnegative facet multipliers `y` with `sum y_i a_i = 0` and `sum y_i h_L(a_i) = 1`;
    /// then `sum y_i h_K(a_i) = r` bounds every feasible radius.
    pub dual: Vec<Rational>,
}

impl VPolytope {
    /// Convex hull of a point set in dimension 2..=6. Redundant points are discarded.
    pub fn from_points(points: Vec<RationalVector>) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty)?;
        check_dim(first.dim())?;
        Self::hull_of(points)
    }

    /// Like [`VPolytope::from_points`], but every given point must be a distinct extreme point.
    pub fn from_vertices(points: Vec<RationalVector>) -> Result<Self> {
        let count = points.len();
        let p = Self::from_points(points)?;
        if p.vertices.len() != count {
            return Err(Error::Validation(format!(
                "{} of {} points are not extreme (duplicate or redundant vertices)",
                count - p.vertices.len(),
                count
            )));
        }
        Ok(p)
    }

    /// Hull without the dimension bound, for projections and faces.
    pub(crate) fn hull_of(points: Vec<RationalVector>) -> Result<Self> {
        let hull = convex_hull(&points)?;
        let dim = points[0].dim();
        let mut extreme: Vec<usize> = hull.vertices.clone();
        extreme.sort_by(|&a, &b| points[a].cmp(&points[b]));
        let map: HashMap<usize, usize> = extreme.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let mut hull = hull;
        hull.remap_vertices(&map);
        let vertices = extreme.iter().map(|&i| points[i].clone()).collect();
        Ok(VPolytope {
            dim,
            vertices,
            hull: OnceLock::from(Arc::new(hull)),
        })
    }

    /// Trusts that `vertices` are exactly the extreme points (any order).
    pub(crate) fn from_extreme_unchecked(mut vertices: Vec<RationalVector>) -> Self {
        vertices.sort();
        vertices.dedup();
        VPolytope {
            dim: vertices[0].dim(),
            vertices,
            hull: OnceLock::new(),
        }
    }

    pub fn point(x: RationalVector) -> Self {
        Self::from_extreme_unchecked(vec![x])
    }

    /// The segment `[0, u]`.
    pub fn segment(u: &RationalVector) -> Result<Self> {
        check_dim(u.dim())?;
        if u.is_zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(Self::from_extreme_unchecked(vec![RationalVector::zero(u.dim()), u.clone()]))
    }

    /// `conv(0, e_1, ..., e_n)`.
    pub fn simplex(n: usize) -> Result<Self> {
        check_dim(n)?;
        let mut v = vec![RationalVector::zero(n)];
        v.extend((0..n).map(|i| RationalVector::unit(n, i)));
        Ok(Self::from_extreme_unchecked(v))
    }

    /// `[0, 1]^n`.
    pub fn cube(n: usize) -> Result<Self> {
        check_dim(n)?;
        let v = (0..1usize << n)
            .map(|mask| {
                let c: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64).collect();
                RationalVector::from_ints(&c)
            })
            .collect();
        Ok(Self::from_extreme_unchecked(v))
    }

    /// The unit l1 ball `conv(+-e_i)`.
    pub fn cross_polytope(n: usize) -> Result<Self> {
        check_dim(n)?;
        let v = (0..n)
            .flat_map(|i| {
                let e = RationalVector::unit(n, i);
                [e.neg(), e]
            })
            .collect();
        Ok(Self::from_extreme_unchecked(v))
    }

    /// Axis-parallel box with the given side lengths, anchored at the origin.
    pub fn cuboid(sides: &[Rational]) -> Result<Self> {
        let n = sides.len();
        check_dim(n)?;
        if sides.iter().any(|s| !s.is_positive()) {
            return Err(Error::DegenerateInput("box sides must be positive".into()));
        }
        let v = (0..1usize << n)
            .map(|mask| {
                RationalVector::raw(
                    (0..n)
                        .map(|i| if (mask >> i) & 1 == 1 { sides[i].clone() } else { Rational::zero() })
                        .collect(),
                )
            })
            .collect();
        Ok(Self::from_extreme_unchecked(v))
    }

    /// `base x [0, height]`, one dimension up from a full-dimensional base.
    pub fn prism(base: &VPolytope, height: &Rational) -> Result<Self> {
        check_dim(base.dim + 1)?;
        base.require_full_dim()?;
        if !height.is_positive() {
            return Err(Error::DegenerateInput("prism height must be positive".into()));
        }
        let v = base
            .vertices
            .iter()
            .flat_map(|x| {
                [Rational::zero(), height.clone()].map(|h| {
                    let mut c = x.coords().to_vec();
                    c.push(h);
                    RationalVector::raw(c)
                })
            })
            .collect();
        Ok(Self::from_extreme_unchecked(v))
    }

    /// A convex `m`-gon with rational vertices on the unit circle, near the regular one.
    ///
    /// Vertices come from the rational parametrization
    /// `((1 - s^2) / (1 + s^2), 2 s / (1 + s^2))` with `s` a small-denominator
    /// approximation of `tan(pi j / m)`.
    pub fn circle_polygon(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::DegenerateInput("a polygon needs at least 3 vertices".into()));
        }
        let one = Rational::one();
        let two = Rational::from_integer(2.into());
        let v: Vec<RationalVector> = (0..m)
            .map(|j| {
                if 2 * j == m {
                    return RationalVector::raw(vec![-one.clone(), Rational::zero()]);
                }
                let s = rational::approximate((std::f64::consts::PI * j as f64 / m as f64).tan(), 10_000);
                let d = &one + &s * &s;
                RationalVector::raw(vec![(&one - &s * &s) / &d, &two * &s / &d])
            })
            .collect();
        let p = Self::hull_of(v)?;
        if p.vertices.len() != m {
            return Err(Error::DegenerateInput(format!("rounded {m}-gon lost vertices")));
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn hull(&self) -> &HullStructure {
        self.hull.get_or_init(|| {
            let mut h = convex_hull(&self.vertices).expect("vertex list is nonempty and consistent");
            // Input is already sorted and irredundant, so hull ids are the identity.
            let map: HashMap<usize, usize> = (0..self.vertices.len()).map(|i| (i, i)).collect();
            h.remap_vertices(&map);
            Arc::new(h)
        })
    }

    pub fn intrinsic_dim(&self) -> usize {
        self.hull().intrinsic_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.intrinsic_dim() == self.dim
    }

    pub fn volume(&self) -> Rational {
        if self.vertices.len() <= self.dim {
            return Rational::zero();
        }
        self.hull().volume.clone()
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1 && self.is_full_dimensional()
    }

    pub fn minkowski_sum(&self, other: &VPolytope) -> Result<VPolytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if other.vertices.len() == 1 {
            return Ok(self.translate(&other.vertices[0]));
        }
        if self.vertices.len() == 1 {
            return Ok(other.translate(&self.vertices[0]));
        }
        let mut points = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for p in &self.vertices {
            for q in &other.vertices {
                points.push(p.add(q));
            }
        }
        Self::hull_of(points)
    }

    pub fn translate(&self, x: &RationalVector) -> VPolytope {
        let vertices = self.vertices.iter().map(|v| v.add(x)).collect();
        let hull = OnceLock::new();
        if let Some(h) = self.hull.get() {
            let mut h = (**h).clone();
            for f in &mut h.facets {
                f.offset += f.normal.dot(x);
            }
            let _ = hull.set(Arc::new(h));
        }
        VPolytope {
            dim: self.dim,
            vertices,
            hull,
        }
    }

    /// `t P` for `t >= 0`; a zero factor collapses to the origin.
    pub fn scale(&self, t: &Rational) -> VPolytope {
        assert!(!t.is_negative(), "negative dilation factor");
        if t.is_zero() {
            return Self::point(RationalVector::zero(self.dim));
        }
        let vertices = self.vertices.iter().map(|v| v.scale(t)).collect();
        let hull = OnceLock::new();
        if let Some(h) = self.hull.get() {
            let mut h = (**h).clone();
            let k = h.intrinsic_dim as i32;
            for f in &mut h.facets {
                f.offset *= t;
                f.omega *= t.pow(k - 1);
            }
            for r in &mut h.ridges {
                r.rho *= t.pow(k - 2);
            }
            h.volume *= t.pow(self.dim as i32);
            let _ = hull.set(Arc::new(h));
        }
        VPolytope {
            dim: self.dim,
            vertices,
            hull,
        }
    }

    /// Image under the linear map with the given rows.
    pub fn linear_image(&self, rows: &[Vec<Rational>]) -> Result<VPolytope> {
        if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rows.len(),
            });
        }
        let points = self
            .vertices
            .iter()
            .map(|v| RationalVector::raw(rows.iter().map(|r| linalg::dot(r, v.coords())).collect()))
            .collect();
        Self::hull_of(points)
    }

    /// Vertex index pairs spanning the one-dimensional faces.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let hull = self.hull();
        let k = hull.intrinsic_dim;
        if k == 1 {
            return vec![(0, self.vertices.len() - 1)];
        }
        if k == 0 {
            return Vec::new();
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for (fid, f) in hull.facets.iter().enumerate() {
            for &v in &f.vertex_ids {
                incident[v].push(fid);
            }
        }
        let mut out = Vec::new();
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                let common: Vec<Vec<Rational>> = incident[i]
                    .iter()
                    .filter(|f| incident[j].contains(f))
                    .map(|&f| hull.facets[f].normal.coords().to_vec())
                    .collect();
                if common.len() >= k - 1 && linalg::rank(&common) == k - 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Distinct edge directions as primitive integer vectors with positive leading coordinate.
    pub fn edge_directions(&self) -> Vec<RationalVector> {
        let mut dirs: Vec<RationalVector> = self
            .edges()
            .into_iter()
            .map(|(i, j)| {
                let d = self.vertices[j].sub(&self.vertices[i]).primitive();
                let k = d.first_nonzero().expect("distinct vertices");
                if d.coords()[k].is_negative() {
                    d.neg()
                } else {
                    d
                }
            })
            .collect();
        dirs.sort();
        dirs.dedup();
        dirs
    }

    /// `h_P(w)` together with the face `P^w`.
    pub fn support(&self, w: &RationalVector) -> Result<Support> {
        self.check_same_dim(w.dim())?;
        if w.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let values: Vec<Rational> = self.vertices.iter().map(|v| v.dot(w)).collect();
        let value = values.iter().max().expect("nonempty").clone();
        let face_vertices: Vec<RationalVector> = self
            .vertices
            .iter()
            .zip(&values)
            .filter(|(_, h)| **h == value)
            .map(|(v, _)| v.clone())
            .collect();
        let coords: Vec<Vec<Rational>> = face_vertices.iter().map(|v| v.coords().to_vec()).collect();
        let face_dim = linalg::affine_rank(&coords);
        Ok(Support {
            value,
            face: Self::from_extreme_unchecked(face_vertices),
            face_dim,
        })
    }

    /// `h_P(w) = max <v, w>` over the vertices.
    pub fn support_value(&self, w: &RationalVector) -> Rational {
        self.vertices.iter().map(|v| v.dot(w)).max().expect("nonempty")
    }

    /// The surface area measure, as facet normals with weights `Vol_{n-1}(F) / |w|`.
    pub fn facet_measure(&self) -> Result<DirectionalMeasure> {
        self.require_full_dim()?;
        Ok(DirectionalMeasure::new(
            self.hull().facets.iter().map(|f| (f.normal.clone(), f.omega.clone())),
        ))
    }

    /// Exact `r(self, l) = max { r : x + r l is contained in self }`.
    pub fn inradius(&self, l: &VPolytope) -> Result<Inradius> {
        self.check_same_dim(l.dim)?;
        self.require_full_dim()?;
        l.require_full_dim()?;
        let n = self.dim;
        let facets = &self.hull().facets;
        // Shift so the vertex centroid is the origin; then every right-hand side is positive.
        let centroid = self.vertex_centroid();
        let mut a = Vec::with_capacity(facets.len());
        let mut b = Vec::with_capacity(facets.len());
        for f in facets {
            let w = f.normal.coords();
            let mut row: Vec<Rational> = w.to_vec();
            row.extend(w.iter().map(|x| -x));
            row.push(l.support_value(&f.normal));
            a.push(row);
            b.push(&f.offset - f.normal.dot(&centroid));
        }
        let mut c = vec![Rational::zero(); 2 * n + 1];
        c[2 * n] = Rational::one();
        let LpOutcome::Optimal(sol) = lp::maximize(&a, &b, &c) else {
            unreachable!("radius is bounded for a full-dimensional L");
        };
        let y: Vec<Rational> = (0..n).map(|i| &sol.primal[i] - &sol.primal[n + i]).collect();
        Ok(Inradius {
            r: sol.value,
            center: centroid.add(&RationalVector::raw(y)),
            dual: sol.dual,
        })
    }

    pub(crate) fn vertex_centroid(&self) -> RationalVector {
        let m = Rational::from_integer(self.vertices.len().into());
        let mut acc = RationalVector::zero(self.dim);
        for v in &self.vertices {
            acc = acc.add(v);
        }
        acc.scale(&(Rational::one() / m))
    }

    pub(crate) fn check_same_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }

    pub(crate) fn require_full_dim(&self) -> Result<()> {
        let k = self.intrinsic_dim();
        if k != self.dim {
            return Err(Error::LowerDimensional {
                intrinsic: k,
                ambient: self.dim,
            });
        }
        Ok(())
    }
}

/// Tests whether `q = x + t p` for some `t >= 0` and translation `x`.
pub fn homothety_check(p: &VPolytope, q: &VPolytope) -> Result<HomothetyCheck> {
    p.check_same_dim(q.dim)?;
    let absent = |irrational_ratio| HomothetyCheck {
        homothety: None,
        irrational_ratio,
    };
    let found = |ratio: Rational, translation: RationalVector| {
        let image: Vec<RationalVector> = p.vertices.iter().map(|v| v.scale(&ratio).add(&translation)).collect();
        let mut image = image;
        image.sort();
        image.dedup();
        if image == q.vertices {
            HomothetyCheck {
                homothety: Some(Homothety { ratio, translation }),
                irrational_ratio: false,
            }
        } else {
            absent(false)
        }
    };

    if q.vertices.len() == 1 {
        let (ratio, base) = if p.vertices.len() == 1 {
            (Rational::one(), &p.vertices[0])
        } else {
            (Rational::zero(), &q.vertices[0])
        };
        let translation = if ratio.is_zero() { base.clone() } else { q.vertices[0].sub(base) };
        return Ok(found(ratio, translation));
    }
    if p.vertices.len() != q.vertices.len() {
        return Ok(absent(false));
    }

    let n = p.dim;
    let ratio = if p.is_full_dimensional() {
        let vp = p.volume();
        let vq = q.volume();
        match rational::nth_root_exact(&(vq / vp), n as u32) {
            Some(t) => t,
            None => return Ok(absent(true)),
        }
    } else {
        // Positive dilations preserve lexicographic order, so extreme vertices correspond.
        let dp = p.vertices.last().unwrap().sub(&p.vertices[0]);
        let dq = q.vertices.last().unwrap().sub(&q.vertices[0]);
        let k = dp.first_nonzero().expect("distinct vertices");
        &dq.coords()[k] / &dp.coords()[k]
    };
    if !ratio.is_positive() {
        return Ok(absent(false));
    }
    let translation = q.vertex_centroid().sub(&p.vertex_centroid().scale(&ratio));
    Ok(found(ratio, translation))
}

/// `Vol_{n-1}` of the orthogonal projection of `p` onto the hyperplane `u^perp`.
///
/// The projected coordinates are rounded to doubles and the hull volume of
/// those points is computed exactly, so the only error is the projection itself.
pub fn project_volume(p: &VPolytope, u: &[f64]) -> Result<f64> {
    p.check_same_dim(u.len())?;
    p.require_full_dim()?;
    let basis = orthonormal_complement(u)?;
    let points: Vec<RationalVector> = p
        .vertices
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
    let h = convex_hull(&points)?;
    Ok(if h.is_full_dimensional() { rational::to_f64(&h.volume) } else { 0.0 })
}

/// Orthonormal basis of the complement of `u`, by Gram-Schmidt on the standard basis.
pub(crate) fn orthonormal_complement(u: &[f64]) -> Result<Vec<Vec<f64>>> {
    orthonormal_complement_of(&[u.to_vec()])
}

/// Orthonormal basis of the orthogonal complement of the span of `dirs`.
pub(crate) fn orthonormal_complement_of(dirs: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = dirs[0].len();
    let mut span: Vec<Vec<f64>> = Vec::new();
    let push = |span: &mut Vec<Vec<f64>>, v: &[f64]| -> bool {
        let mut w = v.to_vec();
        for _ in 0..2 {
            for s in span.iter() {
                let d: f64 = w.iter().zip(s).map(|(a, b)| a * b).sum();
                w.iter_mut().zip(s).for_each(|(a, b)| *a -= d * b);
            }
        }
        let norm = linalg::norm_f64(&w);
        let scale = linalg::norm_f64(v).max(1.0);
        if norm <= 1e-12 * scale {
            return false;
        }
        span.push(w.into_iter().map(|a| a / norm).collect());
        true
    };
    for d in dirs {
        if !push(&mut span, d) {
            return Err(Error::ZeroDirection);
        }
    }
    let k = span.len();
    for i in 0..n {
        if span.len() == n {
            break;
        }
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        push(&mut span, &e);
    }
    Ok(span.split_off(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    #[test]
    fn standard_volumes() {
        assert_eq!(VPolytope::simplex(2).unwrap().volume(), frac(1, 2));
        assert_eq!(VPolytope::simplex(3).unwrap().volume(), frac(1, 6));
        assert_eq!(VPolytope::simplex(4).unwrap().volume(), frac(1, 24));
        assert_eq!(VPolytope::cube(3).unwrap().volume(), int(1));
        assert_eq!(VPolytope::cross_polytope(3).unwrap().volume(), frac(4, 3));
    }

    #[test]
    fn sums_of_segments() {
        let segs: Vec<_> = (0..3).map(|i| VPolytope::segment(&RationalVector::unit(3, i)).unwrap()).collect();
        let c = segs[0].minkowski_sum(&segs[1]).unwrap().minkowski_sum(&segs[2]).unwrap();
        assert_eq!(c, VPolytope::cube(3).unwrap());
        let p = VPolytope::point(v(&[1, 2, 3]));
        assert_eq!(c.minkowski_sum(&p).unwrap(), c.translate(&v(&[1, 2, 3])));
    }

    #[test]
    fn support_faces() {
        let cube = VPolytope::cube(3).unwrap();
        let s = cube.support(&v(&[1, 1, 1])).unwrap();
        assert_eq!((s.value, s.face_dim), (int(3), 0));
        let simplex = VPolytope::simplex(3).unwrap();
        let s = simplex.support(&v(&[1, 1, 1])).unwrap();
        assert_eq!((s.value, s.face_dim, s.face.vertices().len()), (int(1), 2, 3));
        assert!(matches!(cube.support(&v(&[0, 0, 0])), Err(Error::ZeroDirection)));
    }

    #[test]
    fn facet_measures() {
        let cube = VPolytope::cube(3).unwrap().facet_measure().unwrap();
        assert_eq!(cube.len(), 6);
        assert!(cube.atoms().iter().all(|a| a.weight == int(1)));
        let s = VPolytope::simplex(3).unwrap().facet_measure().unwrap();
        assert_eq!(s.weight(&v(&[1, 1, 1])), Some(&frac(1, 2)));
        assert!(s.barycenter().iter().all(Zero::is_zero));
        let seg = VPolytope::segment(&v(&[1, 0])).unwrap();
        assert!(matches!(seg.facet_measure(), Err(Error::LowerDimensional { .. })));
    }

    #[test]
    fn inradii() {
        let s = VPolytope::simplex(3).unwrap();
        let c = VPolytope::cube(3).unwrap();
        assert_eq!(s.inradius(&s).unwrap().r, int(1));
        assert_eq!(s.inradius(&c).unwrap().r, frac(1, 3));
        assert_eq!(c.inradius(&s).unwrap().r, int(1));
    }

    #[test]
    fn homotheties() {
        let s = VPolytope::simplex(3).unwrap();
        let q = s.scale(&int(2)).translate(&v(&[1, 0, 0]));
        let h = homothety_check(&s, &q).unwrap().homothety.unwrap();
        assert_eq!((h.ratio, h.translation), (int(2), v(&[1, 0, 0])));
        assert!(homothety_check(&VPolytope::cube(3).unwrap(), &s).unwrap().homothety.is_none());
        let seg = VPolytope::segment(&v(&[1, 2])).unwrap();
        let h = homothety_check(&seg, &seg.scale(&frac(1, 3)).translate(&v(&[5, 5]))).unwrap();
        assert_eq!(h.homothety.unwrap().ratio, frac(1, 3));
        let rect = VPolytope::cuboid(&[int(2), int(1)]).unwrap();
        let square = VPolytope::cube(2).unwrap();
        let h = homothety_check(&square, &rect).unwrap();
        assert!(h.homothety.is_none() && h.irrational_ratio);
    }

    #[test]
    fn edges() {
        assert_eq!(VPolytope::cube(3).unwrap().edges().len(), 12);
        assert_eq!(VPolytope::cube(3).unwrap().edge_directions().len(), 3);
        assert_eq!(VPolytope::cross_polytope(3).unwrap().edge_directions().len(), 6);
        assert_eq!(VPolytope::simplex(4).unwrap().edges().len(), 10);
        assert_eq!(VPolytope::cube(2).unwrap().edges().len(), 4);
    }

    #[test]
    fn simplices() {
        assert!(VPolytope::simplex(4).unwrap().is_simplex());
        assert!(!VPolytope::cube(3).unwrap().is_simplex());
        let mut pts = VPolytope::simplex(3).unwrap().vertices().to_vec();
        pts.push(v(&[2, 2, 2]));
        let p = VPolytope::from_points(pts).unwrap();
        assert_eq!(p.vertices().len(), 5);
        assert!(!p.is_simplex());
    }

    #[test]
    fn projections() {
        let cube = VPolytope::cube(3).unwrap();
        assert!((project_volume(&cube, &[0.0, 0.0, 1.0]).unwrap() - 1.0).abs() < 1e-12);
        let o = VPolytope::cross_polytope(3).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let got = project_volume(&o, &[h, h, 0.0]).unwrap();
        assert!((got - 2.0 * h).abs() < 1e-9, "{got}");
    }

    #[test]
    fn strict_vertices() {
        let mut pts = VPolytope::cube(2).unwrap().vertices().to_vec();
        pts.push(RationalVector::raw(vec![frac(1, 2), frac(1, 2)]));
        assert!(matches!(VPolytope::from_vertices(pts), Err(Error::Validation(_))));
        assert!(matches!(
            VPolytope::from_points(vec![RationalVector::raw(vec![int(1)])]),
            Err(Error::UnsupportedDimension(1))
        ));
    }
}
