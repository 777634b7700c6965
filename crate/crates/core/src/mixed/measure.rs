use num_traits::Signed;

use crate::error::Result;
use crate::geom::{DirectionalMeasure, RationalVector, VPolytope};
use crate::linalg;
use crate::mixed::{polarize, BodyTuple};
use crate::par;
use crate::rational::Rational;

/// `V(L, P[n-1]) = (1/n) sum_i h_L(w_i) omega_i` over the facets of `p`.
pub fn first_mixed_volume(l: &VPolytope, p: &VPolytope) -> Result<Rational> {
    p.check_same_dim(l.dim())?;
    let s = p.facet_measure()?;
    let n = Rational::from_integer(p.dim().into());
    Ok(s.integrate(|w| l.support_value(w)) / n)
}

/// The mixed surface area measure `S(P_2, ..., P_n, .)` of a tuple with total multiplicity `n - 1`.
///
/// Atoms sit on the facet normals of the sum of the distinct bodies. Each
/// weight is the (n-1)-dimensional mixed volume of the faces in direction
/// `w`, computed after dropping a coordinate `k` with `w_k != 0`, divided by `|w_k|`.
pub fn mixed_surface_measure(tuple: &BodyTuple) -> Result<DirectionalMeasure> {
    let n = tuple.dim();
    tuple.require_total(n - 1)?;
    let mut sum = tuple.entries()[0].0.clone();
    for (b, _) in &tuple.entries()[1..] {
        sum = sum.minkowski_sum(b)?;
    }
    let candidates = candidate_normals(&sum);
    let atoms = par::map(&candidates, |w| {
        let k = w.first_nonzero().expect("nonzero normal");
        let faces: Vec<(VPolytope, usize)> = tuple
            .entries()
            .iter()
            .map(|(b, m)| {
                let face = b.support(w).expect("nonzero direction").face;
                let projected = face.vertices().iter().map(|v| v.drop_coord(k)).collect();
                (VPolytope::hull_of(projected).expect("nonempty face"), *m)
            })
            .collect();
        let weight = polarize(&faces, n - 1) / w.coords()[k].abs();
        (w.clone(), weight)
    });
    Ok(DirectionalMeasure::new(atoms))
}

/// Directions that can carry mass: facet normals of a full-dimensional sum,
/// both normals of a hyperplanar one, none otherwise.
fn candidate_normals(sum: &VPolytope) -> Vec<RationalVector> {
    let n = sum.dim();
    let k = sum.intrinsic_dim();
    if k == n {
        return sum.hull().facets.iter().map(|f| f.normal.clone()).collect();
    }
    if k + 1 < n {
        return Vec::new();
    }
    let base = &sum.vertices()[0];
    let diffs: Vec<Vec<Rational>> = sum.vertices()[1..]
        .iter()
        .map(|v| v.sub(base).into_coords())
        .collect();
    let normal = linalg::nullspace(&diffs, n).pop().expect("one-dimensional complement");
    let a = RationalVector::raw(normal).primitive();
    if a.is_zero() {
        return Vec::new();
    }
    vec![a.neg(), a]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixed::mv;
    use crate::rational::{frac, int};

    #[test]
    fn first_mixed_volumes() {
        let c = VPolytope::cube(3).unwrap();
        let l1 = VPolytope::segment(&RationalVector::from_ints(&[1, 0, 0])).unwrap();
        assert_eq!(first_mixed_volume(&l1, &c).unwrap(), frac(1, 3));
        assert_eq!(first_mixed_volume(&c, &c).unwrap(), int(1));
        let o = VPolytope::cross_polytope(3).unwrap();
        let d = VPolytope::segment(&RationalVector::from_ints(&[1, 1, 0])).unwrap();
        assert_eq!(first_mixed_volume(&d, &o).unwrap(), frac(2, 3));
        assert_eq!(mv(&[(&d, 1), (&o, 2)]).unwrap(), frac(2, 3));
    }

    #[test]
    fn diagonal_measure_is_facet_measure() {
        let s = VPolytope::simplex(3).unwrap();
        let t = BodyTuple::new(vec![(s.clone(), 2)]).unwrap();
        let m = mixed_surface_measure(&t).unwrap();
        assert_eq!(m.len(), 4);
        assert_eq!(m, s.facet_measure().unwrap());
    }

    #[test]
    fn segment_measure_reproduces_mixed_volume() {
        let c = VPolytope::cube(3).unwrap();
        let l1 = VPolytope::segment(&RationalVector::from_ints(&[1, 0, 0])).unwrap();
        let l2 = VPolytope::segment(&RationalVector::from_ints(&[0, 1, 0])).unwrap();
        let m = mixed_surface_measure(&BodyTuple::of(&[&c, &l2]).unwrap()).unwrap();
        let v = m.integrate(|w| l1.support_value(w)) / int(3);
        assert_eq!(v, frac(1, 6));
        // Two segments in R^3 span a plane: the measure lives on its two normals.
        let m = mixed_surface_measure(&BodyTuple::of(&[&l1, &l2]).unwrap()).unwrap();
        assert_eq!(m.len(), 2);
        let e3 = VPolytope::segment(&RationalVector::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(m.integrate(|w| e3.support_value(w)) / int(3), frac(1, 6));
    }
}
