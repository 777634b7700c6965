use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::UnitDisc;

use crate::error::{Error, Result};
use crate::geom::{RationalVector, VPolytope};
use crate::random::TrialRng;
use crate::rational::Rational;

/// A polynomial in `x, y` with complex coefficients, keyed by exponent `(a, b)` of `x^a y^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseBivariatePoly {
    terms: BTreeMap<(u32, u32), Complex64>,
}

impl SparseBivariatePoly {
    /// Drops zero coefficients and sums repeated exponents.
    pub fn new(terms: impl IntoIterator<Item = ((u32, u32), Complex64)>) -> Self {
        let mut map: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c;
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        SparseBivariatePoly { terms: map }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Complex64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms.iter().map(|(&(a, b), c)| c * x.powu(a) * y.powu(b)).sum()
    }

    /// `sum |c| |x|^a |y|^b`, the scale against which residuals are measured.
    pub fn abs_eval(&self, x: Complex64, y: Complex64) -> f64 {
        let (ax, ay) = (x.norm(), y.norm());
        self.terms.iter().map(|(&(a, b), c)| c.norm() * ax.powi(a as i32) * ay.powi(b as i32)).sum()
    }

    /// Coefficients in `y` (ascending) after substituting `x`.
    pub fn in_y(&self, x: Complex64) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(0.0, 0.0); self.degree_y() as usize + 1];
        for (&(a, b), v) in &self.terms {
            c[b as usize] += v * x.powu(a);
        }
        c
    }
}

/// Convex hull of the exponents of a nonzero polynomial.
pub fn newton_polygon(q: &SparseBivariatePoly) -> Result<VPolytope> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    support_polygon(&q.terms.keys().copied().collect::<Vec<_>>())
}

/// Convex hull of an exponent set.
pub fn support_polygon(support: &[(u32, u32)]) -> Result<VPolytope> {
    if support.is_empty() {
        return Err(Error::Empty);
    }
    VPolytope::from_points(support.iter().map(|&(a, b)| RationalVector::from_ints(&[a as i64, b as i64])).collect())
}

/// `V_2(P_1, P_2) = (Area(P_1 + P_2) - Area(P_1) - Area(P_2)) / 2`.
pub fn mixed_area(p1: &VPolytope, p2: &VPolytope) -> Result<Rational> {
    p1.check_same_dim(2)?;
    p2.check_same_dim(2)?;
    let sum = p1.minkowski_sum(p2)?;
    Ok((sum.volume() - p1.volume() - p2.volume()) / Rational::from_integer(2.into()))
}

/// Coefficients `2 + u` with `u` uniform in the unit disk, one per exponent.
pub fn random_poly(rng: &mut TrialRng, support: &[(u32, u32)]) -> SparseBivariatePoly {
    SparseBivariatePoly::new(support.iter().map(|&e| {
        let [u, v]: [f64; 2] = rng.sample(UnitDisc);
        (e, Complex64::new(2.0 + u, v))
    }))
}

/// A seeded random system with the given supports.
pub fn random_system(
    s1: &[(u32, u32)],
    s2: &[(u32, u32)],
    seed: u64,
) -> (SparseBivariatePoly, SparseBivariatePoly) {
    let mut rng = crate::random::trial_rng(seed, 0);
    random_system_with(&mut rng, s1, s2)
}

pub(crate) fn random_system_with(
    rng: &mut TrialRng,
    s1: &[(u32, u32)],
    s2: &[(u32, u32)],
) -> (SparseBivariatePoly, SparseBivariatePoly) {
    let q1 = random_poly(rng, s1);
    let q2 = random_poly(rng, s2);
    (q1, q2)
}

/// All exponents of total degree at most `d`.
pub fn dense_support(d: u32) -> Vec<(u32, u32)> {
    (0..=d).flat_map(|a| (0..=d - a).map(move |b| (a, b))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn newton_polygons() {
        let one = Complex64::new(1.0, 0.0);
        let q = SparseBivariatePoly::new([((0, 0), one), ((1, 0), one), ((0, 1), one)]);
        assert_eq!(newton_polygon(&q).unwrap(), VPolytope::simplex(2).unwrap());
        let sq = SparseBivariatePoly::new([((0, 0), one), ((1, 0), one), ((0, 1), one), ((1, 1), one)]);
        assert_eq!(newton_polygon(&sq).unwrap(), VPolytope::cube(2).unwrap());
        let dense = support_polygon(&dense_support(3)).unwrap();
        assert_eq!(dense, VPolytope::simplex(2).unwrap().scale(&int(3)));
        assert!(matches!(newton_polygon(&SparseBivariatePoly::new([])), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn mixed_areas() {
        let t = VPolytope::simplex(2).unwrap();
        assert_eq!(mixed_area(&t, &t).unwrap(), frac(1, 2));
        assert_eq!(mixed_area(&t.scale(&int(2)), &t.scale(&int(3))).unwrap(), int(3));
        let sq = VPolytope::cube(2).unwrap();
        assert_eq!(mixed_area(&sq, &sq).unwrap(), int(1));
    }

    #[test]
    fn random_systems_are_seeded() {
        let s = dense_support(2);
        let a = random_system(&s, &s, 4);
        assert_eq!(a, random_system(&s, &s, 4));
        assert_ne!(a, random_system(&s, &s, 5));
        assert!(a.0.terms().values().all(|c| c.norm() >= 1.0));
        assert_eq!(newton_polygon(&a.0).unwrap(), support_polygon(&s).unwrap());
    }
}
