use num_traits::Zero;
use proptest::prelude::*;

use mixvol::random::{random_matrix, random_point, random_polytope, trial_rng};
use mixvol::rational::{frac, int};
use mixvol::{linalg, Rational, RationalVector, VPolytope};

fn polytope(seed: u64, dim: usize) -> VPolytope {
    random_polytope(&mut trial_rng(seed, 0), dim, dim + 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn volume_is_translation_invariant(seed in any::<u64>(), dim in 2usize..=4) {
        let p = polytope(seed, dim);
        let x = random_point(&mut trial_rng(seed, 1), dim);
        prop_assert_eq!(p.translate(&x).volume(), p.volume());
    }

    #[test]
    fn volume_is_homogeneous(seed in any::<u64>(), dim in 2usize..=4, num in 1i64..5, den in 1i64..4) {
        let p = polytope(seed, dim);
        let t = frac(num, den);
        let scaled = p.scale(&t).volume();
        prop_assert_eq!(scaled, num_traits::pow(t, dim) * p.volume());
    }

    #[test]
    fn volume_scales_by_determinant(seed in any::<u64>(), dim in 2usize..=4) {
        let p = polytope(seed, dim);
        let m = random_matrix(&mut trial_rng(seed, 2), dim);
        let det = linalg::det(&m);
        let abs = if det < Rational::zero() { -det } else { det };
        prop_assert_eq!(p.linear_image(&m).unwrap().volume(), abs * p.volume());
    }

    #[test]
    fn facet_measure_is_closed_and_recovers_volume(seed in any::<u64>(), dim in 2usize..=4) {
        let p = polytope(seed, dim);
        let s = p.facet_measure().unwrap();
        // sum_i omega_i w_i = 0, and n Vol(P) = sum_i h_P(w_i) omega_i.
        prop_assert!(s.barycenter().iter().all(|c| c.is_zero()));
        let n = Rational::from_integer(dim.into());
        prop_assert_eq!(s.integrate(|w| p.support_value(w)), n * p.volume());
    }

    #[test]
    fn hull_vertices_are_extreme(seed in any::<u64>(), dim in 2usize..=4) {
        let p = polytope(seed, dim);
        let again = VPolytope::from_vertices(p.vertices().to_vec()).unwrap();
        prop_assert_eq!(again.volume(), p.volume());
        for f in &p.hull().facets {
            for (i, v) in p.vertices().iter().enumerate() {
                let h = v.dot(&f.normal);
                prop_assert!(h <= f.offset);
                prop_assert_eq!(h == f.offset, f.vertex_ids.contains(&i));
            }
        }
    }

    #[test]
    fn minkowski_sum_support_is_additive(seed in any::<u64>(), dim in 2usize..=4) {
        let p = polytope(seed, dim);
        let q = random_polytope(&mut trial_rng(seed, 3), dim, dim + 2);
        let sum = p.minkowski_sum(&q).unwrap();
        let mut rng = trial_rng(seed, 4);
        for _ in 0..5 {
            let w = mixvol::random::random_direction(&mut rng, dim);
            prop_assert_eq!(sum.support_value(&w), p.support_value(&w) + q.support_value(&w));
        }
    }
}

#[test]
fn canonical_bodies() {
    for n in 2..=4 {
        let s = VPolytope::simplex(n).unwrap();
        assert_eq!(s.vertices().len(), n + 1);
        assert!(s.is_simplex());
        assert_eq!(VPolytope::cube(n).unwrap().volume(), int(1));
        assert_eq!(VPolytope::cube(n).unwrap().vertices().len(), 1 << n);
    }
    assert_eq!(VPolytope::cross_polytope(3).unwrap().volume(), frac(4, 3));
}

#[test]
fn lattice_points_of_a_cube_hull_to_the_cube() {
    let pts: Vec<RationalVector> = (0..27)
        .map(|k| RationalVector::from_ints(&[k % 3, (k / 3) % 3, k / 9]))
        .collect();
    let p = VPolytope::from_points(pts).unwrap();
    assert_eq!(p.vertices().len(), 8);
    assert_eq!(p.volume(), int(8));
    assert!(VPolytope::from_vertices(p.vertices().to_vec()).is_ok());
}

#[test]
fn inradius_matches_the_box() {
    let b = VPolytope::cuboid(&[int(4), int(2), int(6)]).unwrap();
    let r = b.inradius(&VPolytope::cube(3).unwrap()).unwrap();
    assert_eq!(r.r, int(2));
}
