use proptest::prelude::*;

use mixvol::exclusion::{
    classify_omega, isop, perturb_facet, sigma_proportionality, stability_interval, weakly_decomposable_polytope,
};
use mixvol::geom::homothety_check;
use mixvol::mixed::first_mixed_volume;
use mixvol::random::{random_polytope, trial_rng};
use mixvol::rational::int;
use mixvol::{Rational, VPolytope};

fn stable_shift(p: &VPolytope, i: usize) -> Option<Rational> {
    stability_interval(p, i).unwrap().half_step(true).filter(|t| *t != int(0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn perturbation_round_trip_and_lambda(seed in any::<u64>()) {
        let p = random_polytope(&mut trial_rng(seed, 0), 3, 6);
        let i = (seed % p.hull().facets.len() as u64) as usize;
        if let Some(t) = stable_shift(&p, i) {
            let q = perturb_facet(&p, i, &t).unwrap();
            prop_assert_eq!(&first_mixed_volume(&q.result, &p).unwrap() / p.volume(), q.lambda_t.clone());
            let j = q.result.hull().facets.iter().position(|f| f.normal == p.hull().facets[i].normal).unwrap();
            let back = perturb_facet(&q.result, j, &-t).unwrap();
            prop_assert_eq!(back.result, p);
        }
    }

    #[test]
    fn non_simplices_are_weakly_decomposable(seed in any::<u64>()) {
        let p = random_polytope(&mut trial_rng(seed, 1), 3, 7);
        let w = weakly_decomposable_polytope(&p).unwrap();
        prop_assert_eq!(w.decomposable, !p.is_simplex());
        if let Some(q) = w.witness {
            prop_assert!(homothety_check(&p, &q.result).unwrap().homothety.is_none());
        }
    }

    #[test]
    fn facet_ratios_respect_the_isoperimetric_bound(seed in any::<u64>()) {
        let p = random_polytope(&mut trial_rng(seed, 2), 3, 6);
        let r = isop(&p).unwrap();
        for f in &r.per_facet {
            prop_assert!(f.isop >= f.isoperimetric_bound * (1.0 - 1e-9));
        }
        prop_assert!(classify_omega(&p).unwrap().all_facets);
    }
}

#[test]
fn simplex_shifts_are_homotheties() {
    let s = VPolytope::simplex(4).unwrap();
    for i in 0..5 {
        let t = stable_shift(&s, i).unwrap();
        let q = perturb_facet(&s, i, &t).unwrap();
        let h = homothety_check(&s, &q.result).unwrap().homothety.unwrap();
        assert_eq!(num_traits::pow(h.ratio.clone(), 4), q.result.volume() / s.volume());
        assert!(sigma_proportionality(&s, i, &t).unwrap().proportional());
    }
}

#[test]
fn polygon_prism_census() {
    let prism = VPolytope::prism(&VPolytope::circle_polygon(20).unwrap(), &int(1)).unwrap();
    let c = classify_omega(&prism).unwrap();
    assert_eq!((c.facet_count, c.vertex_count), (22, 40));
    assert!(c.all_facets);
    // Short prism over a many-sided base: the caps beat the body ratio.
    let flat = VPolytope::prism(&VPolytope::circle_polygon(20).unwrap(), &mixvol::rational::frac(1, 10)).unwrap();
    let r = isop(&flat).unwrap();
    assert!(!r.condition || r.margin > 0.0);
}
