use proptest::prelude::*;

use mixvol::bkk::{
    bkk_verify, count_torus_zeros, dense_support, mixed_area, random_system, support_polygon, CountStatus, DEFAULT_TOL,
};
use mixvol::rational::int;

fn support() -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::btree_set((0u32..3, 0u32..3), 2..6).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mixed_area_is_symmetric_and_linear(a in support(), b in support(), c in support()) {
        let (p, q, r) = (support_polygon(&a).unwrap(), support_polygon(&b).unwrap(), support_polygon(&c).unwrap());
        prop_assert_eq!(mixed_area(&p, &q).unwrap(), mixed_area(&q, &p).unwrap());
        let pq = p.minkowski_sum(&q).unwrap();
        prop_assert_eq!(mixed_area(&pq, &r).unwrap(), mixed_area(&p, &r).unwrap() + mixed_area(&q, &r).unwrap());
        prop_assert_eq!(mixed_area(&p, &p).unwrap(), p.volume());
    }

    #[test]
    fn random_counts_never_exceed_bezout(a in support(), b in support(), seed in any::<u64>()) {
        let (q1, q2) = random_system(&a, &b, seed);
        if let Ok(r) = count_torus_zeros(&q1, &q2, DEFAULT_TOL) {
            prop_assert!(r.count as u64 <= r.bezout_bound);
            prop_assert_eq!(r.status, CountStatus::Match);
        }
    }
}

#[test]
fn dense_systems_meet_bezout() {
    for (d1, d2) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
        let s = bkk_verify(&dense_support(d1), &dense_support(d2), 6, 8).unwrap();
        assert_eq!(s.bkk_value, u64::from(d1 * d2));
        assert_eq!(&s.mixed_area * int(2), int(i64::from(d1 * d2)));
        assert!(s.passed(), "{d1}x{d2}: {s:?}");
    }
}
