//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use mixvol::bezout::{ratio_b, ratio_b2, search_b2_lower, sweep, CheckKind, SearchOptions};
use mixvol::bkk::{bkk_verify, dense_support};
use mixvol::exclusion::{
    affine_isop_search, isop, perturb_facet, sigma_proportionality, support_equality_check,
    weakly_decomposable_polytope,
};
use mixvol::geom::homothety_check;
use mixvol::mixed::{first_mixed_volume, mixed_surface_measure, mixed_volume, mixed_volume_oracle, mv, BodyTuple};
use mixvol::random::{random_body, random_matrix, random_polytope, trial_rng};
use mixvol::rational::{factorial, frac, int};
use mixvol::{Rational, RationalVector, VPolytope};

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn seg(c: &[i64]) -> VPolytope {
    VPolytope::segment(&RationalVector::from_ints(c)).unwrap()
}

fn unit_seg(n: usize, i: usize) -> VPolytope {
    VPolytope::segment(&RationalVector::unit(n, i)).unwrap()
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    f()?;
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:?}, limit {limit:?}"))
}

fn exact_values() -> Check {
    let second = Duration::from_secs(1);
    for n in 2..=4 {
        timed(second, || {
            let v = VPolytope::simplex(n).map_err(err)?.volume();
            ensure(v == Rational::new(1.into(), factorial(n)), || format!("vol(simplex {n}) = {v}"))
        })?;
    }
    timed(second, || {
        let v = VPolytope::cross_polytope(3).map_err(err)?.volume();
        ensure(v == frac(4, 3), || format!("vol(O_3) = {v}"))
    })?;
    for n in [3usize, 4] {
        let c = VPolytope::cube(n).map_err(err)?;
        for i in 0..n {
            timed(second, || {
                let v = mv(&[(&c, n - 1), (&unit_seg(n, i), 1)]).map_err(err)?;
                ensure(v == frac(1, n as i64), || format!("V(C[{}],[0,e_{i}]) = {v}", n - 1))
            })?;
        }
        timed(second, || {
            let v = mv(&[(&c, n - 2), (&unit_seg(n, 0), 1), (&unit_seg(n, 1), 1)]).map_err(err)?;
            ensure(v == frac(1, (n * (n - 1)) as i64), || format!("V(C[{}],[0,e_1],[0,e_2]) = {v}", n - 2))
        })?;
    }
    Ok(())
}

fn bezout_constants() -> Check {
    for n in [3usize, 4] {
        let c = VPolytope::cube(n).map_err(err)?;
        let r = ratio_b2(&unit_seg(n, 0), &unit_seg(n, 1), &c).map_err(err)?;
        ensure(r == frac(n as i64, n as i64 - 1), || format!("cube {n}: ratio_b2 = {r}"))?;
    }
    let o = VPolytope::cross_polytope(3).map_err(err)?;
    let r = ratio_b2(&seg(&[1, 1, 0]), &seg(&[1, -1, 0]), &o).map_err(err)?;
    ensure(r == int(2), || format!("O_3 diagonal pair: {r}"))?;
    let c = VPolytope::cube(3).map_err(err)?;
    let axes: Vec<VPolytope> = (0..3).map(|i| unit_seg(3, i)).collect();
    let r = ratio_b(&axes, &c).map_err(err)?;
    ensure(r == int(3), || format!("cube ratio_b = {r}"))?;
    let opts = SearchOptions {
        budget: 10_000,
        seed: 0,
        ..SearchOptions::default()
    };
    let s = search_b2_lower(&VPolytope::simplex(3).map_err(err)?, &opts).map_err(err)?;
    ensure(s.value.exact() == Some(&int(1)), || format!("search on simplex: {}", s.value))
}

fn property_suites() -> Check {
    let suites = [
        (CheckKind::Simplex, 100),
        (CheckKind::Fenchel, 100),
        (CheckKind::FenchelSharp, 100),
        (CheckKind::Fgm, 100),
        (CheckKind::Af, 100),
        (CheckKind::Rectangle, 200),
    ];
    for (kind, trials) in suites {
        let s = sweep(kind, 3, trials, 2024, 60).map_err(err)?;
        ensure(s.passed() && s.certified, || {
            format!("{kind}: violations {:?}, certified {}", s.violations, s.certified)
        })?;
        ensure(s.evaluated >= 100, || format!("{kind}: only {} instances evaluated", s.evaluated))?;
    }
    Ok(())
}

fn diskant_xiao() -> Check {
    let d = sweep(CheckKind::Diskant, 3, 100, 77, 60).map_err(err)?;
    ensure(d.passed() && d.evaluated == 100, || {
        format!("diskant: violations {:?}, evaluated {}", d.violations, d.evaluated)
    })?;
    let worst = d.min_margin.as_ref().map_or(0.0, |m| m.to_f64());
    ensure(worst >= -1e-30, || format!("diskant margin {worst:e}"))?;
    let x = sweep(CheckKind::Xiao, 3, 100, 77, 60).map_err(err)?;
    ensure(x.passed() && x.certified, || format!("ratio_b above n on trials {:?}", x.violations))
}

fn oracle_equivalence() -> Check {
    for (n, count) in [(3usize, 50u64), (4, 20)] {
        for t in 0..count {
            let mut rng = trial_rng(500 + n as u64, t);
            let bodies: Vec<VPolytope> = (0..3).map(|_| random_body(&mut rng, n)).collect();
            let mults = if n == 3 { [1, 1, 1] } else { [1, 1, 2] };
            let tuple = BodyTuple::new(bodies.iter().cloned().zip(mults).collect()).map_err(err)?;
            let (a, b) = (mixed_volume(&tuple).map_err(err)?, mixed_volume_oracle(&tuple).map_err(err)?);
            ensure(a == b, || format!("R^{n} trial {t}: {a} vs oracle {b}"))?;
        }
    }
    for t in 0..50 {
        let mut rng = trial_rng(600, t);
        let p = random_polytope(&mut rng, 3, 6);
        let l = random_body(&mut rng, 3);
        let (a, b) = (first_mixed_volume(&l, &p).map_err(err)?, mv(&[(&l, 1), (&p, 2)]).map_err(err)?);
        ensure(a == b, || format!("first mixed volume trial {t}: {a} vs {b}"))?;
        let (x, y) = (random_body(&mut rng, 3), random_body(&mut rng, 3));
        let s = mixed_surface_measure(&BodyTuple::new(vec![(x.clone(), 1), (y.clone(), 1)]).map_err(err)?).map_err(err)?;
        let via_measure = s.integrate(|w| l.support_value(w)) / int(3);
        let direct = mv(&[(&l, 1), (&x, 1), (&y, 1)]).map_err(err)?;
        ensure(via_measure == direct, || format!("surface measure trial {t}: {via_measure} vs {direct}"))?;
    }
    Ok(())
}

fn facet_normals(p: &VPolytope) -> BTreeSet<RationalVector> {
    p.hull().facets.iter().map(|f| f.normal.clone()).collect()
}

fn triangular_prism() -> VPolytope {
    let tri = VPolytope::simplex(2).unwrap();
    VPolytope::prism(&tri, &int(1)).unwrap()
}

fn characterization() -> Check {
    let s = VPolytope::simplex(3).map_err(err)?;
    let vol = s.volume();
    for (i, f) in s.hull().facets.iter().enumerate() {
        for t in [frac(1, 3), frac(-1, 4)] {
            for r in [1, 2] {
                ensure(support_equality_check(&s, i, &t, r).map_err(err)?, || {
                    format!("simplex facet {i}, t {t}, r {r}: supports differ")
                })?;
            }
            let rep = sigma_proportionality(&s, i, &t).map_err(err)?;
            let expected = Rational::one() + &t * &f.omega / (int(3) * &vol);
            let q = perturb_facet(&s, i, &t).map_err(err)?;
            let defining = first_mixed_volume(&q.result, &s).map_err(err)? / &vol;
            ensure(rep.proportional() && rep.lambda_t == expected && defining == expected, || {
                format!("simplex facet {i}, t {t}: lambda {} vs {expected}", rep.lambda_t)
            })?;
        }
    }
    for (name, p) in [("cube", VPolytope::cube(3).map_err(err)?), ("prism", triangular_prism())] {
        let found = (0..p.hull().facets.len()).any(|i| {
            sigma_proportionality(&p, i, &frac(1, 4)).is_ok_and(|r| !r.proportional())
        });
        ensure(found, || format!("{name}: no sigma violation"))?;
    }
    for n in [3, 4] {
        let w = weakly_decomposable_polytope(&VPolytope::simplex(n).map_err(err)?).map_err(err)?;
        ensure(!w.decomposable && w.witness.is_none(), || format!("simplex {n} reported decomposable"))?;
    }
    for (name, p) in [
        ("cube", VPolytope::cube(3).map_err(err)?),
        ("prism", triangular_prism()),
        ("octahedron", VPolytope::cross_polytope(3).map_err(err)?),
    ] {
        let w = weakly_decomposable_polytope(&p).map_err(err)?;
        let l = w.witness.ok_or_else(|| format!("{name}: no witness"))?.result;
        let sum = p.minkowski_sum(&l).map_err(err)?;
        let ok = facet_normals(&sum).is_subset(&facet_normals(&p))
            && homothety_check(&p, &l).map_err(err)?.homothety.is_none();
        ensure(w.decomposable && ok, || format!("{name}: witness not verified"))?;
    }
    Ok(())
}

fn excluding_conditions() -> Check {
    let long = VPolytope::cuboid(&[int(10), int(1), int(1)]).map_err(err)?;
    let r = isop(&long).map_err(err)?;
    ensure(r.condition && r.margin > 0.5, || format!("long box: margin {}", r.margin))?;
    let c = isop(&VPolytope::cube(3).map_err(err)?).map_err(err)?;
    ensure(!c.condition && c.inconclusive && c.margin.abs() <= 1e-9, || format!("cube: margin {}", c.margin))?;
    let a = affine_isop_search(&VPolytope::simplex(3).map_err(err)?, 1000, 0).map_err(err)?;
    ensure(a.best_ratio <= 1.0 + 1e-6, || format!("simplex affine ratio {}", a.best_ratio))
}

fn bkk() -> Check {
    let square = [(0, 0), (1, 0), (0, 1), (1, 1)];
    for (s1, s2, expected) in [
        (dense_support(2), dense_support(3), 6usize),
        (square.to_vec(), square.to_vec(), 2),
    ] {
        let s = bkk_verify(&s1, &s2, 20, 31).map_err(err)?;
        ensure(s.non_degenerate == 20 && s.matches == 20, || {
            format!("{}/{} matched, expected 20/20", s.matches, s.non_degenerate)
        })?;
        ensure(s.bkk_value == expected as u64 && s.within_bezout, || format!("bkk value {}", s.bkk_value))?;
        ensure(s.trials.iter().all(|t| t.count == Some(expected)), || "count mismatch".into())?;
        ensure(s.residual_max <= 1e-9, || format!("residual {:e}", s.residual_max))?;
    }
    Ok(())
}

fn invariance() -> Check {
    for t in 0..50 {
        let mut rng = trial_rng(900, t);
        let m = random_matrix(&mut rng, 3);
        let det = mixvol::linalg::det(&m);
        let abs_det = if det < Rational::zero() { -det } else { det };
        let k = random_polytope(&mut rng, 3, 6);
        let (a, b) = (random_body(&mut rng, 3), random_body(&mut rng, 3));
        let image = |p: &VPolytope| p.linear_image(&m).map_err(err);
        let shift = RationalVector::from_ints(&[1, -2, 3]);
        let (ka, aa, ba) = (image(&k)?.translate(&shift), image(&a)?, image(&b)?.translate(&shift));
        match (ratio_b2(&a, &b, &k), ratio_b2(&aa, &ba, &ka)) {
            (Ok(x), Ok(y)) => ensure(x == y, || format!("trial {t}: ratio_b2 {x} vs {y}"))?,
            (Err(_), Err(_)) => {}
            (x, y) => return Err(format!("trial {t}: {x:?} vs {y:?}")),
        }
        let before = mv(&[(&a, 1), (&b, 1), (&k, 1)]).map_err(err)?;
        let after = mv(&[(&aa, 1), (&ba, 1), (&ka, 1)]).map_err(err)?;
        ensure(after == &abs_det * &before, || format!("trial {t}: {after} vs |det| * {before}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Check); 9] = [
        ("exact values", Duration::from_secs(10), exact_values),
        ("Bezout constants", Duration::from_secs(60), bezout_constants),
        ("inequality property suites", Duration::from_secs(600), property_suites),
        ("Diskant and Xiao", Duration::from_secs(300), diskant_xiao),
        ("oracle equivalence", Duration::from_secs(300), oracle_equivalence),
        ("characterization machinery", Duration::from_secs(120), characterization),
        ("excluding conditions", Duration::from_secs(300), excluding_conditions),
        ("BKK zero counts", Duration::from_secs(120), bkk),
        ("invariance suite", Duration::from_secs(120), invariance),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = outcome.and_then(|()| ensure(took <= limit, || format!("took {took:?}, limit {limit:?}")));
        match outcome {
            Ok(()) => println!("criterion {} ({name}): PASS in {:.2}s", i + 1, took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL in {:.2}s: {why}", i + 1, took.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
