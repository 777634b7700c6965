//! Seeded generators for reproducible experiments.
//!
//! Every trial draws from its own ChaCha stream, so results do not depend on
//! the order in which parallel workers run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::geom::{RationalVector, VPolytope};
use crate::linalg;
use crate::rational::Rational;

pub type TrialRng = ChaCha8Rng;

/// Independent generator for trial `trial` of an experiment with master seed `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `p/q` with `|p| <= max_num` and `1 <= q <= max_den`.
pub fn random_rational(rng: &mut TrialRng, max_num: i64, max_den: i64) -> Rational {
    let p = rng.gen_range(-max_num..=max_num);
    let q = rng.gen_range(1..=max_den);
    Rational::new(p.into(), q.into())
}

pub fn random_point(rng: &mut TrialRng, dim: usize) -> RationalVector {
    RationalVector::raw((0..dim).map(|_| random_rational(rng, 6, 3)).collect())
}

/// Hull of `points` random rational points, redrawn until full-dimensional.
pub fn random_polytope(rng: &mut TrialRng, dim: usize, points: usize) -> VPolytope {
    let points = points.max(dim + 1);
    loop {
        let pts: Vec<RationalVector> = (0..points).map(|_| random_point(rng, dim)).collect();
        let p = VPolytope::hull_of(pts).expect("points share a dimension");
        if p.is_full_dimensional() {
            return p;
        }
    }
}

/// A random nonzero integer direction with entries in `[-3, 3]`.
pub fn random_direction(rng: &mut TrialRng, dim: usize) -> RationalVector {
    loop {
        let c: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
        if c.iter().any(|&x| x != 0) {
            return RationalVector::from_ints(&c);
        }
    }
}

pub fn random_segment(rng: &mut TrialRng, dim: usize) -> VPolytope {
    let u = random_direction(rng, dim);
    let base = random_point(rng, dim);
    VPolytope::hull_of(vec![base.clone(), base.add(&u)]).expect("two points")
}

/// A full-dimensional polytope most of the time, a segment otherwise.
pub fn random_body(rng: &mut TrialRng, dim: usize) -> VPolytope {
    if rng.gen_bool(0.2) {
        random_segment(rng, dim)
    } else {
        let extra = rng.gen_range(0..=3);
        random_polytope(rng, dim, dim + 1 + extra)
    }
}

/// A random integer matrix with entries in `[-2, 2]` and nonzero determinant.
pub fn random_matrix(rng: &mut TrialRng, dim: usize) -> Vec<Vec<Rational>> {
    loop {
        let m: Vec<Vec<Rational>> = (0..dim)
            .map(|_| (0..dim).map(|_| Rational::from_integer(rng.gen_range(-2..=2).into())).collect())
            .collect();
        if linalg::rank(&m) == dim {
            return m;
        }
    }
}

/// A uniformly distributed unit vector.
pub fn random_unit(rng: &mut TrialRng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = linalg::norm_f64(&v);
        if n > 1e-9 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}
