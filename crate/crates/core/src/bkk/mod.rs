//! Zero counts of random sparse systems in two variables against their mixed area.

mod poly;
mod roots;

use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::random::trial_rng;
use crate::rational::{self, Rational};

pub use poly::{
    dense_support, mixed_area, newton_polygon, random_poly, random_system, support_polygon, SparseBivariatePoly,
};
pub use roots::{aberth, backward_error};

/// Smallest `|x|`, `|y|` accepted as a point of the torus.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Largest relative residual accepted for a root or a common zero.
pub const RESIDUAL_BOUND: f64 = 1e-9;

type ExactComplex = Complex<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountStatus {
    Match,
    Undercount,
    Overcount,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroCountReport {
    pub count: usize,
    /// `2 V_2(P_1, P_2)`.
    pub bkk_value: u64,
    /// `d_1 d_2`.
    pub bezout_bound: u64,
    pub resultant_degree: usize,
    /// Largest relative residual of an accepted common zero.
    pub residual_max: f64,
    /// Largest relative backward error of a resultant root.
    pub root_residual_max: f64,
    pub status: CountStatus,
    /// Accepted zeros as `[re x, im x, re y, im y]`.
    pub zeros: Vec<[f64; 4]>,
}

fn exact(c: Complex64) -> ExactComplex {
    Complex::new(rational::from_f64(c.re), rational::from_f64(c.im))
}

fn det(mut m: Vec<Vec<ExactComplex>>) -> ExactComplex {
    let n = m.len();
    let mut acc = ExactComplex::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return ExactComplex::zero();
        };
        if p != col {
            m.swap(p, col);
            acc = -acc;
        }
        let pivot = m[col][col].clone();
        acc = acc * pivot.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() / pivot.clone();
            for c in col..n {
                let t = m[col][c].clone() * f.clone();
                m[r][c] = m[r][c].clone() - t;
            }
        }
    }
    acc
}

/// Coefficients in `y` (ascending) of `q(x0, y)`, exactly.
fn exact_in_y(q: &[((u32, u32), ExactComplex)], deg_y: usize, x0: &Rational) -> Vec<ExactComplex> {
    let mut c = vec![ExactComplex::zero(); deg_y + 1];
    for ((a, b), v) in q {
        let scale = num_traits::pow(x0.clone(), *a as usize);
        c[*b as usize] = c[*b as usize].clone() + v.clone() * Complex::new(scale, Rational::zero());
    }
    c
}

fn sylvester(p: &[ExactComplex], q: &[ExactComplex]) -> Vec<Vec<ExactComplex>> {
    let (m, n) = (p.len() - 1, q.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (shift_count, coeffs, deg) in [(n, p, m), (m, q, n)] {
        for i in 0..shift_count {
            let mut row = vec![ExactComplex::zero(); size];
            for k in 0..=deg {
                row[i + k] = coeffs[deg - k].clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// `Res_y(Q_1, Q_2)` as ascending coefficients in `x`, computed exactly from the
/// floating coefficients by evaluating the Sylvester determinant at integer
/// nodes and interpolating.
pub fn resultant_y(q1: &SparseBivariatePoly, q2: &SparseBivariatePoly) -> Vec<Complex64> {
    let e1: Vec<_> = q1.terms().iter().map(|(&e, &c)| (e, exact(c))).collect();
    let e2: Vec<_> = q2.terms().iter().map(|(&e, &c)| (e, exact(c))).collect();
    let (m, n) = (q1.degree_y() as usize, q2.degree_y() as usize);
    let degree = n * q1.degree_x() as usize + m * q2.degree_x() as usize;
    let nodes: Vec<Rational> = (0..=degree).map(|j| Rational::from_integer(j.into())).collect();
    let values = par::map(&nodes, |x0| det(sylvester(&exact_in_y(&e1, m, x0), &exact_in_y(&e2, n, x0))));

    // Newton divided differences on the nodes 0, 1, ..., degree.
    let mut dd = values;
    for level in 1..=degree {
        for j in (level..=degree).rev() {
            let width = Complex::new(Rational::from_integer(level.into()), Rational::zero());
            dd[j] = (dd[j].clone() - dd[j - 1].clone()) / width;
        }
    }
    let mut coeffs = vec![dd[degree].clone()];
    for k in (0..degree).rev() {
        let node = Complex::new(nodes[k].clone(), Rational::zero());
        let mut next = vec![ExactComplex::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].clone() + c.clone();
            next[i] = next[i].clone() - c.clone() * node.clone();
        }
        next[0] = next[0].clone() + dd[k].clone();
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
        .iter()
        .map(|c| Complex64::new(rational::to_f64(&c.re), rational::to_f64(&c.im)))
        .collect()
}

/// `2 V_2`, an integer for lattice polygons.
fn twice(area: &Rational) -> u64 {
    (area * Rational::from_integer(2.into())).to_integer().try_into().expect("lattice mixed area")
}

fn max_relative_residual(q: &SparseBivariatePoly, x: Complex64, y: Complex64) -> f64 {
    let scale = q.abs_eval(x, y);
    if scale == 0.0 {
        0.0
    } else {
        q.eval(x, y).norm() / scale
    }
}

/// Drops numerically negligible leading terms and the exactly vanishing low ones.
fn trim(c: &[Complex64]) -> &[Complex64] {
    let big = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let hi = c.iter().rposition(|z| z.norm() > 1e-13 * big).map_or(0, |i| i + 1);
    let lo = c[..hi].iter().position(|z| z.norm() > 0.0).unwrap_or(hi);
    &c[lo..hi]
}

/// Counts common zeros of `q1`, `q2` in `(C \ {0})^2`.
pub fn count_torus_zeros(q1: &SparseBivariatePoly, q2: &SparseBivariatePoly, tol: f64) -> Result<ZeroCountReport> {
    let bkk_value = twice(&mixed_area(&newton_polygon(q1)?, &newton_polygon(q2)?)?);
    let bezout_bound = u64::from(q1.total_degree()) * u64::from(q2.total_degree());
    if q1.degree_y() + q2.degree_y() == 0 {
        return Err(Error::NonGeneric("neither polynomial involves y".into()));
    }
    let r = resultant_y(q1, q2);
    if r.iter().all(|c| c.norm() == 0.0) {
        return Err(Error::NonGeneric("resultant vanishes identically (common factor)".into()));
    }
    let low = r.iter().position(|c| c.norm() > 0.0).unwrap_or(0);
    let reduced = &r[low..];
    let xs = aberth(reduced);
    let root_residual_max = xs.iter().map(|&z| backward_error(reduced, z)).fold(0.0, f64::max);
    if root_residual_max > RESIDUAL_BOUND {
        return Err(Error::NonGeneric(format!("resultant root residual {root_residual_max:e}")));
    }
    for (i, a) in xs.iter().enumerate() {
        for b in &xs[i + 1..] {
            if (a - b).norm() <= 10.0 * tol * a.norm().max(1.0) {
                return Err(Error::NonGeneric(format!(
                    "resultant roots {a} and {b} cluster"
                )));
            }
        }
    }
    let (solve, check) = if q1.degree_y() > 0 && (q2.degree_y() == 0 || q1.degree_y() <= q2.degree_y()) {
        (q1, q2)
    } else {
        (q2, q1)
    };
    let mut zeros = Vec::new();
    let mut residual_max: f64 = 0.0;
    for &x in xs.iter().filter(|x| x.norm() >= tol) {
        let coeffs = solve.in_y(x);
        for y in aberth(trim(&coeffs)) {
            if !y.is_finite() || y.norm() < tol {
                continue;
            }
            let res = max_relative_residual(check, x, y).max(max_relative_residual(solve, x, y));
            if res <= RESIDUAL_BOUND {
                residual_max = residual_max.max(res);
                zeros.push([x.re, x.im, y.re, y.im]);
            }
        }
    }
    let count = zeros.len();
    let status = match (count as u64).cmp(&bkk_value) {
        std::cmp::Ordering::Equal => CountStatus::Match,
        std::cmp::Ordering::Less => CountStatus::Undercount,
        std::cmp::Ordering::Greater => CountStatus::Overcount,
    };
    Ok(ZeroCountReport {
        count,
        bkk_value,
        bezout_bound,
        resultant_degree: reduced.len() - 1,
        residual_max,
        root_residual_max,
        status,
        zeros,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BkkTrial {
    pub trial: usize,
    pub count: Option<usize>,
    pub status: Option<CountStatus>,
    pub residual_max: Option<f64>,
    /// Why a degenerate trial was excluded.
    pub excluded: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BkkSummary {
    pub bkk_value: u64,
    #[serde(serialize_with = "rational::serialize")]
    pub mixed_area: Rational,
    pub bezout_bound: u64,
    pub seed: u64,
    pub trials: Vec<BkkTrial>,
    pub non_degenerate: usize,
    pub matches: usize,
    pub match_rate: f64,
    pub within_bezout: bool,
    pub residual_max: f64,
}

impl BkkSummary {
    /// Every non-degenerate trial matched and at least one trial was non-degenerate.
    pub fn passed(&self) -> bool {
        self.non_degenerate > 0 && self.matches == self.non_degenerate && self.within_bezout
    }
}

/// Counts zeros of `trials` seeded random systems with the given supports.
pub fn bkk_verify(s1: &[(u32, u32)], s2: &[(u32, u32)], trials: usize, seed: u64) -> Result<BkkSummary> {
    let area = mixed_area(&support_polygon(s1)?, &support_polygon(s2)?)?;
    let bkk_value = twice(&area);
    let outcomes = par::map_range(trials, |t| {
        let mut rng = trial_rng(seed, t as u64);
        let (q1, q2) = poly::random_system_with(&mut rng, s1, s2);
        count_torus_zeros(&q1, &q2, DEFAULT_TOL)
    });
    let bezout_bound = s1.iter().map(|e| e.0 + e.1).max().unwrap_or(0) as u64
        * s2.iter().map(|e| e.0 + e.1).max().unwrap_or(0) as u64;
    let mut rows = Vec::with_capacity(trials);
    for (trial, o) in outcomes.into_iter().enumerate() {
        rows.push(match o {
            Ok(r) => BkkTrial {
                trial,
                count: Some(r.count),
                status: Some(r.status),
                residual_max: Some(r.residual_max.max(r.root_residual_max)),
                excluded: None,
            },
            Err(Error::NonGeneric(why)) => BkkTrial {
                trial,
                count: None,
                status: None,
                residual_max: None,
                excluded: Some(why),
            },
            Err(e) => return Err(e),
        });
    }
    let done: Vec<&BkkTrial> = rows.iter().filter(|r| r.count.is_some()).collect();
    let matches = done.iter().filter(|r| r.status == Some(CountStatus::Match)).count();
    Ok(BkkSummary {
        bkk_value,
        mixed_area: area,
        bezout_bound,
        seed,
        non_degenerate: done.len(),
        matches,
        match_rate: if done.is_empty() { 0.0 } else { matches as f64 / done.len() as f64 },
        within_bezout: done.iter().all(|r| r.count.unwrap() as u64 <= bezout_bound),
        residual_max: done.iter().filter_map(|r| r.residual_max).fold(0.0, f64::max),
        trials: rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: [(u32, u32); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

    #[test]
    fn dense_two_three() {
        let s = bkk_verify(&dense_support(2), &dense_support(3), 5, 1).unwrap();
        assert_eq!((s.bkk_value, s.bezout_bound), (6, 6));
        assert!(s.passed(), "{s:?}");
    }

    #[test]
    fn bilinear_squares() {
        let s = bkk_verify(&SQUARE, &SQUARE, 5, 2).unwrap();
        assert_eq!((s.bkk_value, s.bezout_bound), (2, 4));
        assert!(s.passed(), "{s:?}");
    }

    #[test]
    fn square_with_dense_quadric() {
        let s = bkk_verify(&SQUARE, &dense_support(2), 5, 3).unwrap();
        assert_eq!(s.bkk_value, 4);
        assert!(s.passed(), "{s:?}");
        let lin = bkk_verify(&dense_support(1), &dense_support(1), 5, 3).unwrap();
        assert!(lin.passed() && lin.trials.iter().all(|t| t.count == Some(1)));
    }

    #[test]
    fn equal_polynomials_are_non_generic() {
        let (q, _) = random_system(&dense_support(2), &dense_support(2), 9);
        assert!(matches!(count_torus_zeros(&q, &q, DEFAULT_TOL), Err(Error::NonGeneric(_))));
    }

    #[test]
    fn resultant_of_lines() {
        let c = |re: f64| Complex64::new(re, 0.0);
        // y - x and y - 2x + 1 meet at x = 1.
        let q1 = SparseBivariatePoly::new([((0, 1), c(1.0)), ((1, 0), c(-1.0))]);
        let q2 = SparseBivariatePoly::new([((0, 1), c(1.0)), ((1, 0), c(-2.0)), ((0, 0), c(1.0))]);
        let r = resultant_y(&q1, &q2);
        assert_eq!(r.len(), 2);
        assert!((r[0] / r[1] + 1.0).norm() < 1e-15);
        let z = count_torus_zeros(&q1, &q2, DEFAULT_TOL).unwrap();
        assert_eq!(z.count, 1);
    }
}
