use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::{Signed, Zero};

use crate::bezout::{
    bezout_form, exact_detail, fenchel_form, ratio_b, v1, v2, BezoutReport, ReportKind, Witness,
};
use crate::error::{Error, Result};
use crate::geom::VPolytope;
use crate::mixed::mv;
use crate::par;
use crate::random::{random_body, trial_rng};
use crate::rational::{self, Rational};
use crate::value::Value;

/// Relative tolerance below which a negative Diskant margin is attributed to rounding.
pub const DISKANT_TOLERANCE: f64 = 1e-30;

fn exact_check(kind: ReportKind, value: Rational, margin: Rational) -> BezoutReport {
    let holds = !margin.is_negative();
    BezoutReport::new(kind, Value::Exact(value), Value::Exact(margin), holds)
}

/// Fenchel's inequality `F_{K,2}(A,B) >= 0`.
pub fn fenchel_check(a: &VPolytope, b: &VPolytope, k: &VPolytope) -> Result<BezoutReport> {
    let f = fenchel_form(a, b, k, &Rational::from_integer(2.into()))?;
    Ok(exact_check(ReportKind::Fenchel, f.clone(), f)
        .with_witness(vec![Witness::body("A", a), Witness::body("B", b), Witness::body("K", k)]))
}

/// The simplex inequalities `F_{S,1}(A_1, A_2) >= 0` and `G_{S,1}(A_1..A_n) >= 0` for a simplex `S`.
pub fn simplex_check(a: &[VPolytope], s: &VPolytope) -> Result<BezoutReport> {
    if !s.is_simplex() {
        return Err(Error::DegenerateInput("reference body is not a simplex".into()));
    }
    if a.len() < 2 {
        return Err(Error::Multiplicity {
            expected: s.dim(),
            found: a.len(),
        });
    }
    let one = Rational::from_integer(1.into());
    let f = fenchel_form(&a[0], &a[1], s, &one)?;
    let g = bezout_form(a, s, &one)?;
    let margin = f.clone().min(g.clone());
    let mut witness: Vec<Witness> = a
        .iter()
        .enumerate()
        .map(|(i, b)| Witness::body(format!("A{}", i + 1), b))
        .collect();
    witness.push(Witness::body("simplex", s));
    Ok(exact_check(ReportKind::SimplexBezout, margin.clone(), margin)
        .with_witness(witness)
        .detail("fenchel_form", exact_detail(&f))
        .detail("bezout_form", exact_detail(&g)))
}

/// `V(K,K)V(M,L) <= 2V(K,L)V(K,M) - V(L,L)V(K,M)^2/V(M,L)`, all with `K[n-2]` appended.
pub fn fenchel_sharp_check(k: &VPolytope, m: &VPolytope, l: &VPolytope) -> Result<BezoutReport> {
    let vml = v2(m, l, k)?;
    if vml.is_zero() {
        return Err(Error::DegenerateDenominator("V(M,L,K[n-2]) = 0".into()));
    }
    k.require_full_dim()?;
    let vkk = k.volume();
    let vkl = v1(l, k)?;
    let vkm = v1(m, k)?;
    let vll = v2(l, l, k)?;
    let lhs = &vkk * &vml;
    let rhs = Rational::from_integer(2.into()) * &vkl * &vkm - &vll * &vkm * &vkm / &vml;
    let margin = &rhs - &lhs;
    Ok(exact_check(ReportKind::FenchelSharp, lhs.clone(), margin)
        .with_witness(vec![Witness::body("K", k), Witness::body("M", m), Witness::body("L", l)])
        .detail("lhs", exact_detail(&lhs))
        .detail("rhs", exact_detail(&rhs)))
}

/// `V(B+C,B+C)/V(B+C,A) >= V(B,B)/V(B,A) + V(C,C)/V(C,A)`, all with `K[n-2]` appended.
pub fn fgm_check(a: &VPolytope, b: &VPolytope, c: &VPolytope, k: &VPolytope) -> Result<BezoutReport> {
    let bc = b.minkowski_sum(c)?;
    let quotient = |x: &VPolytope| -> Result<Rational> {
        let den = v2(x, a, k)?;
        if den.is_zero() {
            return Err(Error::DegenerateDenominator("V(X,A,K[n-2]) = 0".into()));
        }
        Ok(v2(x, x, k)? / den)
    };
    let lhs = quotient(&bc)?;
    let rhs = quotient(b)? + quotient(c)?;
    let margin = &lhs - &rhs;
    Ok(exact_check(ReportKind::Fgm, lhs.clone(), margin)
        .with_witness(vec![
            Witness::body("A", a),
            Witness::body("B", b),
            Witness::body("C", c),
            Witness::body("K", k),
        ])
        .detail("lhs", exact_detail(&lhs))
        .detail("rhs", exact_detail(&rhs)))
}

/// `V(K1,K2,rest)^2 >= V(K1,K1,rest) V(K2,K2,rest)`; `rest` has total multiplicity `n - 2`.
pub fn af_check(k1: &VPolytope, k2: &VPolytope, rest: &[(VPolytope, usize)]) -> Result<BezoutReport> {
    let with = |x: &VPolytope, y: &VPolytope| -> Result<Rational> {
        let mut t: Vec<(&VPolytope, usize)> = vec![(x, 1), (y, 1)];
        t.extend(rest.iter().map(|(b, m)| (b, *m)));
        mv(&t)
    };
    let mixed = with(k1, k2)?;
    let lhs = &mixed * &mixed;
    let rhs = with(k1, k1)? * with(k2, k2)?;
    let margin = &lhs - &rhs;
    let mut witness = vec![Witness::body("K1", k1), Witness::body("K2", k2)];
    witness.extend(rest.iter().enumerate().map(|(i, (b, _))| Witness::body(format!("rest{}", i + 1), b)));
    Ok(exact_check(ReportKind::AlexandrovFenchel, mixed, margin)
        .with_witness(witness)
        .detail("lhs", exact_detail(&lhs))
        .detail("rhs", exact_detail(&rhs)))
}

/// Planar bound `V(A,B) <= (|p1 A||p2 B| + |p2 A||p1 B|) / 2` with `p_i` the coordinate projections.
pub fn rectangle_lemma_check(a: &VPolytope, b: &VPolytope) -> Result<BezoutReport> {
    if a.dim() != 2 {
        return Err(Error::UnsupportedDimension(a.dim()));
    }
    a.check_same_dim(b.dim())?;
    let width = |p: &VPolytope, i: usize| {
        let xs = p.vertices().iter().map(|v| &v.coords()[i]);
        xs.clone().max().unwrap() - xs.min().unwrap()
    };
    let lhs = mv(&[(a, 1), (b, 1)])?;
    let rhs = (width(a, 0) * width(b, 1) + width(a, 1) * width(b, 0)) / Rational::from_integer(2.into());
    let margin = &rhs - &lhs;
    Ok(exact_check(ReportKind::Rectangle, lhs.clone(), margin)
        .with_witness(vec![Witness::body("A", a), Witness::body("B", b)])
        .detail("rhs", exact_detail(&rhs)))
}

struct Precision {
    bits: usize,
    rm: RoundingMode,
    cc: Consts,
}

impl Precision {
    fn new(digits: u32) -> Self {
        Precision {
            bits: (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64,
            rm: RoundingMode::ToEven,
            cc: Consts::new().expect("constant cache"),
        }
    }

    fn from_rational(&mut self, r: &Rational) -> BigFloat {
        let num = BigFloat::parse(&r.numer().to_string(), Radix::Dec, self.bits, self.rm, &mut self.cc);
        let den = BigFloat::parse(&r.denom().to_string(), Radix::Dec, self.bits, self.rm, &mut self.cc);
        num.div(&den, self.bits, self.rm)
    }

    fn root(&mut self, x: &BigFloat, num: usize, den: usize) -> BigFloat {
        let e = BigFloat::from_word(num as u64, self.bits).div(&BigFloat::from_word(den as u64, self.bits), self.bits, self.rm);
        x.pow(&e, self.bits, self.rm, &mut self.cc)
    }
}

fn big_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    format!("{x}").parse().unwrap_or(f64::NAN)
}

fn big_to_string(x: &BigFloat, digits: usize) -> String {
    let s = format!("{x}");
    match s.split_once('e') {
        Some((m, e)) if m.len() > digits + 2 => format!("{}e{}", &m[..digits + 2], e),
        _ => s,
    }
}

/// Diskant's inequality
/// `V(K[n-1],L)^{n/(n-1)} - V(K) V(L)^{1/(n-1)} >= (V(K[n-1],L)^{1/(n-1)} - r(K,L) V(L)^{1/(n-1)})^n`
/// evaluated with `digits` significant decimal digits, plus the exact bound `r(K,L) >= V(K) / (n V(K[n-1],L))`.
pub fn diskant_check(k: &VPolytope, l: &VPolytope, digits: u32) -> Result<BezoutReport> {
    k.check_same_dim(l.dim())?;
    if !k.is_full_dimensional() || !l.is_full_dimensional() {
        return Err(Error::DegenerateInput("both bodies must be full-dimensional".into()));
    }
    let n = k.dim();
    let v1 = v1(l, k)?;
    let vk = k.volume();
    let vl = l.volume();
    let inradius = k.inradius(l)?;
    let r = inradius.r.clone();

    let mut p = Precision::new(digits);
    let (bits, rm) = (p.bits, p.rm);
    let fv1 = p.from_rational(&v1);
    let fvk = p.from_rational(&vk);
    let fvl = p.from_rational(&vl);
    let fr = p.from_rational(&r);
    let v1_pow = p.root(&fv1, n, n - 1);
    let vl_root = p.root(&fvl, 1, n - 1);
    let v1_root = p.root(&fv1, 1, n - 1);
    let lhs = v1_pow.sub(&fvk.mul(&vl_root, bits, rm), bits, rm);
    let base = v1_root.sub(&fr.mul(&vl_root, bits, rm), bits, rm);
    let rhs = base.powi(n, bits, rm);
    let diff = lhs.sub(&rhs, bits, rm);
    let scale = {
        let (a, b) = (lhs.abs(), rhs.abs());
        let m = if a.cmp(&b).unwrap_or(0) >= 0 { a } else { b };
        if m.is_zero() {
            fv1.powi(n, bits, rm)
        } else {
            m
        }
    };
    let relative = big_to_f64(&diff.div(&scale, bits, rm));
    let holds = relative >= -DISKANT_TOLERANCE;

    let bound = &vk / (Rational::from_integer(n.into()) * &v1);
    let bound_holds = r >= bound;
    let mut report = BezoutReport::new(ReportKind::Diskant, Value::Exact(r.clone()), Value::Approx(relative), holds && bound_holds)
        .with_witness(vec![Witness::body("K", k), Witness::body("L", l)])
        .detail("lhs", big_to_string(&lhs, 40))
        .detail("rhs", big_to_string(&rhs, 40))
        .detail("margin", big_to_string(&diff, 40))
        .detail("precision_digits", digits)
        .detail("tolerance", DISKANT_TOLERANCE)
        .detail("inradius", exact_detail(&r))
        .detail("inradius_center", &inradius.center)
        .detail("inradius_lower_bound", exact_detail(&bound))
        .detail("inradius_bound_holds", bound_holds)
        .detail("diskant_holds", holds);
    report.certified = false;
    Ok(report)
}

/// Samples tuples and checks `ratio_b <= n`.
///
/// The candidates are the diagonal tuple `(K, ..., K)`, every `n`-subset of
/// edge directions of `K` (each choice of first segment), and `samples`
/// random tuples. Tuples with a vanishing denominator are skipped.
pub fn xiao_bound_check(k: &VPolytope, samples: usize, seed: u64) -> Result<BezoutReport> {
    k.require_full_dim()?;
    let n = k.dim();
    let mut tuples: Vec<(Vec<VPolytope>, Vec<Witness>)> = vec![(vec![k.clone(); n], vec![Witness::body("K", k); n])];

    let dirs = k.edge_directions();
    for subset in combinations(dirs.len(), n) {
        for first in 0..n {
            let mut order = subset.clone();
            order.swap(0, first);
            let bodies = order.iter().map(|&i| VPolytope::segment(&dirs[i])).collect::<Result<Vec<_>>>()?;
            let witness = order.iter().map(|&i| Witness::Segment { direction: dirs[i].clone() }).collect();
            tuples.push((bodies, witness));
        }
    }
    let structured = tuples.len();
    for s in 0..samples {
        let mut rng = trial_rng(seed, s as u64);
        let bodies: Vec<VPolytope> = (0..n).map(|_| random_body(&mut rng, n)).collect();
        let witness = bodies
            .iter()
            .enumerate()
            .map(|(i, b)| Witness::body(format!("sample {s} body {}", i + 1), b))
            .collect();
        tuples.push((bodies, witness));
    }

    let ratios: Vec<Option<Rational>> = par::map(&tuples, |(bodies, _)| match ratio_b(bodies, k) {
        Ok(r) => Some(r),
        Err(Error::DegenerateDenominator(_)) => None,
        Err(e) => panic!("ratio evaluation failed: {e}"),
    });
    let mut best: Option<(usize, &Rational)> = None;
    for (i, r) in ratios.iter().enumerate() {
        if let Some(r) = r {
            if best.is_none_or(|(_, b)| r > b) {
                best = Some((i, r));
            }
        }
    }
    let (idx, max) = best.expect("the diagonal tuple always has a positive denominator");
    let bound = Rational::from_integer(n.into());
    let violations: Vec<usize> = ratios
        .iter()
        .enumerate()
        .filter(|(_, r)| r.as_ref().is_some_and(|r| *r > bound))
        .map(|(i, _)| i)
        .collect();
    let margin = &bound - max;
    Ok(BezoutReport::new(ReportKind::Xiao, Value::Exact(max.clone()), Value::Exact(margin), violations.is_empty())
        .with_witness(tuples[idx].1.clone())
        .detail("bound", n)
        .detail("evaluated", ratios.iter().filter(|r| r.is_some()).count())
        .detail("skipped_degenerate", ratios.iter().filter(|r| r.is_none()).count())
        .detail("edge_direction_tuples", structured - 1)
        .detail("random_samples", samples)
        .detail("violations", violations)
        .detail("seed", seed)
        .detail("max_ratio_decimal", rational::to_f64(max)))
}

pub(crate) fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > m {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < m - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::RationalVector;
    use crate::rational::int;

    fn seg(c: &[i64]) -> VPolytope {
        VPolytope::segment(&RationalVector::from_ints(c)).unwrap()
    }

    #[test]
    fn diskant_equality_and_margin() {
        let c = VPolytope::cube(3).unwrap();
        let s = VPolytope::simplex(3).unwrap();
        let same = diskant_check(&c, &c, 60).unwrap();
        assert!(same.holds);
        assert!(same.margin.to_f64().abs() < 1e-40);
        let r = diskant_check(&c, &s, 60).unwrap();
        assert!(r.holds && r.margin.to_f64() > 0.0);
        assert_eq!(r.value, Value::Exact(int(1)));
    }

    #[test]
    fn xiao_on_cube_and_simplex() {
        let c = VPolytope::cube(3).unwrap();
        let r = xiao_bound_check(&c, 5, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.value, Value::Exact(int(3)));
        let s = VPolytope::simplex(3).unwrap();
        let r = xiao_bound_check(&s, 5, 1).unwrap();
        assert!(r.holds);
        assert!(r.value.to_f64() <= 1.0);
    }

    #[test]
    fn trivial_equalities() {
        let c = VPolytope::cube(3).unwrap();
        let r = fenchel_sharp_check(&c, &c, &c).unwrap();
        assert_eq!(r.margin, Value::Exact(int(0)));
        let b = seg(&[1, 2, 0]);
        let a = VPolytope::simplex(3).unwrap();
        assert_eq!(fgm_check(&a, &a, &a, &a).unwrap().margin, Value::Exact(int(0)));
        assert_eq!(fgm_check(&a, &c, &c, &a).unwrap().margin, Value::Exact(int(0)));
        assert!(fenchel_check(&b, &a, &c).unwrap().holds);
    }

    #[test]
    fn rectangle_equalities() {
        let sq = VPolytope::cube(2).unwrap();
        let r = rectangle_lemma_check(&sq, &sq).unwrap();
        assert_eq!((r.value.clone(), r.margin.clone()), (Value::Exact(int(1)), Value::Exact(int(0))));
        let r = rectangle_lemma_check(&seg(&[1, 0]), &seg(&[0, 1])).unwrap();
        assert_eq!(r.margin, Value::Exact(int(0)));
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(6, 3).len(), 20);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }
}
