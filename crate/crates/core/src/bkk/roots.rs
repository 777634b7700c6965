use num_complex::Complex64;

const MAX_ITERS: usize = 2000;
const STEP_TOL: f64 = 1e-14;

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// `|p(z)| / sum |c_k| |z|^k`, the relative backward error of `z` as a root.
pub fn backward_error(c: &[Complex64], z: Complex64) -> f64 {
    let scale: f64 = c.iter().rev().fold(0.0, |acc, a| acc * z.norm() + a.norm());
    if scale == 0.0 {
        0.0
    } else {
        horner(c, z).0.norm() / scale
    }
}

/// All roots of a polynomial with ascending coefficients and nonzero leading term,
/// by simultaneous Aberth–Ehrlich iteration followed by a Newton polish.
pub fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let radius = (c[0].norm() / lead.norm()).powf(1.0 / n as f64).max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITERS {
        let mut done = true;
        for k in 0..n {
            let (p, dp) = horner(c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                z[k] -= w;
                if w.norm() > STEP_TOL * z[k].norm().max(1.0) {
                    done = false;
                }
            }
        }
        if done {
            break;
        }
    }
    for r in &mut z {
        for _ in 0..3 {
            let (p, dp) = horner(c, *r);
            let step = p / dp;
            if step.is_finite() {
                *r -= step;
            }
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_known_roots() {
        let roots = [
            Complex64::new(1.0, 0.0),
            Complex64::new(-2.0, 0.5),
            Complex64::new(0.3, -1.7),
            Complex64::new(4.0, 4.0),
        ];
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            c = next;
        }
        let found = aberth(&c);
        for r in roots {
            let best = found.iter().map(|z| (z - r).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-12, "{r} missed by {best}");
        }
        assert!(found.iter().all(|z| backward_error(&c, *z) < 1e-14));
    }
}
