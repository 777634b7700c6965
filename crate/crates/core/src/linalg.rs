//! Dense exact linear algebra over the rationals and integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], t: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * t).collect()
}

/// Reduced row echelon form in place, pivoting only in the first `ncols` columns; returns the pivot columns.
fn echelon(m: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let width = m[row].len();
        let inv = m[row][col].recip();
        for c in col..width {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..width {
                    let delta = &f * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m = rows.to_vec();
    echelon(&mut m, ncols).len()
}

/// Dimension of the affine hull of `points` (−1 is never returned; empty input gives 0).
pub fn affine_rank(points: &[Vec<Rational>]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let diffs: Vec<_> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    rank(&diffs)
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = echelon(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn det(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    let mut m = matrix.to_vec();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        d *= &m[col][col];
        let inv = m[col][col].recip();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    d
}

/// Solves the square system `a x = b`; `None` when singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut m, n);
    if pivots.len() < n {
        return None;
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn det_int(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = matrix.to_vec();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Scales a rational vector to the primitive integer vector with the same direction.
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    primitive_int(ints)
}

pub fn primitive_int(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

pub fn to_rational(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

pub fn norm_f64(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn determinants_agree() {
        let a = m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        let ai: Vec<Vec<BigInt>> = a
            .iter()
            .map(|r| r.iter().map(|x| x.to_integer()).collect())
            .collect();
        assert_eq!(det(&a), int(6));
        assert_eq!(det_int(&ai), BigInt::from(6));
        let s = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&s), int(-1));
    }

    #[test]
    fn solve_and_nullspace() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[int(3), int(1)]).unwrap(), vec![int(2), int(1)]);
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[int(1), int(2)]).is_none());
        let ns = nullspace(&m(&[&[1, 1, 1]]), 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(dot(&v, &[int(1), int(1), int(1)]).is_zero());
        }
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive(&[frac(1, 2), frac(3, 4), int(0)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(3), BigInt::from(0)]);
        assert_eq!(affine_rank(&m(&[&[0, 0], &[1, 0], &[2, 0]])), 1);
    }
}
