//! Dense exact simplex method for `max c.z  s.t.  A z <= b, z >= 0` with `b >= 0`.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: Rational,
    pub primal: Vec<Rational>,
    /// Multipliers of the constraint rows; nonnegative, with `A^T y >= c` and `b.y = value`.
    pub dual: Vec<Rational>,
}

/// Solves the program with the slack basis as the starting point, using
/// Bland's rule so that degenerate pivots cannot cycle.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(b.iter().all(|x| !x.is_negative()));
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, bi))| {
            let mut r = vec![Rational::zero(); width];
            r[..n].clone_from_slice(row);
            r[n + i] = Rational::from_integer(1.into());
            r[width - 1] = bi.clone();
            r
        })
        .collect();
    // Objective row holds reduced costs -c; optimal once every entry is >= 0.
    let mut obj = vec![Rational::zero(); width];
    for (o, ci) in obj.iter_mut().zip(c) {
        *o = -ci.clone();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let Some(enter) = (0..width - 1).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            return LpOutcome::Unbounded;
        };
        let pivot = t[row][enter].clone();
        for x in t[row].iter_mut() {
            *x /= &pivot;
        }
        let pivot_row = t[row].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != row && !r[enter].is_zero() {
                let f = r[enter].clone();
                for (x, p) in r.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        basis[row] = enter;
    }

    let mut primal = vec![Rational::zero(); n];
    for (i, &v) in basis.iter().enumerate() {
        if v < n {
            primal[v] = t[i][width - 1].clone();
        }
    }
    LpOutcome::Optimal(LpSolution {
        value: obj[width - 1].clone(),
        primal,
        dual: obj[n..n + m].to_vec(),
    })
}
