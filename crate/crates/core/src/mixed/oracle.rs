use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::linalg;
use crate::mixed::{multinomial, BodyTuple};
use crate::rational::Rational;

/// Mixed volume read off the volume polynomial `Vol(t_1 K_1 + ... + t_m K_m)`.
///
/// Sets `t_1 = 1`, samples the remaining variables on the shifted principal
/// lattice `{1 + b : b >= 0, |b| <= n}` (unisolvent for degree <= n),
/// solves for all coefficients exactly and divides the target one by its
/// multinomial factor. Shares no code with the polarization engine beyond
/// hulls and volumes.
pub fn mixed_volume_oracle(tuple: &BodyTuple) -> Result<Rational> {
    let n = tuple.dim();
    tuple.require_total(n)?;
    let entries = tuple.entries();
    let m = entries.len();
    let exps = exponents(m - 1, n);
    let mut matrix = Vec::with_capacity(exps.len());
    let mut values = Vec::with_capacity(exps.len());
    for node in &exps {
        let t: Vec<BigInt> = node.iter().map(|&b| BigInt::from(b + 1)).collect();
        let mut body = entries[0].0.clone();
        for (i, ti) in t.iter().enumerate() {
            let scaled = entries[i + 1].0.scale(&Rational::from_integer(ti.clone()));
            body = body.minkowski_sum(&scaled)?;
        }
        values.push(body.volume());
        matrix.push(
            exps.iter()
                .map(|e| {
                    let p: BigInt = e.iter().zip(&t).map(|(&k, ti)| num_traits::pow(ti.clone(), k)).product();
                    Rational::from_integer(p)
                })
                .collect::<Vec<_>>(),
        );
    }
    let coeffs = linalg::solve(&matrix, &values).expect("principal lattice is unisolvent");
    let target: Vec<usize> = entries[1..].iter().map(|e| e.1).collect();
    let idx = exps.iter().position(|e| *e == target).expect("target monomial present");
    let parts: Vec<usize> = entries.iter().map(|e| e.1).collect();
    let c = &coeffs[idx];
    if c.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(c / Rational::from_integer(multinomial(&parts)))
}

/// All exponent vectors of length `k` with total degree at most `d`.
fn exponents(k: usize, d: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in exponents(k - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{RationalVector, VPolytope};
    use crate::rational::frac;

    #[test]
    fn planar_segments() {
        let a = VPolytope::segment(&RationalVector::from_ints(&[1, 0])).unwrap();
        let b = VPolytope::segment(&RationalVector::from_ints(&[0, 1])).unwrap();
        let t = BodyTuple::of(&[&a, &b]).unwrap();
        assert_eq!(mixed_volume_oracle(&t).unwrap(), frac(1, 2));
    }

    #[test]
    fn simplex_diagonal() {
        let s = VPolytope::simplex(3).unwrap();
        let t = BodyTuple::new(vec![(s, 3)]).unwrap();
        assert_eq!(mixed_volume_oracle(&t).unwrap(), frac(1, 6));
    }

    #[test]
    fn exponent_count() {
        assert_eq!(exponents(2, 3).len(), 10);
        assert_eq!(exponents(3, 4).len(), 35);
    }
}
