//! Mixed volumes of rational polytopes.

mod measure;
mod oracle;
mod segments;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geom::VPolytope;
use crate::par;
use crate::rational::{binomial, factorial, Rational};

pub use measure::{first_mixed_volume, mixed_surface_measure};
pub use oracle::mixed_volume_oracle;
pub use segments::{mixed_volume_segments, mixed_volume_segments_f64, SegmentKernel};

/// Bodies with multiplicities, the argument list of a mixed volume.
///
/// Equal bodies are merged, so each entry holds a distinct polytope.
#[derive(Clone, Debug, PartialEq)]
pub struct BodyTuple {
    dim: usize,
    entries: Vec<(VPolytope, usize)>,
}

impl BodyTuple {
    pub fn new(entries: Vec<(VPolytope, usize)>) -> Result<Self> {
        let dim = entries.first().ok_or(Error::Empty)?.0.dim();
        let mut merged: Vec<(VPolytope, usize)> = Vec::with_capacity(entries.len());
        for (body, mult) in entries {
            body.check_same_dim(dim)?;
            if mult == 0 {
                continue;
            }
            match merged.iter_mut().find(|(b, _)| *b == body) {
                Some(slot) => slot.1 += mult,
                None => merged.push((body, mult)),
            }
        }
        if merged.is_empty() {
            return Err(Error::Empty);
        }
        Ok(BodyTuple { dim, entries: merged })
    }

    /// Each body once.
    pub fn of(bodies: &[&VPolytope]) -> Result<Self> {
        Self::new(bodies.iter().map(|b| ((*b).clone(), 1)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(VPolytope, usize)] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    /// Applies a linear map to every body.
    pub fn linear_image(&self, rows: &[Vec<Rational>]) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|(b, m)| Ok((b.linear_image(rows)?, *m)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    fn require_total(&self, expected: usize) -> Result<()> {
        let found = self.total();
        if found != expected {
            return Err(Error::Multiplicity { expected, found });
        }
        Ok(())
    }
}

/// Exact mixed volume by the signed polarization identity
/// `n! V = sum over count vectors c != 0 of (-1)^(n-|c|) prod C(a_i, c_i) Vol(sum c_i K_i)`.
pub fn mixed_volume(tuple: &BodyTuple) -> Result<Rational> {
    tuple.require_total(tuple.dim)?;
    Ok(polarize(tuple.entries(), tuple.dim))
}

/// Shorthand for `mixed_volume` over borrowed bodies with multiplicities.
pub fn mv(bodies: &[(&VPolytope, usize)]) -> Result<Rational> {
    mixed_volume(&BodyTuple::new(bodies.iter().map(|(b, m)| ((*b).clone(), *m)).collect())?)
}

/// Polarization without dimension bookkeeping; `n` is the ambient dimension of the bodies.
pub(crate) fn polarize(entries: &[(VPolytope, usize)], n: usize) -> Rational {
    if let [(body, _)] = entries {
        return body.volume();
    }
    let mults: Vec<usize> = entries.iter().map(|e| e.1).collect();
    // Count vectors grouped by |c|; each sum is built from one already known at the previous level.
    let mut levels: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
    let mut c = vec![0usize; mults.len()];
    loop {
        let mut i = 0;
        while i < c.len() && c[i] == mults[i] {
            c[i] = 0;
            i += 1;
        }
        if i == c.len() {
            break;
        }
        c[i] += 1;
        levels[c.iter().sum::<usize>()].push(c.clone());
    }

    let mut sums: HashMap<Vec<usize>, VPolytope> = HashMap::new();
    let mut total = Rational::zero();
    for level in levels.iter().skip(1) {
        let built: Vec<VPolytope> = par::map(level, |c| {
            let nonzero: Vec<usize> = (0..c.len()).filter(|&i| c[i] > 0).collect();
            if let [i] = nonzero[..] {
                return entries[i].0.scale(&Rational::from_integer(c[i].into()));
            }
            let j = *nonzero.last().unwrap();
            let mut prev = c.clone();
            prev[j] -= 1;
            sums[&prev].minkowski_sum(&entries[j].0).expect("bodies share a dimension")
        });
        for (c, body) in level.iter().zip(built) {
            let size: usize = c.iter().sum();
            let coeff: BigInt = c.iter().zip(&mults).map(|(&ci, &ai)| binomial(ai, ci)).product();
            let term = body.volume() * Rational::from_integer(coeff);
            if (n - size) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
            sums.insert(c.clone(), body);
        }
    }
    total / Rational::from_integer(factorial(n))
}

/// Multinomial coefficient `n! / prod a_i!`.
pub(crate) fn multinomial(parts: &[usize]) -> BigInt {
    let n: usize = parts.iter().sum();
    parts
        .iter()
        .fold(factorial(n), |acc, &a| acc / factorial(a))
        .max(BigInt::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::RationalVector;
    use crate::rational::{frac, int};

    fn seg(c: &[i64]) -> VPolytope {
        VPolytope::segment(&RationalVector::from_ints(c)).unwrap()
    }

    #[test]
    fn cube_with_segments() {
        let c = VPolytope::cube(3).unwrap();
        let l1 = seg(&[1, 0, 0]);
        let l2 = seg(&[0, 1, 0]);
        assert_eq!(mv(&[(&c, 2), (&l1, 1)]).unwrap(), frac(1, 3));
        assert_eq!(mv(&[(&c, 1), (&l1, 1), (&l2, 1)]).unwrap(), frac(1, 6));
    }

    #[test]
    fn diagonal_and_planar() {
        let s = VPolytope::simplex(3).unwrap();
        assert_eq!(mv(&[(&s, 3)]).unwrap(), frac(1, 6));
        assert_eq!(mv(&[(&seg(&[1, 0]), 1), (&seg(&[0, 1]), 1)]).unwrap(), frac(1, 2));
        let d = VPolytope::simplex(2).unwrap();
        assert_eq!(mv(&[(&d.scale(&int(2)), 1), (&d.scale(&int(3)), 1)]).unwrap(), int(3));
    }

    #[test]
    fn multiplicity_errors() {
        let c = VPolytope::cube(3).unwrap();
        assert!(matches!(
            mv(&[(&c, 2)]),
            Err(Error::Multiplicity { expected: 3, found: 2 })
        ));
        let t = BodyTuple::new(vec![(c.clone(), 1), (c.clone(), 2)]).unwrap();
        assert_eq!(t.entries().len(), 1);
        assert!(BodyTuple::new(vec![(c, 1), (VPolytope::cube(2).unwrap(), 2)]).is_err());
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[1, 1, 1]), BigInt::from(6));
        assert_eq!(multinomial(&[2, 1]), BigInt::from(3));
        assert_eq!(multinomial(&[0, 3]), BigInt::from(1));
    }
}
