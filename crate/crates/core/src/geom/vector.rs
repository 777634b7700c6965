use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};

/// Smallest and largest ambient dimension accepted at the public boundary.
pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 6;

/// An exact point or (unnormalized) direction in R^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    /// Public constructor; enforces `2 <= n <= 6`.
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        check_dim(coords.len())?;
        Ok(Self(coords))
    }

    /// Internal constructor for projected coordinates (any dimension).
    pub(crate) fn raw(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&x| rational::int(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    /// The standard basis vector `e_{k+1}`.
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[k] = rational::int(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, other: &Self) -> Rational {
        linalg::dot(&self.0, &other.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(linalg::add(&self.0, &other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(linalg::sub(&self.0, &other.0))
    }

    pub fn scale(&self, t: &Rational) -> Self {
        Self(linalg::scale(&self.0, t))
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Squared Euclidean norm (exact).
    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn norm_f64(&self) -> f64 {
        rational::to_f64(&self.norm_sq()).sqrt()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational::to_f64).collect()
    }

    /// Primitive integer vector with the same direction.
    pub fn primitive(&self) -> Self {
        Self(linalg::to_rational(&linalg::primitive(&self.0)))
    }

    /// Index of the first nonzero coordinate.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|x| !x.is_zero())
    }

    /// The vector with coordinate `k` removed.
    pub fn drop_coord(&self, k: usize) -> Self {
        Self(
            self.0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, x)| x.clone())
                .collect(),
        )
    }

    pub fn max_abs(&self) -> Rational {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
    }
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational::format).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(rational::format).collect();
        parts.serialize(s)
    }
}
