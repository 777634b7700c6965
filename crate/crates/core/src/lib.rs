//! Exact mixed volumes of rational polytopes and the inequalities built on them.

pub mod bezout;
pub mod bkk;
pub mod error;
pub mod exclusion;
pub mod geom;
pub mod io;
pub mod linalg;
pub mod mixed;
pub mod par;
pub mod random;
pub mod rational;
pub mod value;

pub use error::{Error, Result};
pub use geom::{DirectionalMeasure, RationalVector, VPolytope};
pub use rational::Rational;
pub use value::Value;
