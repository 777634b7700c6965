//! Exact polytope primitives.

pub mod hull;
pub mod lp;
pub mod measure;
pub mod polytope;
pub mod vector;

pub use hull::{convex_hull, Facet, HullStructure, Ridge};
pub use measure::{Atom, DirectionalMeasure};
pub use polytope::{homothety_check, project_volume, Homothety, HomothetyCheck, Inradius, Support, VPolytope};
pub use vector::RationalVector;
