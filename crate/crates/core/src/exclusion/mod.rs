//! Excluding conditions for minimizers of the two-body Bezout constant.

mod characterize;
mod isop;
mod perturb;

pub use characterize::{
    sigma_proportionality, support_equality_check, weakly_decomposable_polytope, AtomMismatch, SigmaLevel, SigmaReport,
    WeakDecomposition,
};
pub use isop::{affine_isop_search, classify_omega, isop, isop_condition, AffineSearch, FacetIsop, IsopReport, OmegaCensus};
pub use perturb::{perturb_facet, stability_interval, PerturbedPolytope, StabilityInterval};
pub(crate) use perturb::{perturb_with, Arrangement};
