//! Exact arithmetic layer: rationals, uni/bivariate polynomials, truncated
//! power series, branch parametrizations and intersection multiplicities.

pub mod bipoly;
pub mod branch;
pub mod multiplicity;
pub mod rat;
pub mod series;
pub mod unipoly;

pub use bipoly::{BiPoly, ParsePolyError};
pub use branch::{Branch, BranchAxis, BranchError, NodeError, SmoothnessCertificate};
pub use multiplicity::{local_intersection_multiplicity, Multiplicity};
pub use rat::Rat;
pub use series::{eval_bipoly, series_residue, SeriesError, TruncSeries};
pub use unipoly::UniPoly;
