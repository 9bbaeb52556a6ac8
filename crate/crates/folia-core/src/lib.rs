//! Exact symbolic toolkit for singular holomorphic foliations on surfaces:
//! local germs and their indices, blow-ups and reduction of singularities,
//! intersection theory on the resulting models, and the Riccati bookkeeping.
//!
//! Everything is computed over the rationals with no floating point; answers
//! that depend on truncation orders are refined adaptively and certified or
//! reported as out of reach.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod blowup;
pub mod germ;
pub mod models;
pub mod surface;

pub use algebra::{BiPoly, Branch, Rat, TruncSeries, UniPoly};
pub use germ::FoliationGerm;

#[cfg(test)]
pub(crate) fn poly(s: &str) -> BiPoly {
    s.parse().unwrap()
}
