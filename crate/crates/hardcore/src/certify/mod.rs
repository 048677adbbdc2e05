//! Exact certification of polynomial sign claims on overlap regions.
//!
//! The pipeline has three layers: an exact polynomial ring over Q in the
//! four overlap variables ([`poly`]), a quadratic extension by the square
//! root of the elimination discriminant ([`radical`]) in which all the
//! Hessian quantities are derived symbolically ([`derive`]), and an
//! interval branch-and-bound prover ([`bnb`]) that certifies strict signs
//! on semialgebraic regions. [`registry`] names the concrete claims.

pub mod bnb;
pub mod derive;
pub mod interval;
pub mod poly;
pub mod radical;
pub mod registry;
