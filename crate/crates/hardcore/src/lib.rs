//! Verification and experimentation toolkit for the hard-core lattice gas near
//! its uniqueness phase transition on random bipartite regular graphs.
//!
//! The crate provides:
//!
//! - exact partition functions and bivariate independence polynomials on small
//!   graphs ([`exact`]), including the vertex-blowup identity
//!   `Z_G((1+λ)^k − 1) = Z_H(λ)`;
//! - critical activities and fixed points of the occupancy recursion on regular
//!   trees ([`tree`]);
//! - the first- and second-moment exponent surfaces Φ₁ and Φ₂ together with
//!   their gradients, Hessian quantities and a numerical maximizer check
//!   ([`surface`]);
//! - rigorous sign certification of the polynomial inequalities behind the
//!   concavity argument, by interval branch-and-bound with outward rounding
//!   ([`certify`]);
//! - Glauber dynamics simulation and exact bottleneck ratios witnessing
//!   bimodality at desk scale ([`glauber`]).

pub mod certify;
pub mod exact;
pub mod glauber;
pub mod graph;
pub mod surface;
pub mod tree;
