//! Metrics on density spaces of truncated C*-algebra models.
//!
//! The crate computes and cross-validates four metrics on spaces of
//! noncommutative probability densities:
//!
//! - the fidelity and the Bures distance sqrt(1 - F),
//! - the L1 trace distance tau(|x - y|) with its Fuchs-van de Graaf bracket
//!   against the Bures distance,
//! - the sup (C*-norm) distance,
//! - a Monge-Kantorovich distance: the supremum of |phi_x(g) - phi_y(g)|
//!   over a Lipschitz ball cut out by tail-average conditional expectations,
//!   solved as a linear program.
//!
//! Two concrete models carry the computations: matrix-valued functions on
//! the quantized interval (finitely many sites with geometric weights 2^-n,
//! plus the point at infinity) in [`model`], and piecewise-linear densities
//! on an interval in [`continuum`]. Every metric comparison that is a
//! theorem for the untruncated spaces is exercised numerically here:
//! orthogonal point masses at Bures distance one that are nonetheless
//! Monge-Kantorovich Cauchy, closed-form fidelity families against
//! quadrature, the Hellinger identity, and a divergence witness for the
//! unrestricted Monge-Kantorovich metric.
//!
//! Start with the runnable examples (`cargo run --example fidelity_family`)
//! or the `dm` binary, which drives every reproduction from the command
//! line.

pub mod bures;
pub mod cli;
pub mod continuum;
pub mod error;
pub mod linalg;
pub mod lpsolve;
pub mod model;
pub mod qmetric;
pub mod report;
pub mod repro;
pub mod rng;
pub mod sweep;
pub mod tol;

pub use error::{Error, Result};
