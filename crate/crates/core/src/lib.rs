//! Exact computation of elliptic genera, twisted Dirac and signature
//! indices, Lefschetz localization sums and the lattice/code combinatorics
//! used to derive vanishing of leading elliptic-genus coefficients from
//! fixed-point data.

pub mod app;
pub mod cusp;
mod error;
pub mod genus;
pub mod localize;
pub mod manifold;
pub mod obstruct;
pub mod report;
pub mod series;
pub mod verify;

pub use error::Error;
