//! Exact arithmetic kernel: rationals, Gaussian rationals, the polynomial
//! ring Q[δ, ε], truncated Laurent series and truncated multivariate
//! polynomials.

mod delta_eps;
mod gaussian;
mod laurent;
pub mod rational;
mod ring;
mod truncpoly;

pub use delta_eps::DeltaEpsilon;
pub use gaussian::Gaussian;
pub use laurent::{Laurent, QSeries};
pub use rational::Rational;
pub use ring::Ring;
pub use truncpoly::{PolySpace, TruncPoly};

use thiserror::Error;

/// Default precision for q-expansions: coefficients through `q^6`.
pub const DEFAULT_Q_ORDER: u32 = 6;

/// Exclusive `s`-order for a series known through `q^qorder`.
pub fn s_order(qorder: u32) -> i64 {
    2 * qorder as i64 + 1
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation caps differ: {left} vs {right}")]
    CapMismatch { left: String, right: String },
    #[error("leading coefficient is not a unit")]
    NonUnit,
    #[error("argument must have zero constant term")]
    NonzeroConstant,
    #[error("exact series must be truncated before this operation")]
    NeedsTruncation,
    #[error("series must start with s + O(s^2)")]
    NotNormalized,
    #[error("leading coefficient has no exact root in the coefficient ring")]
    NoExactRoot,
    #[error("invalid exponent: {0}")]
    BadExponent(String),
    #[error("integration would produce a logarithm")]
    LogarithmicTerm,
    #[error("series known to order {have}, need {need}")]
    InsufficientPrecision { have: i64, need: i64 },
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}
