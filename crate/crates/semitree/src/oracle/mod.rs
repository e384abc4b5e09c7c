//! Brute-force ground truth for the closed formulas: exact power series of the
//! distance chain, Monte Carlo walks, vertex-level eigen-residuals on explicit
//! trees, and `ℓ^p` growth diagnostics.
//!
//! The distance from a fixed vertex is itself a Markov chain (a birth–death
//! chain whose step probabilities alternate with the parity of the distance),
//! so none of these oracles needs the exponentially large vertex set except
//! [`eigen_residual`], which deliberately does.

mod lp;
mod monte_carlo;
mod residual;
mod series;

pub use lp::{log_abs_profile, lp_partial_sums, lp_partial_sums_with_margin, LpDiagnostic, LpVerdict};
pub use monte_carlo::{monte_carlo_hitting, McEstimate, BLOCK_WALKS, DEFAULT_CAP, ESCAPE_RADIUS};
pub use residual::{eigen_residual, eigen_residuals, eigen_residuals_on};
pub use series::{
    f_series, first_passage_coefficients, green_series, return_probabilities, BirthDeathChain,
    SeriesEstimate, MAX_SERIES_TERMS,
};
