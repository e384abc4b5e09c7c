//! Harmonic analysis on semi-homogeneous trees `T(q₊, q₋)`.
//!
//! The crate evaluates the analytic continuations of the nearest-neighbour
//! hitting probabilities `F±(γ)`, the Poisson and generalized Poisson kernels,
//! spherical functions (three independent evaluators) and the `ℓ^p` spectra of
//! the Laplace operator `μ₁`. Every closed formula is paired with a brute-force
//! oracle in [`oracle`].
//!
//! ```
//! use semitree::{kernels, Parity, TreeParams};
//! use num_complex::Complex64;
//!
//! let t = TreeParams::new(5, 2).unwrap();
//! let f = kernels::hitting_f(&t, Complex64::new(1.0, 0.0), Parity::Plus).unwrap();
//! assert!((f.re - 0.25).abs() < 1e-15);
//! ```

pub mod cli;
pub mod error;
pub mod kernels;
pub mod oracle;
mod params;
pub mod spectra;
pub mod spherical;
pub mod tol;
pub mod tree;

pub use error::{Error, Result};
pub use params::{Parity, TreeParams};

pub use num_complex::Complex64;
