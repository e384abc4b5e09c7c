//! Numerical tolerances shared by the library, the oracles and the tests.

/// Relative residual for algebraic identities away from branch points.
pub const IDENTITY: f64 = 1e-10;

/// Relative residual for identities within [`NEAR_BRANCH_RADIUS`] of `{0, ±a, ±b}`.
pub const IDENTITY_NEAR_BRANCH: f64 = 1e-7;

/// Distance from a branch point inside which [`IDENTITY_NEAR_BRANCH`] applies.
pub const NEAR_BRANCH_RADIUS: f64 = 1e-3;

/// Closed-form spherical functions hand over to the recurrence when `|B ∓ 1|` is below this.
pub const DEGENERATE_SWITCH: f64 = 1e-5;

/// Relative distance at which `γ` is taken to be exactly an endpoint `±a`, `±b`.
pub const ENDPOINT_SNAP: f64 = 4.0 * f64::EPSILON;

/// Relative width of the "boundary" band in spectrum membership tests.
pub const BOUNDARY: f64 = 1e-12;

/// Default `|r − 1|` band in which an `ℓ^p` growth diagnostic is inconclusive.
pub const LP_MARGIN: f64 = 0.02;

/// `|x − y| ≤ tol · max(|x|, |y|)`, with exact equality always accepted.
pub fn rel_close(x: num_complex::Complex64, y: num_complex::Complex64, tol: f64) -> bool {
    rel_diff(x, y) <= tol
}

/// `|x − y| / max(|x|, |y|)`, zero when both vanish.
pub fn rel_diff(x: num_complex::Complex64, y: num_complex::Complex64) -> f64 {
    let d = (x - y).norm();
    if d == 0.0 {
        return 0.0;
    }
    d / x.norm().max(y.norm())
}
