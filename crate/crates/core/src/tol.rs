//! Numerical tolerances shared across the crate.

/// Width of the shell around a curve inside which a point counts as "on" it.
pub const TOL_ON: f64 = 1e-9;

/// Allowed deviation of |u| from 1 for a constructed point.
pub const TOL_UNIT: f64 = 1e-12;

/// Endpoint matching for piecewise curves.
pub const TOL_JOIN: f64 = 1e-10;

/// Absolute error target for contour integrals.
pub const QUAD_ABS: f64 = 1e-9;

/// Maximum number of panels for a single adaptive integral.
pub const QUAD_MAX_PANELS: usize = 1 << 16;

/// Agreement required between the quotient and expanded ratio forms.
pub const TOL_FORMS: f64 = 1e-9;

/// Equal-curvature check across edges of a partition.
pub const TOL_CURVATURE: f64 = 1e-10;

/// Relative tolerance for collecting tied winners.
pub const TOL_WINNER: f64 = 1e-9;

/// Iteration cap for golden-section searches.
pub const GOLDEN_MAX_ITER: usize = 200;
