//! Numeric defaults shared by the library and any front end.
//!
//! Every tolerance or budget used elsewhere is named exactly once here, so
//! callers (and tests) that want tighter settings have a single place to
//! look and the command-line defaults cannot drift from the library's.

/// Largest accepted matrix dimension. Cycle enumeration is exponential in
/// the worst case; this keeps inputs at desk scale.
pub const MAX_DIM: usize = 64;

/// Cap on the number of simple cycles enumerated before giving up.
pub const CYCLE_BUDGET: usize = 1_000_000;

/// Required relative residual for every eigenvalue returned by the dense
/// solver: `‖Mv − λv‖₂ / ‖M‖_F` for an associated unit vector `v`.
pub const EIGEN_RESIDUAL_BOUND: f64 = 1e-8;

/// Required relative residual for every polynomial root: `|p(r)|` scaled by
/// the evaluation magnitude of `p` near `r`.
pub const POLY_RESIDUAL_BOUND: f64 = 1e-8;

/// Complex eigenvalues of a real matrix must pair up with their conjugates
/// within this tolerance.
pub const CONJUGATE_TOL: f64 = 1e-9;

/// QR iteration budget, in sweeps per matrix dimension.
pub const EIGEN_SWEEPS_PER_DIM: usize = 100;

/// Half-width of the marginal band when classifying a spectrum in Monte
/// Carlo runs: `max Re λ` within ±this counts as neither stable nor
/// unstable.
pub const CLASSIFY_TOL: f64 = 1e-7;

/// Default magnitude distribution bounds (log-uniform over two decades).
pub const DIST_LO: f64 = 0.1;
/// See [`DIST_LO`].
pub const DIST_HI: f64 = 10.0;

/// Default gain sweep for locus traces: log-spaced magnitudes applied with
/// both signs, plus zero.
pub const GAIN_SWEEP_LO: f64 = 1e-3;
/// See [`GAIN_SWEEP_LO`].
pub const GAIN_SWEEP_HI: f64 = 1e6;
/// Points per sign in the default gain sweep.
pub const GAIN_SWEEP_POINTS: usize = 121;

/// Two branch assignments closer than this (in total matching distance) are
/// reported as ambiguous rather than resolved silently.
pub const BRANCH_AMBIGUITY_TOL: f64 = 1e-12;
