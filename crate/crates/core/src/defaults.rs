//! Central table of numeric defaults.
//!
//! Every tolerance, grid size and range that the CLI and the verification
//! suites rely on lives here, so a report is reproducible from the config
//! alone.

/// Target absolute tolerance for scalar special-function evaluation.
pub const EVAL_TOL: f64 = 1e-12;

/// Default side length of the offset midpoint quadrature grid on `[0,1)^2`.
pub const QUAD_MIDPOINT_N: usize = 128;

/// Default side length of the Gauss-Legendre quadrature grid.
pub const QUAD_GAUSS_N: usize = 64;

/// Half-range of the tau grid used for spectral synthesis.
pub const TAU_MAX: f64 = 40.0;

/// Step of the tau grid used for spectral synthesis.
pub const TAU_STEP: f64 = 0.05;

/// Finite-difference step for `Delta_L`.
pub const FD_STEP: f64 = 1e-3;

/// Maximum depth of lazily composed nilmanifold evaluators.
pub const DEPTH_CAP: u32 = 16;

/// Number of random samples drawn by the twisted-periodicity validator.
pub const VALIDATOR_SAMPLES: usize = 64;

/// Residual above which the twisted-periodicity validator rejects.
pub const VALIDATOR_TOL: f64 = 1e-6;

/// Seed for all deterministic sampling (validators, test grids).
pub const DEFAULT_SEED: u64 = 0x4c45_5243;

/// Fixed (a, c) evaluation points used by the verification suites.
pub const SEEDED_POINTS: [(f64, f64); 3] = [(0.3, 0.7), (0.45, 0.2), (0.8, 0.35)];

/// Normalization constant of the Mellin-Plancherel measure `d tau / MELLIN_MEASURE`.
///
/// `4 pi` is the constant under which the inversion formula and Parseval
/// identity for the two-sided transforms close up exactly; see
/// `spectral::MELLIN_MEASURE_ALT` for the alternative constant that is also
/// reported by the spectral suite.
pub const MELLIN_MEASURE: f64 = 4.0 * std::f64::consts::PI;

/// Alternative normalization constant `2 sqrt(2) pi`, reported alongside
/// [`MELLIN_MEASURE`] by the spectral suite for comparison.
pub const MELLIN_MEASURE_ALT: f64 = 2.0 * std::f64::consts::SQRT_2 * std::f64::consts::PI;
