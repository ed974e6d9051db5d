//! Floating-point tolerances used by the non-exact steps of the library.
//!
//! Everything upstream of a Gauss sum or a Frobenius-Perron eigenvalue is
//! exact rational arithmetic, so these constants are the complete list of
//! places where a numerical comparison happens. They are deliberately public
//! so that tests assert against the same values the library uses.

/// Relative tolerance for the modulus of a Gauss sum.
///
/// For a non-degenerate form on a group of order `n` the Gauss sum has
/// modulus exactly `sqrt(n)`. The sum is evaluated in `f64` from at most a
/// few thousand unit-modulus terms, each carrying O(1e-16) rounding error,
/// so 1e-9 leaves six orders of magnitude of headroom while still catching
/// genuine degeneracy (which collapses the modulus by a factor of at least
/// `sqrt(2)`).
pub const GAUSS_MODULUS_TOL: f64 = 1e-9;

/// Absolute tolerance for recognising a normalised Gauss sum as an eighth
/// root of unity.
///
/// Distinct eighth roots are at distance `2 sin(pi/8) > 0.76` from each
/// other, so recognition is unambiguous for any tolerance below 0.38; 1e-6
/// keeps the match tight without being brittle.
pub const EIGHTH_ROOT_TOL: f64 = 1e-6;

/// Convergence threshold for power iteration on fusion matrices: iteration
/// stops once the Collatz-Wielandt bounds (min and max coordinate ratio)
/// agree to within this amount.
pub const POWER_ITERATION_TOL: f64 = 1e-12;

/// Iteration cap for power iteration. Matrices that fail to converge within
/// the cap (reducible or periodic ones) fall back to the regular-element
/// eigenvector route, which always converges.
pub const POWER_ITERATION_CAP: usize = 100_000;

/// Absolute tolerance for eigen-residuals of Frobenius-Perron data: the
/// dimension vector `d` must satisfy `N_j d = d_j d` coordinatewise within
/// this bound, and derived identities (sine ratios, multiplicativity) are
/// checked against it as well.
pub const FP_RESIDUAL_TOL: f64 = 1e-9;
