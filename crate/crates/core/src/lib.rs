//! Numerical inverse-scattering toolkit for the reverse-space nonlocal Hirota
//! equation
//!
//! ```text
//! i u_t + alpha [u_xx - 2 kappa u*(-x,t) u^2] + i beta [u_xxx - 6 kappa u u*(-x,t) u_x] = 0
//! ```
//!
//! with `kappa = ±1` and real model constants `alpha`, `beta`. The crate
//! provides:
//!
//! * [`scattering`] — direct scattering transform: Jost solutions of the
//!   x-part Lax pair, the scattering matrix, reflection coefficients, and
//!   validation of the standing assumptions (no spectral singularities, no
//!   discrete spectrum, subcritical winding exponent).
//! * [`phase`] — the phase `theta(z) = z x/t + 2 alpha z^2 + 4 beta z^3`, its
//!   stationary points, and the sign chart of `Re(i theta)`.
//! * [`asymptotics`] — the conjugation factor `delta`, its endpoint constants,
//!   the parabolic-cylinder model matrices, and the leading-order long-time
//!   formula for `q(x,t)` with its error-order exponent.
//! * [`specfun`] — complex gamma and parabolic cylinder functions backing the
//!   model problem.
//! * [`pde`] — an independent integrating-factor RK4 spectral solver used to
//!   verify the asymptotics against direct time integration.
//! * [`runner`] / the `nlhirota` binary — experiment orchestration with
//!   deterministic CSV artifacts.

pub mod asymptotics;
pub mod config;
pub mod grid;
pub mod interp;
pub mod io;
pub mod ode;
pub mod pde;
pub mod phase;
pub mod quad;
pub mod report;
pub mod runner;
pub mod scattering;
pub mod specfun;

use thiserror::Error;

/// Crate-wide error type. Variants map onto the CLI exit-code contract:
/// configuration errors exit 2, assumption/validation failures exit 3, and
/// numerical failures (blow-up, quadrature, integrator) exit 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("config error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate phase: discriminant alpha^2 - 3 beta xi = {0} is not positive")]
    DegeneratePhase(f64),

    #[error("spectral singularity near z = {z}: |{which}| = {magnitude:.3e} below threshold")]
    SpectralSingularity { z: f64, which: &'static str, magnitude: f64 },

    #[error("assumption violated: {0}")]
    AssumptionViolated(String),

    #[error("branch jump in log(1 - kappa r rt): {0}")]
    BranchJump(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use num_complex::Complex64;

/// Shorthand used across the crate.
pub(crate) fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
