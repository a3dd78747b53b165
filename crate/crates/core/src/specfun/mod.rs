//! Complex-argument special functions backing the model Riemann-Hilbert
//! problem: the gamma function for complex arguments and parabolic cylinder
//! functions `D_a(k)` of complex order.

mod gamma;
mod pcf;

pub use gamma::{gamma_complex, recip_gamma};
pub use pcf::{parabolic_cylinder_d, parabolic_cylinder_d_pair, PCF_MAX_ABS_K, PCF_MAX_ABS_ORDER};

use num_complex::Complex64;

/// A complex function value paired with a heuristic absolute-error estimate.
///
/// The estimate is a forward-error bound (last-term magnitude for series,
/// accumulated step error for ODE continuation). It is advisory, not rigorous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialValue {
    pub value: Complex64,
    pub err_est: f64,
}

impl SpecialValue {
    pub fn new(value: Complex64, err_est: f64) -> Self {
        debug_assert!(err_est.is_finite() && err_est >= 0.0);
        Self { value, err_est }
    }
}
