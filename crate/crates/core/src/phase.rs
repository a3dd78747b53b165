//! Phase function `theta(z) = z xi + 2 alpha z^2 + 4 beta z^3` (xi = x/t),
//! its stationary points, and the sign chart of `Re(2 i theta)` that drives
//! the contour geometry.

use crate::{c64, Complex64, Error, Result};

/// Stationary-point geometry for given `(xi, alpha, beta)`.
///
/// `z1 < z2` always; for `beta < 0` the roots of `theta'` are swapped into
/// ascending order and `orientation_flipped` is set so consumers can adjust
/// region logic.
#[derive(Debug, Clone, Copy)]
pub struct PhaseGeometry {
    pub alpha: f64,
    pub beta: f64,
    pub xi: f64,
    pub z1: f64,
    pub z2: f64,
    /// alpha^2 - 3 beta xi
    pub discriminant: f64,
    /// true when beta < 0 and the natural root order was swapped
    pub orientation_flipped: bool,
}

/// `theta(z) = z xi + 2 alpha z^2 + 4 beta z^3` for complex `z`.
pub fn theta(z: Complex64, xi: f64, alpha: f64, beta: f64) -> Complex64 {
    z * (xi + z * (2.0 * alpha + z * 4.0 * beta))
}

/// `theta'(z) = xi + 4 alpha z + 12 beta z^2`.
pub fn theta_prime(z: Complex64, xi: f64, alpha: f64, beta: f64) -> Complex64 {
    xi + z * (4.0 * alpha + z * 12.0 * beta)
}

/// Real stationary points of `theta`, i.e. roots of `12 beta z^2 + 4 alpha z + xi`.
///
/// Uses the cancellation-free quadratic formula: the larger-magnitude root is
/// computed first, the other by Vieta.
pub fn stationary_points(xi: f64, alpha: f64, beta: f64) -> Result<PhaseGeometry> {
    if beta == 0.0 {
        return Err(Error::DegeneratePhase(f64::NAN));
    }
    let disc = alpha * alpha - 3.0 * beta * xi;
    if disc <= 0.0 {
        return Err(Error::DegeneratePhase(disc));
    }
    let a = 12.0 * beta;
    let b = 4.0 * alpha;
    let c = xi;
    let sq = 4.0 * disc.sqrt(); // sqrt(b^2 - 4 a c) = 4 sqrt(disc)
    let (r_big, r_other) = if b != 0.0 {
        let qq = -0.5 * (b + b.signum() * sq);
        (qq / a, c / qq)
    } else {
        let r = sq / (2.0 * a);
        (r, -r)
    };
    let (z1, z2) = if r_big < r_other { (r_big, r_other) } else { (r_other, r_big) };
    Ok(PhaseGeometry {
        alpha,
        beta,
        xi,
        z1,
        z2,
        discriminant: disc,
        orientation_flipped: beta < 0.0,
    })
}

impl PhaseGeometry {
    pub fn theta(&self, z: Complex64) -> Complex64 {
        theta(z, self.xi, self.alpha, self.beta)
    }

    pub fn stationary(&self, j: usize) -> f64 {
        match j {
            1 => self.z1,
            2 => self.z2,
            _ => panic!("stationary point index must be 1 or 2"),
        }
    }

    /// `6 beta z_j + alpha`; equals `-sqrt(disc)` at `z1` and `+sqrt(disc)` at `z2`
    /// (for beta > 0).
    pub fn concavity(&self, j: usize) -> f64 {
        6.0 * self.beta * self.stationary(j) + self.alpha
    }
}

/// Sign of `Re(2 i theta(z))`: `+1`, `-1`, or `0` (within 1e-14 of zero,
/// in particular for real `z`).
pub fn sign_re_itheta(z: Complex64, geom: &PhaseGeometry) -> i8 {
    let v = (2.0 * c64(0.0, 1.0) * geom.theta(z)).re;
    if v.abs() <= 1e-14 * (1.0 + z.norm_sqr()) {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// `2 t theta(z_j)` together with the assertion that it equals
/// `-4 t alpha z_j^2 - 16 t beta z_j^3` under stationarity.
pub fn stationary_phase_value(geom: &PhaseGeometry, t: f64, j: usize) -> Result<f64> {
    let zj = geom.stationary(j);
    let v = 2.0 * t * geom.theta(c64(zj, 0.0)).re;
    let closed = -4.0 * geom.alpha * t * zj * zj - 16.0 * geom.beta * t * zj * zj * zj;
    if (v - closed).abs() > 1e-8 * (1.0 + v.abs()) {
        return Err(Error::Numerical(format!(
            "inconsistent phase geometry: 2t*theta(z{j}) = {v:.6e} but closed form = {closed:.6e}"
        )));
    }
    Ok(v)
}
