//! Natural cubic spline on a uniform grid, for resampling tabulated
//! scattering data onto quadrature nodes.

use crate::{Complex64, Error, Result};

#[derive(Debug, Clone)]
pub struct CubicSpline {
    x0: f64,
    h: f64,
    y: Vec<Complex64>,
    m: Vec<Complex64>, // second derivatives at the knots
}

impl CubicSpline {
    /// Build a natural cubic spline through `y` sampled on the uniform grid
    /// `x0 + j h`, `j = 0..n-1`.
    pub fn new(x0: f64, h: f64, y: Vec<Complex64>) -> Result<Self> {
        let n = y.len();
        if n < 4 {
            return Err(Error::Config("spline needs at least 4 samples".into()));
        }
        if !(h > 0.0) {
            return Err(Error::Config("spline spacing must be positive".into()));
        }
        // tridiagonal system [1, 4, 1] for interior second derivatives
        // (natural boundary: m0 = m_{n-1} = 0), solved by the Thomas algorithm
        let mut m = vec![Complex64::ZERO; n];
        let mut cp = vec![0.0f64; n];
        let mut dp = vec![Complex64::ZERO; n];
        for j in 1..n - 1 {
            let denom = 4.0 - cp[j - 1];
            cp[j] = 1.0 / denom;
            let r = 6.0 * (y[j + 1] - 2.0 * y[j] + y[j - 1]) / (h * h);
            dp[j] = (r - dp[j - 1]) / denom;
        }
        for j in (1..n - 1).rev() {
            m[j] = dp[j] - cp[j] * m[j + 1];
        }
        Ok(Self { x0, h, y, m })
    }

    pub fn x_min(&self) -> f64 {
        self.x0
    }

    pub fn x_max(&self) -> f64 {
        self.x0 + self.h * (self.y.len() - 1) as f64
    }

    /// Evaluate at `x`; clamped extrapolation outside the grid.
    pub fn eval(&self, x: f64) -> Complex64 {
        let n = self.y.len();
        let t = ((x - self.x0) / self.h).clamp(0.0, (n - 1) as f64 - 1e-12);
        let j = t.floor() as usize;
        let a = self.x0 + self.h * j as f64;
        let u = x - a;
        let h = self.h;
        let (y0, y1) = (self.y[j], self.y[j + 1]);
        let (m0, m1) = (self.m[j], self.m[j + 1]);
        y0 + u * ((y1 - y0) / h - h / 6.0 * (2.0 * m0 + m1))
            + u * u / 2.0 * m0
            + u * u * u / (6.0 * h) * (m1 - m0)
    }
}
