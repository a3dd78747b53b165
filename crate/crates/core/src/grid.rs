//! Spatial grids, sampled complex fields, and the nonlocal potential matrix.

use crate::{c64, Complex64, Error, Result};
use serde::{Deserialize, Serialize};

/// Uniform 1-D grid, symmetric about the origin so that `x -> -x` maps grid
/// points to grid points. `n` points `x_j = -x_max + j h`, `h = 2 x_max / n`;
/// the right endpoint is excluded (periodic convention, compatible with the
/// spectral solver).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec1D {
    pub x_max: f64,
    pub n: usize,
}

impl GridSpec1D {
    pub fn new(x_max: f64, n: usize) -> Result<Self> {
        if !(x_max > 0.0) {
            return Err(Error::Config("grid: x_max must be positive".into()));
        }
        if n < 8 || n % 2 != 0 {
            return Err(Error::Config(format!("grid: n = {n} must be even and >= 8")));
        }
        Ok(Self { x_max, n })
    }

    pub fn x_min(&self) -> f64 {
        -self.x_max
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.x_max / self.n as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        -self.x_max + self.spacing() * j as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.point(j))
    }

    /// Index of the reflected point `-x_j`, with the periodic convention for
    /// the unpaired left endpoint (`j = 0` maps to itself).
    pub fn reflect_index(&self, j: usize) -> usize {
        (self.n - j) % self.n
    }
}

/// Closed-form initial data selectable from configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialDatum {
    Zero,
    Constant { re: f64, im: f64 },
    /// `A exp(-w (x - x0)^2 + i c x)`
    Gaussian {
        amplitude: f64,
        #[serde(default = "one")]
        width: f64,
        #[serde(default)]
        center: f64,
        #[serde(default)]
        chirp: f64,
    },
    /// `A sech(w x) exp(i c x)`
    Sech {
        amplitude: f64,
        #[serde(default = "one")]
        width: f64,
        #[serde(default)]
        chirp: f64,
    },
    /// Samples read from CSV columns `x, Re_u, Im_u`.
    Csv { path: String },
}

fn one() -> f64 {
    1.0
}

impl InitialDatum {
    /// Closed-form evaluation; `Csv` has no closed form.
    pub fn eval(&self, x: f64) -> Option<Complex64> {
        match self {
            InitialDatum::Zero => Some(Complex64::ZERO),
            InitialDatum::Constant { re, im } => Some(c64(*re, *im)),
            InitialDatum::Gaussian { amplitude, width, center, chirp } => {
                let g = (-width * (x - center) * (x - center)).exp();
                Some(amplitude * g * c64(0.0, chirp * x).exp())
            }
            InitialDatum::Sech { amplitude, width, chirp } => {
                let s = 1.0 / (width * x).cosh();
                Some(amplitude * s * c64(0.0, chirp * x).exp())
            }
            InitialDatum::Csv { .. } => None,
        }
    }
}

/// A complex field sampled on a symmetric grid at a fixed time.
#[derive(Debug, Clone)]
pub struct ComplexField {
    pub grid: GridSpec1D,
    pub samples: Vec<Complex64>,
    pub time: f64,
}

impl ComplexField {
    pub fn new(grid: GridSpec1D, samples: Vec<Complex64>, time: f64) -> Result<Self> {
        if samples.len() != grid.n {
            return Err(Error::Config(format!(
                "field: {} samples on a grid of {} points",
                samples.len(),
                grid.n
            )));
        }
        Ok(Self { grid, samples, time })
    }

    pub fn from_expression(grid: GridSpec1D, datum: &InitialDatum, time: f64) -> Result<Self> {
        let samples = grid
            .points()
            .map(|x| {
                datum
                    .eval(x)
                    .ok_or_else(|| Error::Config("CSV datum has no closed form".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(grid, samples, time)
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Decaying-data contract: the largest |u| over the outer 5% of points
    /// must not exceed `1e-8 max|u|`.
    pub fn check_boundary_decay(&self) -> Result<()> {
        let n = self.grid.n;
        let margin = (n / 20).max(1);
        let peak = self.max_abs();
        if peak == 0.0 {
            return Ok(());
        }
        let mut tail: f64 = 0.0;
        for j in 0..margin {
            tail = tail.max(self.samples[j].norm());
            tail = tail.max(self.samples[n - 1 - j].norm());
        }
        if tail > 1e-8 * peak {
            return Err(Error::AssumptionViolated(format!(
                "boundary decay violated: tail max {tail:.3e} > 1e-8 * peak {peak:.3e}"
            )));
        }
        Ok(())
    }
}

/// The 2x2 potential entries of the modified Lax pair: `upper[j] = u(x_j)`,
/// `lower[j] = kappa conj(u(-x_j))` built by exact index reflection.
#[derive(Debug, Clone)]
pub struct PotentialField {
    pub grid: GridSpec1D,
    pub upper: Vec<Complex64>,
    pub lower: Vec<Complex64>,
    pub kappa: i8,
    /// Closed-form datum, when available, for interpolation-free ODE right
    /// sides.
    pub expression: Option<InitialDatum>,
}

/// Build the potential from initial data. Checks the symmetric-grid and
/// boundary-decay contracts.
pub fn build_potential(u0: &ComplexField, kappa: i8) -> Result<PotentialField> {
    if kappa != 1 && kappa != -1 {
        return Err(Error::Config("kappa must be +1 or -1".into()));
    }
    u0.check_boundary_decay()?;
    let n = u0.grid.n;
    let kap = kappa as f64;
    let lower: Vec<Complex64> =
        (0..n).map(|j| kap * u0.samples[u0.grid.reflect_index(j)].conj()).collect();
    Ok(PotentialField { grid: u0.grid, upper: u0.samples.clone(), lower, kappa, expression: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflect_index_roundtrip() {
        let g = GridSpec1D::new(8.0, 64).unwrap();
        for j in 0..64 {
            let r = g.reflect_index(j);
            assert_eq!(g.reflect_index(r), j);
            if j != 0 {
                assert!((g.point(r) + g.point(j)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn zero_potential() {
        let g = GridSpec1D::new(8.0, 64).unwrap();
        let f = ComplexField::from_expression(g, &InitialDatum::Zero, 0.0).unwrap();
        let p = build_potential(&f, 1).unwrap();
        assert!(p.upper.iter().all(|v| v.norm() == 0.0));
        assert!(p.lower.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn real_even_kappa_one_lower_equals_upper() {
        let g = GridSpec1D::new(8.0, 256).unwrap();
        let f = ComplexField::from_expression(
            g,
            &InitialDatum::Gaussian { amplitude: 0.3, width: 1.0, center: 0.0, chirp: 0.0 },
            0.0,
        )
        .unwrap();
        let p = build_potential(&f, 1).unwrap();
        for j in 0..g.n {
            assert!((p.lower[j] - p.upper[j]).norm() < 1e-15);
        }
    }

    #[test]
    fn chirped_gaussian_reflection() {
        // u0(x) = 0.3 e^{-x^2 + i x}: lower[j] = kappa conj(u0(-x_j)) = kappa 0.3 e^{-x_j^2 + i x_j}
        let g = GridSpec1D::new(8.0, 256).unwrap();
        let datum = InitialDatum::Gaussian { amplitude: 0.3, width: 1.0, center: 0.0, chirp: 1.0 };
        let f = ComplexField::from_expression(g, &datum, 0.0).unwrap();
        let p = build_potential(&f, 1).unwrap();
        for &j in &[10usize, 77, 200] {
            let x = g.point(j);
            let expect = 0.3 * (-x * x).exp() * c64(0.0, x).exp();
            assert!((p.lower[j] - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn decay_contract_violation() {
        let g = GridSpec1D::new(2.0, 64).unwrap();
        let f = ComplexField::from_expression(
            g,
            &InitialDatum::Gaussian { amplitude: 0.3, width: 1.0, center: 0.0, chirp: 0.0 },
            0.0,
        )
        .unwrap();
        assert!(build_potential(&f, 1).is_err()); // e^{-4} tail on [-2,2]
    }
}
