//! Direct scattering transform for the x-part of the Lax pair.
//!
//! The modified Jost solutions solve `Phi_x + i z [sigma3, Phi] = Q Phi` with
//! `Q = [[0, u], [kappa u*(-x), 0]]` and `Phi -> I` at the integration start.
//! The scattering matrix is assembled at the matching point `x = 0`,
//! `S(z) = Phi^+(0,z)^{-1} Phi^-(0,z)`, which is the Wronskian form of
//! Cramer's rule, and the reflection coefficients are
//!
//! ```text
//! r(z) = s21(z)/s11(z),        rtilde(z) = kappa s12(z)/s22(z).
//! ```
//!
//! `rtilde` carries the extra `kappa` so that the jump-matrix combination
//! `1 - kappa r rtilde` equals `1/(s11 s22)` exactly (det S = 1) for both
//! signs of `kappa`; with this convention the conjugation exponent
//! `nu = -log(1 - kappa r rtilde)/(2 pi)` and every downstream formula hold
//! as written.

use crate::grid::{InitialDatum, PotentialField};
use crate::interp::CubicSpline;
use crate::ode::dopri5;
use crate::{c64, Complex64, Error, Result};
use rayon::prelude::*;
use std::f64::consts::PI;

const ODE_RTOL: f64 = 1e-10;
const ODE_ATOL: f64 = 1e-10;
/// Below this magnitude `s11`/`s22` are treated as spectral singularities.
pub const SINGULARITY_THRESHOLD: f64 = 1e-10;

/// Which half-line a Jost solution is normalized on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `Phi^-`, normalized to the identity as `x -> -infinity`.
    Left,
    /// `Phi^+`, normalized to the identity as `x -> +infinity`.
    Right,
}

/// Potential evaluator used by the ODE right side: exact closed form when the
/// datum is an expression, cubic-spline resampling otherwise.
pub(crate) enum PotentialEval {
    Expression { datum: InitialDatum, kappa: f64 },
    Spline { upper: CubicSpline, lower: CubicSpline },
}

impl PotentialEval {
    pub(crate) fn new(p: &PotentialField) -> Result<Self> {
        if let Some(datum) = &p.expression {
            return Ok(Self::Expression { datum: datum.clone(), kappa: p.kappa as f64 });
        }
        let h = p.grid.spacing();
        let upper = CubicSpline::new(p.grid.x_min(), h, p.upper.clone())?;
        let lower = CubicSpline::new(p.grid.x_min(), h, p.lower.clone())?;
        Ok(Self::Spline { upper, lower })
    }

    /// `(u(x), kappa u*(-x))`
    #[inline]
    fn eval(&self, x: f64) -> (Complex64, Complex64) {
        match self {
            Self::Expression { datum, kappa } => {
                let u = datum.eval(x).unwrap_or(Complex64::ZERO);
                let v = *kappa * datum.eval(-x).unwrap_or(Complex64::ZERO).conj();
                (u, v)
            }
            Self::Spline { upper, lower } => (upper.eval(x), lower.eval(x)),
        }
    }
}

fn check_finite(p: &PotentialField) -> Result<()> {
    for v in p.upper.iter().chain(p.lower.iter()) {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Numerical("non-finite potential sample".into()));
        }
    }
    Ok(())
}

/// Integrate the full 2x2 Jost solution from the normalization side to
/// `x_target`. Valid for real `z` (both columns stay bounded).
pub fn jost_solve_at(
    p: &PotentialField,
    z: f64,
    side: Side,
    x_target: f64,
) -> Result<[[Complex64; 2]; 2]> {
    check_finite(p)?;
    let pe = PotentialEval::new(p)?;
    let x0 = match side {
        Side::Left => p.grid.x_min(),
        Side::Right => p.grid.x_max,
    };
    let two_iz = c64(0.0, 2.0 * z);
    let rhs = move |x: f64, y: &[Complex64; 4]| {
        let (u, v) = pe.eval(x);
        [
            u * y[2],
            -two_iz * y[1] + u * y[3],
            two_iz * y[2] + v * y[0],
            v * y[1],
        ]
    };
    let y0 = [c64(1.0, 0.0), Complex64::ZERO, Complex64::ZERO, c64(1.0, 0.0)];
    let (y, _) = dopri5(rhs, x0, x_target, y0, ODE_RTOL, ODE_ATOL)?;
    Ok([[y[0], y[1]], [y[2], y[3]]])
}

/// Jost solution at the matching point `x = 0`. The determinant is conserved
/// exactly by the traceless system; a deviation beyond 1e-8 is reported.
pub fn jost_solve(p: &PotentialField, z: f64, side: Side) -> Result<[[Complex64; 2]; 2]> {
    let m = jost_solve_at(p, z, side, 0.0)?;
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det - 1.0).norm() > 1e-8 {
        return Err(Error::Numerical(format!(
            "jost determinant drift |det - 1| = {:.3e} at z = {z}",
            (det - 1.0).norm()
        )));
    }
    Ok(m)
}

/// `s11(z)` for `z` in the closed upper half plane, via the two analytic
/// columns (first of `Phi^-`, second of `Phi^+`), each integrated separately
/// so the exponentially growing partner column never enters.
pub fn s11_upper(p: &PotentialField, z: Complex64) -> Result<Complex64> {
    let pe = PotentialEval::new(p)?;
    let two_iz = 2.0 * c64(0.0, 1.0) * z;
    // column 1 of Phi^-: [p11, p21]
    let rhs1 = |x: f64, y: &[Complex64; 2]| {
        let (u, v) = pe.eval(x);
        [u * y[1], two_iz * y[1] + v * y[0]]
    };
    let (c1, _) = dopri5(rhs1, p.grid.x_min(), 0.0, [c64(1.0, 0.0), Complex64::ZERO], ODE_RTOL, ODE_ATOL)?;
    // column 2 of Phi^+: [p12, p22]
    let pe2 = PotentialEval::new(p)?;
    let rhs2 = |x: f64, y: &[Complex64; 2]| {
        let (u, v) = pe2.eval(x);
        [-two_iz * y[0] + u * y[1], v * y[0]]
    };
    let (c2, _) = dopri5(rhs2, p.grid.x_max, 0.0, [Complex64::ZERO, c64(1.0, 0.0)], ODE_RTOL, ODE_ATOL)?;
    // s11 = det(Phi1^-, Phi2^+)
    Ok(c1[0] * c2[1] - c1[1] * c2[0])
}

/// Tabulated scattering data on a real spectral grid.
///
/// `rtilde` stores `kappa s12 / s22` (see the module docs); `r` is `s21/s11`.
#[derive(Debug, Clone)]
pub struct ScatteringData {
    pub zgrid: Vec<f64>,
    pub s11: Vec<Complex64>,
    pub s12: Vec<Complex64>,
    pub s21: Vec<Complex64>,
    pub s22: Vec<Complex64>,
    pub r: Vec<Complex64>,
    pub rtilde: Vec<Complex64>,
    pub kappa: i8,
    pub alpha: f64,
    pub beta: f64,
    /// Indices where |det S - 1| exceeded the tolerance (run continues).
    pub det_flags: Vec<usize>,
}

impl ScatteringData {
    pub fn has_reflection(&self) -> bool {
        !self.r.is_empty()
    }

    pub fn det_residual_max(&self) -> f64 {
        self.zgrid
            .iter()
            .enumerate()
            .map(|(i, _)| {
                (self.s11[i] * self.s22[i] - self.s12[i] * self.s21[i] - 1.0).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Cubic splines of `r` and `rtilde` over the spectral grid.
    pub fn reflection_splines(&self) -> Result<(CubicSpline, CubicSpline)> {
        if !self.has_reflection() {
            return Err(Error::Config("reflection coefficients not populated".into()));
        }
        let h = self.zgrid[1] - self.zgrid[0];
        Ok((
            CubicSpline::new(self.zgrid[0], h, self.r.clone())?,
            CubicSpline::new(self.zgrid[0], h, self.rtilde.clone())?,
        ))
    }
}

/// Assemble the scattering matrix on a sorted real spectral grid.
/// Determinant deviations beyond 1e-6 are flagged per `z`; the run continues.
pub fn scattering_matrix(p: &PotentialField, zgrid: &[f64], alpha: f64, beta: f64) -> Result<ScatteringData> {
    if zgrid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config("spectral grid must be strictly increasing".into()));
    }
    let entries: Vec<Result<[Complex64; 4]>> = zgrid
        .par_iter()
        .map(|&z| {
            let pm = jost_solve(p, z, Side::Left)?;
            let pp = jost_solve(p, z, Side::Right)?;
            // S = (Phi^+)^{-1} Phi^-  with det Phi^+ = 1
            let s11 = pp[1][1] * pm[0][0] - pp[0][1] * pm[1][0];
            let s12 = pp[1][1] * pm[0][1] - pp[0][1] * pm[1][1];
            let s21 = pp[0][0] * pm[1][0] - pp[1][0] * pm[0][0];
            let s22 = pp[0][0] * pm[1][1] - pp[1][0] * pm[0][1];
            Ok([s11, s12, s21, s22])
        })
        .collect();

    let n = zgrid.len();
    let mut sd = ScatteringData {
        zgrid: zgrid.to_vec(),
        s11: Vec::with_capacity(n),
        s12: Vec::with_capacity(n),
        s21: Vec::with_capacity(n),
        s22: Vec::with_capacity(n),
        r: vec![],
        rtilde: vec![],
        kappa: p.kappa,
        alpha,
        beta,
        det_flags: vec![],
    };
    for (i, e) in entries.into_iter().enumerate() {
        let [s11, s12, s21, s22] = e?;
        if (s11 * s22 - s12 * s21 - 1.0).norm() > 1e-6 {
            sd.det_flags.push(i);
        }
        sd.s11.push(s11);
        sd.s12.push(s12);
        sd.s21.push(s21);
        sd.s22.push(s22);
    }
    Ok(sd)
}

/// Populate `r = s21/s11` and `rtilde = kappa s12/s22`, guarding against
/// spectral singularities.
pub fn reflection_coefficients(sd: &mut ScatteringData) -> Result<()> {
    let kap = sd.kappa as f64;
    let mut r = Vec::with_capacity(sd.zgrid.len());
    let mut rt = Vec::with_capacity(sd.zgrid.len());
    for i in 0..sd.zgrid.len() {
        let z = sd.zgrid[i];
        if sd.s11[i].norm() < SINGULARITY_THRESHOLD {
            return Err(Error::SpectralSingularity { z, which: "s11", magnitude: sd.s11[i].norm() });
        }
        if sd.s22[i].norm() < SINGULARITY_THRESHOLD {
            return Err(Error::SpectralSingularity { z, which: "s22", magnitude: sd.s22[i].norm() });
        }
        r.push(sd.s21[i] / sd.s11[i]);
        rt.push(kap * sd.s12[i] / sd.s22[i]);
    }
    sd.r = r;
    sd.rtilde = rt;
    // identity 1 - kappa r rt = 1/(s11 s22), a det S = 1 consequence
    for i in 0..sd.zgrid.len() {
        let lhs = 1.0 - kap * sd.r[i] * sd.rtilde[i];
        let rhs = 1.0 / (sd.s11[i] * sd.s22[i]);
        if (lhs - rhs).norm() > 1e-6 {
            return Err(Error::Numerical(format!(
                "reflection identity residual {:.3e} at z = {}",
                (lhs - rhs).norm(),
                sd.zgrid[i]
            )));
        }
    }
    Ok(())
}

/// Push the scattering data from `t = 0` to `t = t0`:
/// `r -> r e^{i phi}`, `rtilde -> rtilde e^{-i phi}` with
/// `phi = (4 alpha z^2 + 8 beta z^3) t0`. The moduli are preserved and
/// `1 - kappa r rtilde` is invariant.
pub fn evolve_reflection(sd: &ScatteringData, t0: f64) -> Result<ScatteringData> {
    if t0 < 0.0 {
        return Err(Error::Domain("evolve_reflection: t0 must be nonnegative".into()));
    }
    let mut out = sd.clone();
    for (i, &z) in sd.zgrid.iter().enumerate() {
        let phi = (4.0 * sd.alpha * z * z + 8.0 * sd.beta * z * z * z) * t0;
        let e = c64(0.0, phi).exp();
        out.s21[i] *= e;
        out.s12[i] /= e;
        if sd.has_reflection() {
            out.r[i] *= e;
            out.rtilde[i] /= e;
        }
    }
    Ok(out)
}

/// Per-grid-point margins of the subcriticality assumptions and the
/// argument-principle winding count of `s11` over the upper half plane.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub zgrid: Vec<f64>,
    /// `pi - |arg(1 - kappa r rtilde)|` per grid point (positive required)
    pub arg_margin: Vec<f64>,
    /// `1/2 - |Im nu|` per grid point (positive required)
    pub nu_margin: Vec<f64>,
    pub min_abs_s11: f64,
    pub min_abs_s22: f64,
    pub max_im_nu: f64,
    /// Winding of `s11` along the boundary of `[-Z, Z] x [0, Z]`
    pub winding: i64,
    pub pass: bool,
}

impl ValidationReport {
    pub fn min_arg_margin(&self) -> f64 {
        self.arg_margin.iter().copied().fold(f64::INFINITY, f64::min)
    }
    pub fn min_nu_margin(&self) -> f64 {
        self.nu_margin.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Winding number of `f` along the closed polyline through `pts` (assumed to
/// return to the start), with adaptive midpoint refinement of large argument
/// increments.
fn winding_number<F>(f: &F, pts: &[Complex64]) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    fn delta_arg<F>(f: &F, a: Complex64, b: Complex64, fa: Complex64, fb: Complex64, depth: u32) -> Result<f64>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        let d = (fb / fa).arg();
        if d.abs() < 1.0 {
            return Ok(d);
        }
        if depth >= 24 {
            return Err(Error::Numerical(
                "winding: argument increment did not settle (zero on or near the contour?)".into(),
            ));
        }
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        Ok(delta_arg(f, a, m, fa, fm, depth + 1)? + delta_arg(f, m, b, fm, fb, depth + 1)?)
    }

    let vals: Vec<Complex64> = pts.iter().map(|&z| f(z)).collect::<Result<_>>()?;
    let mut total = 0.0;
    for i in 0..pts.len() {
        let j = (i + 1) % pts.len();
        total += delta_arg(f, pts[i], pts[j], vals[i], vals[j], 0)?;
    }
    Ok(total / (2.0 * PI))
}

/// Validate the paper-level standing assumptions on the computed data:
/// positive margins for `|arg(1 - kappa r rtilde)| < pi` and `|Im nu| < 1/2`,
/// no spectral singularities, and zero winding of `s11` over the upper
/// half-plane box `[-Z, Z] x [0, Z]` (absence of discrete spectrum).
pub fn validate_assumptions(p: &PotentialField, sd: &ScatteringData) -> Result<ValidationReport> {
    if !sd.has_reflection() {
        return Err(Error::Config("validate_assumptions: reflection coefficients required".into()));
    }
    let kap = sd.kappa as f64;
    let mut arg_margin = Vec::with_capacity(sd.zgrid.len());
    let mut nu_margin = Vec::with_capacity(sd.zgrid.len());
    let mut max_im_nu: f64 = 0.0;
    for i in 0..sd.zgrid.len() {
        let w = 1.0 - kap * sd.r[i] * sd.rtilde[i];
        let am = PI - w.arg().abs();
        let im_nu = -w.arg() / (2.0 * PI);
        arg_margin.push(am);
        nu_margin.push(0.5 - im_nu.abs());
        if im_nu.abs() > max_im_nu.abs() {
            max_im_nu = im_nu;
        }
    }
    let min_abs_s11 = sd.s11.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
    let min_abs_s22 = sd.s22.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);

    let zmax = sd.zgrid.last().copied().unwrap_or(6.0);
    let h = zmax;
    let m = 48usize;
    let mut pts = Vec::new();
    for i in 0..m {
        pts.push(c64(-zmax + 2.0 * zmax * i as f64 / m as f64, 0.0));
    }
    for i in 0..m {
        pts.push(c64(zmax, h * i as f64 / m as f64));
    }
    for i in 0..m {
        pts.push(c64(zmax - 2.0 * zmax * i as f64 / m as f64, h));
    }
    for i in 0..m {
        pts.push(c64(-zmax, h - h * i as f64 / m as f64));
    }
    let f = |z: Complex64| s11_upper(p, z);
    let w = winding_number(&f, &pts)?;
    let winding = w.round() as i64;
    if (w - winding as f64).abs() > 0.1 {
        return Err(Error::Numerical(format!("winding number did not converge to an integer: {w}")));
    }

    let min_am = arg_margin.iter().copied().fold(f64::INFINITY, f64::min);
    let min_nm = nu_margin.iter().copied().fold(f64::INFINITY, f64::min);
    let pass = min_am > 0.0
        && min_nm > 0.0
        && winding == 0
        && min_abs_s11 >= SINGULARITY_THRESHOLD
        && min_abs_s22 >= SINGULARITY_THRESHOLD;
    Ok(ValidationReport {
        zgrid: sd.zgrid.clone(),
        arg_margin,
        nu_margin,
        min_abs_s11,
        min_abs_s22,
        max_im_nu,
        winding,
        pass,
    })
}
