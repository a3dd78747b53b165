//! Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) for small complex
//! systems parametrized by a real variable.

use crate::{Complex64, Error, Result};

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
// 5th-order weights
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// error weights (5th minus embedded 4th)
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Integration statistics returned together with the final state.
#[derive(Debug, Clone, Copy, Default)]
pub struct OdeStats {
    pub steps: usize,
    pub rejected: usize,
    /// Sum of per-step error estimates, a forward-error heuristic.
    pub accumulated_error: f64,
}

/// Integrate `dy/ds = f(s, y)` from `s0` to `s1` (either direction) with
/// per-component absolute/relative tolerances.
pub fn dopri5<const N: usize, F>(
    mut f: F,
    s0: f64,
    s1: f64,
    y0: [Complex64; N],
    rtol: f64,
    atol: f64,
) -> Result<([Complex64; N], OdeStats)>
where
    F: FnMut(f64, &[Complex64; N]) -> [Complex64; N],
{
    let span = s1 - s0;
    if span == 0.0 {
        return Ok((y0, OdeStats::default()));
    }
    let dir = span.signum();
    let mut s = s0;
    let mut y = y0;
    let mut k1 = f(s, &y);
    let mut h = (span.abs() * 1e-2).min(1.0) * dir;
    let mut stats = OdeStats::default();
    let max_steps = 2_000_000;

    while (s1 - s) * dir > 0.0 {
        if stats.steps + stats.rejected > max_steps {
            return Err(Error::Numerical(format!(
                "dopri5: step budget exhausted at s = {s} (h = {h:.3e})"
            )));
        }
        if (s + h - s1) * dir > 0.0 {
            h = s1 - s;
        }
        let axpy = |coefs: &[(f64, &[Complex64; N])]| {
            let mut out = y;
            for i in 0..N {
                for (c, k) in coefs {
                    out[i] += h * *c * k[i];
                }
            }
            out
        };
        let k2 = f(s + 0.2 * h, &axpy(&[(A21, &k1)]));
        let k3 = f(s + 0.3 * h, &axpy(&[(A31, &k1), (A32, &k2)]));
        let k4 = f(s + 0.8 * h, &axpy(&[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(s + 8.0 / 9.0 * h, &axpy(&[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
        let k6 = f(s + h, &axpy(&[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]));
        let ynew = axpy(&[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let k7 = f(s + h, &ynew);

        let mut err: f64 = 0.0;
        for i in 0..N {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = atol + rtol * y[i].norm().max(ynew[i].norm());
            err = err.max(e.norm() / sc);
        }

        if err <= 1.0 {
            s += h;
            y = ynew;
            k1 = k7;
            stats.steps += 1;
            stats.accumulated_error += err * atol;
        } else {
            stats.rejected += 1;
        }
        let fac = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
        h *= fac;
        if h.abs() < 1e-14 * span.abs() {
            return Err(Error::Numerical(format!(
                "dopri5: step size underflow at s = {s} (err = {err:.3e})"
            )));
        }
    }
    Ok((y, stats))
}
