//! Gauss-Legendre panels with adaptive bisection, used for the Cauchy-type
//! integrals defining the conjugation factor `delta`.

use crate::{Complex64, Error, Result};

/// 16-point Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton
/// iteration on the Legendre polynomial.
fn gl16() -> &'static ([f64; 16], [f64; 16]) {
    use std::sync::OnceLock;
    static CELL: OnceLock<([f64; 16], [f64; 16])> = OnceLock::new();
    CELL.get_or_init(|| {
        let n = 16usize;
        let mut xs = [0.0f64; 16];
        let mut ws = [0.0f64; 16];
        for i in 0..n {
            // Chebyshev initial guess
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                // evaluate P_n and P_n'
                let (mut p0, mut p1) = (1.0f64, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            xs[n - 1 - i] = x;
            ws[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (xs, ws)
    })
}

fn panel<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> Complex64 {
    let (xs, ws) = gl16();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Complex64::ZERO;
    for i in 0..16 {
        acc += ws[i] * f(mid + half * xs[i]);
    }
    acc * half
}

/// Adaptive Gauss-Legendre integration of a complex-valued function over
/// [a, b]. Panels are bisected until the two-half refinement changes the
/// panel value by less than the local tolerance share.
pub fn integrate<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    struct Work {
        a: f64,
        b: f64,
        coarse: Complex64,
        depth: u32,
    }
    let coarse = panel(&mut f, a, b);
    let mut stack = vec![Work { a, b, coarse, depth: 0 }];
    let mut total = Complex64::ZERO;
    let mut evals = 1usize;
    while let Some(w) = stack.pop() {
        let mid = 0.5 * (w.a + w.b);
        let left = panel(&mut f, w.a, mid);
        let right = panel(&mut f, mid, w.b);
        evals += 2;
        if evals > 40_000 {
            return Err(Error::Numerical("adaptive quadrature: panel budget exhausted".into()));
        }
        let err = (left + right - w.coarse).norm();
        let local_tol = tol * ((w.b - w.a) / (b - a)).max(1e-6);
        if err < local_tol || w.depth >= 40 {
            total += left + right;
        } else {
            stack.push(Work { a: w.a, b: mid, coarse: left, depth: w.depth + 1 });
            stack.push(Work { a: mid, b: w.b, coarse: right, depth: w.depth + 1 });
        }
    }
    Ok(total)
}
