//! Adaptive Dormand–Prince 5(4) integration of complex linear systems.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const MAX_STEPS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Integration {
    pub y: Vec<Complex64>,
    /// Sum of the absolute local error estimates of the accepted steps.
    pub error: f64,
    pub steps: usize,
}

/// Integrates `y' = f(t, y)` from `t0` to `t1` with mixed absolute/relative local tolerance `tol`.
pub fn dopri5<F>(
    mut f: F,
    t0: f64,
    t1: f64,
    y0: &[Complex64],
    tol: f64,
    h0: f64,
) -> Result<Integration>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    let n = y0.len();
    let span = t1 - t0;
    let h_min = 1e-13 * span.abs().max(1.0);
    let mut t = t0;
    let mut h = h0.min(span);
    let mut y = y0.to_vec();
    let mut k: Vec<Vec<Complex64>> = vec![vec![Complex64::new(0.0, 0.0); n]; 7];
    let mut tmp = vec![Complex64::new(0.0, 0.0); n];
    let mut error = 0.0;
    let mut steps = 0;
    f(t, &y, &mut k[0]);
    while t < t1 {
        if t + h > t1 {
            h = t1 - t;
        }
        for s in 1..7 {
            for i in 0..n {
                let mut acc = y[i];
                for (j, a) in A[s].iter().enumerate().take(s) {
                    if *a != 0.0 {
                        acc += k[j][i] * (h * a);
                    }
                }
                tmp[i] = acc;
            }
            f(t + C[s] * h, &tmp, &mut k[s]);
        }
        // tmp now holds the fifth-order solution (stage 7 abscissa is t + h)
        let mut err_ratio = 0.0f64;
        let mut err_abs = 0.0f64;
        for i in 0..n {
            let mut e = Complex64::new(0.0, 0.0);
            for (j, w) in E.iter().enumerate() {
                if *w != 0.0 {
                    e += k[j][i] * (h * w);
                }
            }
            let scale = tol * (1.0 + y[i].norm().max(tmp[i].norm()));
            err_ratio = err_ratio.max(e.norm() / scale);
            err_abs = err_abs.max(e.norm());
        }
        if err_ratio <= 1.0 {
            t += h;
            y.copy_from_slice(&tmp);
            let last = k[6].clone();
            k[0] = last;
            error += err_abs;
            steps += 1;
        }
        let factor = if !err_ratio.is_finite() {
            0.2
        } else if err_ratio == 0.0 {
            5.0
        } else {
            0.9 * libm::pow(err_ratio, -0.2)
        };
        h *= factor.clamp(0.2, 5.0);
        if (h < h_min && t < t1 - h_min) || steps > MAX_STEPS {
            return Err(Error::StepFailure { t });
        }
    }
    Ok(Integration { y, error, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential() {
        // y' = i y over [0, 2 pi] returns to the start
        let i = Complex64::new(0.0, 1.0);
        let r = dopri5(
            |_, y, out| out[0] = i * y[0],
            0.0,
            2.0 * core::f64::consts::PI,
            &[Complex64::new(1.0, 0.0)],
            1e-10,
            0.1,
        )
        .unwrap();
        assert!((r.y[0] - 1.0).norm() < 1e-8);
        assert!(r.steps > 10);
    }

    #[test]
    fn tighter_tolerance_is_more_accurate() {
        let exact = libm::exp(1.0);
        let err = |tol| {
            let r = dopri5(
                |_, y, out| out[0] = y[0],
                0.0,
                1.0,
                &[Complex64::new(1.0, 0.0)],
                tol,
                0.5,
            )
            .unwrap();
            (r.y[0].re - exact).abs()
        };
        assert!(err(1e-10) < err(1e-6));
    }

    #[test]
    fn blow_up_fails() {
        // y' = y^2, y(0) = 1 blows up at t = 1
        let r = dopri5(
            |_, y, out| out[0] = y[0] * y[0],
            0.0,
            2.0,
            &[Complex64::new(1.0, 0.0)],
            1e-8,
            0.1,
        );
        assert!(matches!(r, Err(Error::StepFailure { .. })));
    }
}
