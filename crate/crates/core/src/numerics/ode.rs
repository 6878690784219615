//! Dormand–Prince 5(4) embedded Runge–Kutta with adaptive steps, specialised
//! to the two-component first-order systems of the radial problem.

use crate::error::{Error, Result};

pub type State = [f64; 2];

#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub max_step: f64,
    /// When set to a length `ℓ`, the error of `(y, y')` is measured against
    /// `|y| + ℓ|y'|` and `|y'| + |y|/ℓ` instead of each component alone, so
    /// a zero crossing of one component does not stall the step control.
    pub coupling_length: Option<f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rtol: 1e-11,
            atol: 1e-14,
            max_steps: 1_000_000,
            max_step: f64::INFINITY,
            coupling_length: None,
        }
    }
}

impl Tolerances {
    fn scale(&self, y: &State) -> State {
        match self.coupling_length {
            Some(l) => [
                self.atol + self.rtol * (y[0].abs() + l * y[1].abs()),
                self.atol + self.rtol * (y[1].abs() + y[0].abs() / l),
            ],
            None => [
                self.atol + self.rtol * y[0].abs(),
                self.atol + self.rtol * y[1].abs(),
            ],
        }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

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

// fifth-order weights (also the last row of A, FSAL)
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

// fifth minus fourth order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[inline]
fn axpy(y: &State, terms: &[(f64, &State)], h: f64) -> State {
    let mut out = *y;
    for (c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// Integrates `y' = f(t, y)` from `t0` to `t1 > t0`, calling `observe` after
/// every accepted step (including the final one). Returns `y(t1)` and the
/// number of accepted steps.
pub fn integrate<F, O>(
    f: F,
    t0: f64,
    y0: State,
    t1: f64,
    tol: &Tolerances,
    mut observe: O,
) -> Result<(State, usize)>
where
    F: Fn(f64, &State) -> State,
    O: FnMut(f64, &State),
{
    let span = t1 - t0;
    assert!(span > 0.0, "integration interval must be forward");
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = initial_step(&f, t0, &y0, &k1, tol)
        .min(span)
        .min(tol.max_step);
    let mut accepted = 0usize;
    let mut fac_old: f64 = 1e-4;

    for _ in 0..tol.max_steps {
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }
        let k2 = f(t + C2 * h, &axpy(&y, &[(A21, &k1)], h));
        let k3 = f(t + C3 * h, &axpy(&y, &[(A31, &k1), (A32, &k2)], h));
        let k4 = f(
            t + C4 * h,
            &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h),
        );
        let k5 = f(
            t + C5 * h,
            &axpy(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h),
        );
        let k6 = f(
            t + h,
            &axpy(
                &y,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                h,
            ),
        );
        let y_new = axpy(
            &y,
            &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
            h,
        );
        let t_new = if last { t1 } else { t + h };
        let k7 = f(t_new, &y_new);

        let sc_old = tol.scale(&y);
        let sc_new = tol.scale(&y_new);
        let mut err = 0.0f64;
        for i in 0..2 {
            let e =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            err += (e / sc_old[i].max(sc_new[i])).powi(2);
        }
        let err = (err / 2.0).sqrt();

        if err <= 1.0 {
            // PI step control (Hairer, Nørsett & Wanner II.4)
            let fac =
                (0.9 * err.max(1e-10).powf(-0.7 / 5.0) * fac_old.powf(0.4 / 5.0)).clamp(0.2, 10.0);
            fac_old = err.max(1e-4);
            t = t_new;
            y = y_new;
            k1 = k7;
            accepted += 1;
            observe(t, &y);
            if last {
                return Ok((y, accepted));
            }
            h = (h * fac).min(tol.max_step);
        } else {
            let fac = if err.is_finite() {
                (0.9 * err.powf(-0.2)).max(0.2)
            } else {
                0.1
            };
            h *= fac;
        }
        if h <= f64::EPSILON * t.abs().max(span) {
            return Err(Error::NonConvergence {
                what: format!("step size underflow at t = {t}"),
                iterations: accepted,
            });
        }
    }
    Err(Error::NonConvergence {
        what: "Runge–Kutta step budget exhausted".into(),
        iterations: tol.max_steps,
    })
}

fn initial_step<F>(f: &F, t0: f64, y0: &State, f0: &State, tol: &Tolerances) -> f64
where
    F: Fn(f64, &State) -> State,
{
    let scale = tol.scale(y0);
    let sc = |i: usize| scale[i];
    let d0 = ((y0[0] / sc(0)).powi(2) + (y0[1] / sc(1)).powi(2)).sqrt() / 2f64.sqrt();
    let d1 = ((f0[0] / sc(0)).powi(2) + (f0[1] / sc(1)).powi(2)).sqrt() / 2f64.sqrt();
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let y1 = axpy(y0, &[(1.0, f0)], h0);
    let f1 = f(t0 + h0, &y1);
    let d2 = (((f1[0] - f0[0]) / sc(0)).powi(2) + ((f1[1] - f0[1]) / sc(1)).powi(2)).sqrt()
        / 2f64.sqrt()
        / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn harmonic_oscillator() {
        let tol = Tolerances::default();
        let (y, steps) =
            integrate(|_, y| [y[1], -y[0]], 0.0, [0.0, 1.0], 10.0, &tol, |_, _| {}).unwrap();
        assert_relative_eq!(y[0], 10f64.sin(), epsilon = 1e-9);
        assert_relative_eq!(y[1], 10f64.cos(), epsilon = 1e-9);
        assert!(steps > 10);
    }

    #[test]
    fn observer_sees_monotone_times_ending_at_t1() {
        let mut ts = Vec::new();
        integrate(
            |t, _| [t.cos(), 0.0],
            0.0,
            [0.0, 0.0],
            3.0,
            &Tolerances::default(),
            |t, _| ts.push(t),
        )
        .unwrap();
        assert!(ts.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(*ts.last().unwrap(), 3.0);
    }
}
