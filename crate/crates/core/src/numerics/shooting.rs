//! Shooting solver for the radial Dirichlet problem
//!
//! ```text
//! F'' + 2 (s_K'/s_K) F' + λ F = 0,   F regular at 0,   F(r0) = 0
//! ```
//!
//! The regular solution is normalized by `F(0) = 1` and started a short
//! distance from the singular point from its power series. `F(r0; λ)` is
//! scanned upward in `λ` for sign changes, the `n`-th change is bisected and
//! then polished by a safeguarded secant iteration. Nothing here uses the
//! closed-form spectrum unless [`ShootingOptions::hinted`] is set.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::ode::{self, Tolerances};
use crate::error::{Error, Result};
use crate::geometry::GeodesicBall;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingResult {
    pub lambda_hat: f64,
    /// `|F(r0)| / (|F'(r0)| r0)`: distance of the nearest zero of `F` from
    /// the boundary, relative to `r0`.
    pub boundary_residual: f64,
    /// Boundary evaluations spent in bisection and secant refinement.
    pub iterations: usize,
    /// Sign changes of `F` strictly inside `(0, r0)`.
    pub interior_zeros: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct ShootingOptions {
    /// Relative tolerance on `λ`.
    pub tol: f64,
    pub max_iterations: usize,
    pub max_scan_steps: usize,
    /// Relative step tolerance of the Runge–Kutta integrator.
    pub rtol: f64,
    /// Start the scan two steps below the closed-form eigenvalue.
    pub hinted: bool,
}

impl ShootingOptions {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            max_iterations: 200,
            max_scan_steps: 1_000_000,
            rtol: 1e-11,
            hinted: false,
        }
    }
}

/// Starting radius of the integration, as a fraction of `r0`.
pub const SERIES_START: f64 = 1e-6;

struct Shot {
    value: f64,
    slope: f64,
    interior_zeros: usize,
}

struct Shooter<'a> {
    ball: &'a GeodesicBall,
    rtol: f64,
}

impl Shooter<'_> {
    /// Integrates the regular solution for `λ` out to `r0`.
    fn shoot(&self, lambda: f64) -> Result<Shot> {
        let space = self.ball.space();
        let k = space.curvature();
        let r0 = self.ball.radius();
        let eps = SERIES_START * r0;

        // F = 1 + a2 r² + a4 r⁴ + ...; matching powers in the ODE with
        // s'/s = 1/r - K r/3 + O(r³) gives a2 = -λ/6, a4 = λ(λ - 4K/3)/120.
        let a2 = -lambda / 6.0;
        let a4 = lambda * (lambda - 4.0 * k / 3.0) / 120.0;
        let e2 = eps * eps;
        let y0 = [
            1.0 + a2 * e2 + a4 * e2 * e2,
            eps * (2.0 * a2 + 4.0 * a4 * e2),
        ];

        let wavenumber = (lambda.abs() + k.abs() + (PI / r0).powi(2)).sqrt();
        let tol = Tolerances {
            rtol: self.rtol,
            atol: 0.0,
            max_steps: 2_000_000,
            max_step: r0 / 64.0,
            coupling_length: Some(1.0 / wavenumber),
        };

        let mut zeros = 0usize;
        let mut prev_sign = 1.0f64;
        let (y, _) = ode::integrate(
            |r, y| [y[1], -2.0 * space.log_ds(r) * y[1] - lambda * y[0]],
            eps,
            y0,
            r0,
            &tol,
            |r, y| {
                // the final step ends on the boundary zero itself
                if r < r0 && y[0] != 0.0 {
                    let sign = y[0].signum();
                    if sign != prev_sign {
                        zeros += 1;
                        prev_sign = sign;
                    }
                }
            },
        )?;
        Ok(Shot {
            value: y[0],
            slope: y[1],
            interior_zeros: zeros,
        })
    }
}

/// Closed-form-blind solve for the `n`-th radial Dirichlet eigenvalue.
pub fn solve_eigenvalue_numeric(ball: &GeodesicBall, n: u32, tol: f64) -> Result<ShootingResult> {
    solve_eigenvalue_with(ball, n, &ShootingOptions::new(tol))
}

pub fn solve_eigenvalue_with(
    ball: &GeodesicBall,
    n: u32,
    opts: &ShootingOptions,
) -> Result<ShootingResult> {
    if n < 1 {
        return Err(Error::InvalidMode(n));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {}",
            opts.tol
        )));
    }
    let shooter = Shooter {
        ball,
        rtol: opts.rtol,
    };
    let k = ball.curvature();
    let r0 = ball.radius();
    let step = (PI / r0).powi(2) / 4.0;
    // below max(0, -K) the regular solution has no zeros
    let floor = (-k).max(0.0);
    let mut lo = floor + 1e-3 * step;
    if opts.hinted {
        let guess = (f64::from(n) * PI / r0).powi(2) - k;
        lo = lo.max(guess - 2.0 * step);
    }

    // scan
    let mut f_lo = shooter.shoot(lo)?.value;
    let mut changes = 0u32;
    let mut bracket = None;
    for _ in 0..opts.max_scan_steps {
        let hi = lo + step;
        let f_hi = shooter.shoot(hi)?.value;
        if f_hi == 0.0 || f_lo.signum() != f_hi.signum() {
            changes += 1;
            let done = if opts.hinted {
                let zeros = shooter.shoot(lo)?.interior_zeros;
                zeros + 1 == n as usize
            } else {
                changes == n
            };
            if done {
                bracket = Some((lo, f_lo, hi, f_hi));
                break;
            }
        }
        lo = hi;
        f_lo = f_hi;
    }
    let Some((mut a, mut fa, mut b, mut fb)) = bracket else {
        return Err(Error::BracketNotFound(format!(
            "mode {n} not reached after {} scan steps",
            opts.max_scan_steps
        )));
    };

    let mut iterations = 0usize;
    if fb == 0.0 {
        return finish(&shooter, b, iterations, n);
    }

    // bisection down to a thousandth of the scan step
    while b - a > 1e-3 * step {
        iterations += 1;
        if iterations > opts.max_iterations {
            return Err(non_convergence(n, iterations));
        }
        let m = 0.5 * (a + b);
        let fm = shooter.shoot(m)?.value;
        if fm == 0.0 {
            return finish(&shooter, m, iterations, n);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }

    // safeguarded secant
    let (mut x0, mut f0, mut x1, mut f1) = (a, fa, b, fb);
    loop {
        iterations += 1;
        if iterations > opts.max_iterations {
            return Err(non_convergence(n, iterations));
        }
        let mut x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !(x2 > a && x2 < b) {
            x2 = 0.5 * (a + b);
        }
        let f2 = shooter.shoot(x2)?.value;
        let moved = (x2 - x1).abs();
        if f2 == 0.0
            || moved <= 0.1 * opts.tol * x2.abs()
            || moved <= 4.0 * f64::EPSILON * x2.abs().max(step)
        {
            return finish(&shooter, x2, iterations, n);
        }
        if f2.signum() == fa.signum() {
            a = x2;
            fa = f2;
        } else {
            b = x2;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
    }
}

fn finish(shooter: &Shooter<'_>, lambda: f64, iterations: usize, n: u32) -> Result<ShootingResult> {
    let shot = shooter.shoot(lambda)?;
    let r0 = shooter.ball.radius();
    let residual = if shot.slope == 0.0 {
        shot.value.abs()
    } else {
        (shot.value / (shot.slope * r0)).abs()
    };
    if shot.interior_zeros + 1 != n as usize {
        return Err(Error::NonConvergence {
            what: format!(
                "mode {n} converged to a solution with {} interior zeros",
                shot.interior_zeros
            ),
            iterations,
        });
    }
    Ok(ShootingResult {
        lambda_hat: lambda,
        boundary_residual: residual,
        iterations,
        interior_zeros: shot.interior_zeros,
    })
}

fn non_convergence(n: u32, iterations: usize) -> Error {
    Error::NonConvergence {
        what: format!("eigenvalue refinement for mode {n}"),
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ball(k: f64, r0: f64) -> GeodesicBall {
        GeodesicBall::with_curvature(k, r0).unwrap()
    }

    #[test]
    fn flat_ground_state() {
        let res = solve_eigenvalue_numeric(&ball(0.0, 1.0), 1, 1e-8).unwrap();
        assert_relative_eq!(res.lambda_hat, PI * PI, max_relative = 1e-8);
        assert_eq!(res.interior_zeros, 0);
        assert!(res.boundary_residual < 1e-8);
    }

    #[test]
    fn hemisphere_ground_state() {
        let res = solve_eigenvalue_numeric(&ball(1.0, PI / 2.0), 1, 1e-8).unwrap();
        assert_relative_eq!(res.lambda_hat, 3.0, max_relative = 1e-8);
    }

    #[test]
    fn hyperbolic_ground_state() {
        let res = solve_eigenvalue_numeric(&ball(-1.0, PI), 1, 1e-8).unwrap();
        assert_relative_eq!(res.lambda_hat, 2.0, max_relative = 1e-8);
    }

    #[test]
    fn hyperbolic_second_mode() {
        let res = solve_eigenvalue_numeric(&ball(-1.0, PI), 2, 1e-8).unwrap();
        assert_relative_eq!(res.lambda_hat, 5.0, max_relative = 1e-8);
        assert_eq!(res.interior_zeros, 1);
    }

    #[test]
    fn hinted_agrees_with_blind() {
        let b = ball(4.0, 1.2);
        let blind = solve_eigenvalue_numeric(&b, 3, 1e-9).unwrap();
        let mut opts = ShootingOptions::new(1e-9);
        opts.hinted = true;
        let hinted = solve_eigenvalue_with(&b, 3, &opts).unwrap();
        assert_relative_eq!(blind.lambda_hat, hinted.lambda_hat, max_relative = 1e-9);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            solve_eigenvalue_numeric(&ball(0.0, 1.0), 0, 1e-8),
            Err(Error::InvalidMode(0))
        );
        assert!(solve_eigenvalue_numeric(&ball(0.0, 1.0), 1, 0.0).is_err());
    }

    #[test]
    fn scan_budget_exhaustion_is_reported() {
        let mut opts = ShootingOptions::new(1e-8);
        opts.max_scan_steps = 3;
        assert!(matches!(
            solve_eigenvalue_with(&ball(0.0, 1.0), 5, &opts),
            Err(Error::BracketNotFound(_))
        ));
    }

    #[test]
    fn iteration_budget_exhaustion_is_reported() {
        let mut opts = ShootingOptions::new(1e-8);
        opts.max_iterations = 2;
        assert!(matches!(
            solve_eigenvalue_with(&ball(0.0, 1.0), 1, &opts),
            Err(Error::NonConvergence { .. })
        ));
    }
}
