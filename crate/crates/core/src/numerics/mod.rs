//! Independent numerical checks of the closed-form spectrum: weighted
//! quadrature, Rayleigh quotients, a shooting eigen-solver for the singular
//! radial ODE and seeded random trial states.

pub mod fd;
pub mod ode;
pub mod quadrature;
pub mod shooting;
pub mod trial;

pub use quadrature::{gauss_legendre, QuadratureScheme, QuadratureSpec};
pub use shooting::{
    solve_eigenvalue_numeric, solve_eigenvalue_with, ShootingOptions, ShootingResult,
};
pub use trial::random_trial_function;

use crate::error::{Error, Result};
use crate::geometry::{CurvatureSpace, GeodesicBall};
use crate::spectra::RadialFunction;

/// `∫₀^{r0} g(r) w(r) dr` with the radial volume weight `w = s_K²`.
pub fn integrate_weighted<G: FnMut(f64) -> f64>(
    ball: &GeodesicBall,
    quad: &QuadratureSpec,
    g: G,
) -> f64 {
    weighted_integral(ball.space(), ball.radius(), quad, g)
}

/// `∫₀^{r_end} g(r) w(r) dr` for any admissible `r_end`, including the full
/// sphere `r_end = π/√K`.
pub fn integrate_weighted_to<G: FnMut(f64) -> f64>(
    space: CurvatureSpace,
    r_end: f64,
    quad: &QuadratureSpec,
    g: G,
) -> Result<f64> {
    space.metric_factor(r_end)?;
    Ok(weighted_integral(space, r_end, quad, g))
}

fn weighted_integral<G: FnMut(f64) -> f64>(
    space: CurvatureSpace,
    r_end: f64,
    quad: &QuadratureSpec,
    mut g: G,
) -> f64 {
    quad.integrate(0.0, r_end, |r| {
        let s = space.s(r);
        g(r) * s * s
    })
}

/// `∫ ψ² w dr`.
pub fn norm_squared(psi: &RadialFunction, quad: &QuadratureSpec) -> f64 {
    integrate_weighted(psi.ball(), quad, |r| psi.value_unchecked(r).powi(2))
}

/// `∫ φ ψ w dr`; both profiles are evaluated on the ball of `phi`.
pub fn inner_product(phi: &RadialFunction, psi: &RadialFunction, quad: &QuadratureSpec) -> f64 {
    integrate_weighted(phi.ball(), quad, |r| {
        phi.value_unchecked(r) * psi.value_unchecked(r)
    })
}

fn check_state(psi: &RadialFunction, quad: &QuadratureSpec) -> Result<f64> {
    let r0 = psi.ball().radius();
    let den = norm_squared(psi, quad);
    if !(den > 0.0) || !den.is_finite() {
        return Err(Error::ZeroNorm(format!("weighted norm² = {den}")));
    }
    let peak = quad
        .nodes(0.0, r0)
        .map(|(r, _)| psi.value_unchecked(r).abs())
        .fold(0.0, f64::max);
    let edge = psi.value_unchecked(r0).abs();
    if edge > 1e-9 * peak {
        return Err(Error::domain(format!(
            "state does not satisfy the Dirichlet condition: |ψ(r0)| = {edge}"
        )));
    }
    Ok(den)
}

/// `∫ ψ'² w dr / ∫ ψ² w dr`, the quadratic form of `-Δ` on a Dirichlet state.
pub fn rayleigh_quotient(psi: &RadialFunction, quad: &QuadratureSpec) -> Result<f64> {
    let den = check_state(psi, quad)?;
    let num = integrate_weighted(psi.ball(), quad, |r| psi.derivative_unchecked(r).powi(2));
    Ok(num / den)
}

/// Same quotient computed from `-∫ ψ Δψ w dr` with the radial Laplacian
/// `Δψ = ψ'' + 2 (s'/s) ψ'` and `ψ''` by finite differences.
pub fn laplacian_quotient(psi: &RadialFunction, quad: &QuadratureSpec) -> Result<f64> {
    let den = check_state(psi, quad)?;
    let space = psi.ball().space();
    let num = integrate_weighted(psi.ball(), quad, |r| {
        let lap = psi.second_derivative_fd(r) + 2.0 * space.log_ds(r) * psi.derivative_unchecked(r);
        -psi.value_unchecked(r) * lap
    });
    Ok(num / den)
}

/// `σ_p = ħ √(Rayleigh quotient)`.
pub fn momentum_stddev(psi: &RadialFunction, quad: &QuadratureSpec, hbar: f64) -> Result<f64> {
    if !(hbar > 0.0) || !hbar.is_finite() {
        return Err(Error::domain(format!("ħ must be positive, got {hbar}")));
    }
    Ok(hbar * rayleigh_quotient(psi, quad)?.sqrt())
}
