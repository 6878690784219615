//! Radial Dirichlet eigenpairs of the Laplace–Beltrami operator on a geodesic
//! ball.
//!
//! For zero angular momentum the radial equation is
//! `F'' + 2 (s_K'/s_K) F' + λ F = 0` with `F(r0) = 0`. The substitution
//! `u = s_K F` turns it into `u'' + (λ + K) u = 0`, so for every sign of `K`
//!
//! ```text
//! λ_n = (nπ/r0)² - K
//! F_n(r) = √(2/r0) · sin(nπ r/r0) / s_K(r)
//! ```
//!
//! which is normalized to one against the radial weight `s_K(r)² dr`. For
//! `K ≠ 0` this is the familiar `√(2|K|/r0) · sin(nπ r/r0) / sin(√K r)` (or
//! `sinh`) form; the flat case is the `K → 0` limit.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::GeodesicBall;
use crate::numerics::fd;

/// Fraction of `r0` below which the eigenfunction quotient is evaluated by
/// its Taylor expansion.
pub const ORIGIN_SERIES_FRACTION: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub n: u32,
    pub lambda: f64,
    pub norm_const: f64,
}

fn check_mode(n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidMode(n));
    }
    Ok(())
}

/// `λ_n = (nπ/r0)² - K`.
pub fn eigenvalue(ball: &GeodesicBall, n: u32) -> Result<f64> {
    check_mode(n)?;
    let k = f64::from(n) * PI / ball.radius();
    Ok(k * k - ball.curvature())
}

/// Prefactor of the normalized eigenfunction in its sin/sinh form:
/// `√(2K/r0)`, `√(2|K|/r0)`, or `√(2/r0)` in flat space. Independent of `n`.
pub fn normalization_constant(ball: &GeodesicBall, _n: u32) -> f64 {
    let k = ball.curvature();
    let r0 = ball.radius();
    if k == 0.0 {
        (2.0 / r0).sqrt()
    } else {
        (2.0 * k.abs() / r0).sqrt()
    }
}

pub fn eigenpair(ball: &GeodesicBall, n: u32) -> Result<EigenPair> {
    Ok(EigenPair {
        n,
        lambda: eigenvalue(ball, n)?,
        norm_const: normalization_constant(ball, n),
    })
}

/// `sin(πx)` with exact zeros at the integers.
fn sin_pi(x: f64) -> f64 {
    let m = x.round();
    let s = (PI * (x - m)).sin();
    if m.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn check_in_ball(ball: &GeodesicBall, r: f64) -> Result<()> {
    if !ball.contains_radius(r) {
        return Err(Error::domain(format!(
            "r = {r} outside [0, r0 = {}]",
            ball.radius()
        )));
    }
    Ok(())
}

/// Taylor data for `sin(kr)/(k s_K(r))` around the origin:
/// numerator `1 - a r² + b r⁴`, denominator `1 - α r² + β r⁴`.
struct OriginSeries {
    a: f64,
    b: f64,
    alpha: f64,
    beta: f64,
}

impl OriginSeries {
    fn new(wavenumber: f64, curvature: f64) -> Self {
        let k2 = wavenumber * wavenumber;
        Self {
            a: k2 / 6.0,
            b: k2 * k2 / 120.0,
            alpha: curvature / 6.0,
            beta: curvature * curvature / 120.0,
        }
    }

    fn value(&self, r: f64) -> f64 {
        let r2 = r * r;
        (1.0 - self.a * r2 + self.b * r2 * r2) / (1.0 - self.alpha * r2 + self.beta * r2 * r2)
    }

    fn derivative(&self, r: f64) -> f64 {
        let c2 = self.alpha - self.a;
        let c4 = self.alpha * self.alpha - self.beta - self.a * self.alpha + self.b;
        2.0 * c2 * r + 4.0 * c4 * r * r * r
    }
}

fn eigen_value_unchecked(ball: &GeodesicBall, n: u32, r: f64) -> f64 {
    let r0 = ball.radius();
    let wavenumber = f64::from(n) * PI / r0;
    let amp = (2.0 / r0).sqrt();
    if r < ORIGIN_SERIES_FRACTION * r0 {
        amp * wavenumber * OriginSeries::new(wavenumber, ball.curvature()).value(r)
    } else {
        amp * sin_pi(f64::from(n) * (r / r0)) / ball.space().s(r)
    }
}

fn eigen_derivative_unchecked(ball: &GeodesicBall, n: u32, r: f64) -> f64 {
    let r0 = ball.radius();
    let wavenumber = f64::from(n) * PI / r0;
    let amp = (2.0 / r0).sqrt();
    if r < ORIGIN_SERIES_FRACTION * r0 {
        amp * wavenumber * OriginSeries::new(wavenumber, ball.curvature()).derivative(r)
    } else {
        let space = ball.space();
        let s = space.s(r);
        let t = f64::from(n) * (r / r0);
        amp * (wavenumber * cos_pi(t) - sin_pi(t) * space.log_ds(r)) / s
    }
}

/// `F_n(r)` (or `G_n(r)` for `K < 0`), including the removable singularity at
/// the origin, where it equals `√(2/r0)·nπ/r0`.
pub fn eigenfunction_value(ball: &GeodesicBall, n: u32, r: f64) -> Result<f64> {
    check_mode(n)?;
    check_in_ball(ball, r)?;
    Ok(eigen_value_unchecked(ball, n, r))
}

pub fn eigenfunction_derivative(ball: &GeodesicBall, n: u32, r: f64) -> Result<f64> {
    check_mode(n)?;
    check_in_ball(ball, r)?;
    Ok(eigen_derivative_unchecked(ball, n, r))
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Profile {
    Eigen {
        n: u32,
    },
    /// `(r0 - r) Σ c_k (r/r0)^k`.
    Polynomial {
        coeffs: Vec<f64>,
    },
    /// Values on the uniform grid `r_i = i r0 / (len - 1)`, with slopes from
    /// fourth-order differences; cubic Hermite in between.
    Sampled {
        values: Vec<f64>,
        slopes: Vec<f64>,
    },
    Closure {
        f: ScalarFn,
        df: Option<ScalarFn>,
    },
}

/// A radial profile on `[0, r0]` of a geodesic ball.
#[derive(Clone)]
pub struct RadialFunction {
    ball: GeodesicBall,
    profile: Profile,
}

impl fmt::Debug for RadialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.profile {
            Profile::Eigen { n } => format!("Eigen(n = {n})"),
            Profile::Polynomial { coeffs } => format!("Polynomial({coeffs:?})"),
            Profile::Sampled { values, .. } => format!("Sampled({} points)", values.len()),
            Profile::Closure { df, .. } => {
                format!("Closure(analytic derivative: {})", df.is_some())
            }
        };
        f.debug_struct("RadialFunction")
            .field("ball", &self.ball)
            .field("profile", &kind)
            .finish()
    }
}

impl RadialFunction {
    /// The normalized `n`-th radial Dirichlet eigenfunction.
    pub fn eigenfunction(ball: GeodesicBall, n: u32) -> Result<Self> {
        check_mode(n)?;
        Ok(Self {
            ball,
            profile: Profile::Eigen { n },
        })
    }

    /// `ψ(r) = (r0 - r) Σ_k c_k (r/r0)^k`; vanishes at `r0` by construction.
    pub fn boundary_polynomial(ball: GeodesicBall, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain(
                "polynomial needs at least one finite coefficient",
            ));
        }
        Ok(Self {
            ball,
            profile: Profile::Polynomial { coeffs },
        })
    }

    /// Samples on the uniform grid `r_i = i·r0/(len-1)`, `i = 0..len`.
    pub fn sampled(ball: GeodesicBall, values: Vec<f64>) -> Result<Self> {
        if values.len() < 5 {
            return Err(Error::domain(
                "a sampled profile needs at least 5 grid points",
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("sampled values must be finite"));
        }
        let h = ball.radius() / (values.len() - 1) as f64;
        let slopes = fd::grid_first_derivative(&values, h);
        Ok(Self {
            ball,
            profile: Profile::Sampled { values, slopes },
        })
    }

    pub fn from_fn<F>(ball: GeodesicBall, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            ball,
            profile: Profile::Closure {
                f: Arc::new(f),
                df: None,
            },
        }
    }

    pub fn from_fn_with_derivative<F, D>(ball: GeodesicBall, f: F, df: D) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            ball,
            profile: Profile::Closure {
                f: Arc::new(f),
                df: Some(Arc::new(df)),
            },
        }
    }

    pub fn ball(&self) -> &GeodesicBall {
        &self.ball
    }

    /// Coefficients of a boundary polynomial, `None` for other profiles.
    pub fn coefficients(&self) -> Option<&[f64]> {
        match &self.profile {
            Profile::Polynomial { coeffs } => Some(coeffs),
            _ => None,
        }
    }

    /// `(abscissae, values)` of a sampled profile.
    pub fn sample_grid(&self) -> Option<(Vec<f64>, &[f64])> {
        match &self.profile {
            Profile::Sampled { values, .. } => {
                let h = self.ball.radius() / (values.len() - 1) as f64;
                let xs = (0..values.len()).map(|i| i as f64 * h).collect();
                Some((xs, values))
            }
            _ => None,
        }
    }

    pub fn has_analytic_derivative(&self) -> bool {
        match &self.profile {
            Profile::Eigen { .. } | Profile::Polynomial { .. } => true,
            Profile::Sampled { .. } => false,
            Profile::Closure { df, .. } => df.is_some(),
        }
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        check_in_ball(&self.ball, r)?;
        Ok(self.value_unchecked(r))
    }

    /// `ψ'(r)`: analytic where the profile carries a rule, fourth-order finite
    /// differences otherwise.
    pub fn derivative(&self, r: f64) -> Result<f64> {
        check_in_ball(&self.ball, r)?;
        Ok(self.derivative_unchecked(r))
    }

    pub(crate) fn value_unchecked(&self, r: f64) -> f64 {
        let r0 = self.ball.radius();
        match &self.profile {
            Profile::Eigen { n } => eigen_value_unchecked(&self.ball, *n, r),
            Profile::Polynomial { coeffs } => (r0 - r) * horner(coeffs, r / r0),
            Profile::Sampled { values, slopes } => {
                let (i, t, h) = locate(values.len(), r0, r);
                hermite(
                    values[i],
                    values[i + 1],
                    slopes[i] * h,
                    slopes[i + 1] * h,
                    t,
                )
            }
            Profile::Closure { f, .. } => f(r),
        }
    }

    pub(crate) fn derivative_unchecked(&self, r: f64) -> f64 {
        let r0 = self.ball.radius();
        match &self.profile {
            Profile::Eigen { n } => eigen_derivative_unchecked(&self.ball, *n, r),
            Profile::Polynomial { coeffs } => {
                let x = r / r0;
                -horner(coeffs, x) + (r0 - r) * horner_derivative(coeffs, x) / r0
            }
            Profile::Sampled { values, slopes } => {
                let (i, t, h) = locate(values.len(), r0, r);
                hermite_derivative(
                    values[i],
                    values[i + 1],
                    slopes[i] * h,
                    slopes[i + 1] * h,
                    t,
                ) / h
            }
            Profile::Closure { f, df } => match df {
                Some(df) => df(r),
                None => fd::first_derivative(|x| f(x), r, fd_step(r0), 0.0, r0),
            },
        }
    }

    /// `ψ''(r)` by fourth-order finite differences of the values.
    pub(crate) fn second_derivative_fd(&self, r: f64) -> f64 {
        let r0 = self.ball.radius();
        fd::second_derivative(|x| self.value_unchecked(x), r, fd_step(r0), 0.0, r0)
    }
}

pub(crate) fn fd_step(r0: f64) -> f64 {
    1e-3 * r0
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn horner_derivative(coeffs: &[f64], x: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (k, &c)| acc * x + k as f64 * c)
}

/// Cell index, local coordinate in `[0, 1]` and cell width.
fn locate(len: usize, r0: f64, r: f64) -> (usize, f64, f64) {
    let cells = len - 1;
    let h = r0 / cells as f64;
    let i = ((r / h).floor() as usize).min(cells - 1);
    (i, (r - i as f64 * h) / h, h)
}

fn hermite(p0: f64, p1: f64, m0: f64, m1: f64, t: f64) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    (2.0 * t3 - 3.0 * t2 + 1.0) * p0
        + (t3 - 2.0 * t2 + t) * m0
        + (-2.0 * t3 + 3.0 * t2) * p1
        + (t3 - t2) * m1
}

fn hermite_derivative(p0: f64, p1: f64, m0: f64, m1: f64, t: f64) -> f64 {
    let t2 = t * t;
    (6.0 * t2 - 6.0 * t) * p0
        + (3.0 * t2 - 4.0 * t + 1.0) * m0
        + (-6.0 * t2 + 6.0 * t) * p1
        + (3.0 * t2 - 2.0 * t) * m1
}
