//! Constant-curvature model spaces in geodesic polar coordinates.
//!
//! In geodesic polar coordinates around any point the metric of the model
//! space of curvature `K` reads `dr² + s_K(r)² dΩ²`, with
//!
//! ```text
//! s_K(r) = sin(√K r)/√K     K > 0
//!        = r                K = 0
//!        = sinh(√|K| r)/√|K| K < 0
//! ```
//!
//! and the Riemannian volume element is `s_K(r)² sinθ dr dθ dφ`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this value of `|K| r²` the sin/sinh quotients are replaced by their
/// Taylor series in `K`.
pub const SMALL_CURVATURE: f64 = 1e-8;

/// The simply connected 3-dimensional model space of sectional curvature `K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSpace {
    k: f64,
}

/// Largest admissible geodesic radius of a space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaxRadius {
    /// `π/√K` for the sphere.
    Finite(f64),
    Unbounded,
}

impl MaxRadius {
    pub fn is_unbounded(&self) -> bool {
        matches!(self, MaxRadius::Unbounded)
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            MaxRadius::Finite(r) => Some(r),
            MaxRadius::Unbounded => None,
        }
    }
}

impl CurvatureSpace {
    pub fn new(k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::domain(format!("curvature must be finite, got {k}")));
        }
        Ok(Self { k })
    }

    pub const fn flat() -> Self {
        Self { k: 0.0 }
    }

    /// Sphere of radius `R`, i.e. `K = 1/R²`.
    pub fn sphere(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::domain(format!(
                "sphere radius must be positive, got {radius}"
            )));
        }
        Self::new(1.0 / (radius * radius))
    }

    /// Hyperbolic space with `K = -1/R²`.
    pub fn hyperbolic(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::domain(format!(
                "hyperbolic radius must be positive, got {radius}"
            )));
        }
        Self::new(-1.0 / (radius * radius))
    }

    #[inline]
    pub fn curvature(&self) -> f64 {
        self.k
    }

    /// `R` with `K = ±1/R²`; `None` for flat space.
    pub fn curvature_radius(&self) -> Option<f64> {
        (self.k != 0.0).then(|| 1.0 / self.k.abs().sqrt())
    }

    pub fn max_radius(&self) -> MaxRadius {
        if self.k > 0.0 {
            MaxRadius::Finite(PI / self.k.sqrt())
        } else {
            MaxRadius::Unbounded
        }
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::domain(format!(
                "radius must be finite and non-negative, got {r}"
            )));
        }
        if let MaxRadius::Finite(max) = self.max_radius() {
            if r > max {
                return Err(Error::domain(format!(
                    "radius {r} exceeds the diameter π/√K = {max} of the sphere K = {}",
                    self.k
                )));
            }
        }
        Ok(())
    }

    #[inline]
    fn is_small(&self, r: f64) -> bool {
        self.k.abs() * r * r < SMALL_CURVATURE
    }

    /// `s_K(r)`, the radius of the geodesic sphere of radius `r` divided by its
    /// angular extent. Unchecked; callers validate `r`.
    pub(crate) fn s(&self, r: f64) -> f64 {
        let k = self.k;
        if k == 0.0 {
            r
        } else if self.is_small(r) {
            let x = k * r * r;
            r * (1.0 - x / 6.0 + x * x / 120.0)
        } else if k > 0.0 {
            let q = k.sqrt();
            (q * r).sin() / q
        } else {
            let q = (-k).sqrt();
            (q * r).sinh() / q
        }
    }

    /// `s_K'(r)`. Unchecked.
    #[cfg(test)]
    pub(crate) fn ds(&self, r: f64) -> f64 {
        let k = self.k;
        if k == 0.0 {
            1.0
        } else if self.is_small(r) {
            let x = k * r * r;
            1.0 - x / 2.0 + x * x / 24.0
        } else if k > 0.0 {
            (k.sqrt() * r).cos()
        } else {
            ((-k).sqrt() * r).cosh()
        }
    }

    /// `s_K'(r)/s_K(r)`: half the first-derivative coefficient of the radial
    /// Laplacian. Singular like `1/r` at the origin.
    pub(crate) fn log_ds(&self, r: f64) -> f64 {
        let k = self.k;
        if k == 0.0 {
            1.0 / r
        } else if self.is_small(r) {
            // √K cot(√K r) = 1/r - K r/3 - K² r³/45 - ...
            let x = k * r * r;
            (1.0 - x / 3.0 - x * x / 45.0) / r
        } else if k > 0.0 {
            let q = k.sqrt();
            q / (q * r).tan()
        } else {
            let q = (-k).sqrt();
            q / (q * r).tanh()
        }
    }

    /// Metric factor `s_K(r)`.
    pub fn metric_factor(&self, r: f64) -> Result<f64> {
        self.check_radius(r)?;
        Ok(self.s(r))
    }

    /// Radial density `w(r) = s_K(r)²` of the volume measure.
    pub fn volume_weight(&self, r: f64) -> Result<f64> {
        self.check_radius(r)?;
        let s = self.s(r);
        Ok(s * s)
    }

    /// Volume of the geodesic ball of radius `r`, `4π ∫₀^r s_K(t)² dt`.
    ///
    /// Accepts `r = π/√K` on the sphere, where it returns the total volume
    /// `2π²/K^{3/2}`.
    pub fn ball_volume(&self, r: f64) -> Result<f64> {
        self.check_radius(r)?;
        let k = self.k;
        if k == 0.0 || self.is_small(r) {
            let r3 = r * r * r;
            let x = k * r * r;
            return Ok(4.0 * PI * r3 * (1.0 / 3.0 - x / 15.0 + 2.0 * x * x / 315.0));
        }
        let q = k.abs().sqrt();
        let y = 2.0 * q * r;
        let scale = PI / (q * q * q);
        Ok(if k > 0.0 {
            scale * x_minus_sin(y)
        } else {
            scale * sinh_minus_x(y)
        })
    }
}

/// `y - sin y` without cancellation for small `y`.
fn x_minus_sin(y: f64) -> f64 {
    if y.abs() >= 1.0 {
        return y - y.sin();
    }
    // y³/3! - y⁵/5! + ...
    let y2 = y * y;
    let mut term = y * y2 / 6.0;
    let mut sum = 0.0f64;
    let mut k = 1.0;
    while term.abs() > 1e-18 * sum.abs() {
        sum += term;
        term *= -y2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
        k += 1.0;
    }
    sum
}

/// `sinh y - y` without cancellation for small `y`.
fn sinh_minus_x(y: f64) -> f64 {
    if y.abs() >= 1.0 {
        return y.sinh() - y;
    }
    let y2 = y * y;
    let mut term = y * y2 / 6.0;
    let mut sum = 0.0f64;
    let mut k = 1.0;
    while term.abs() > 1e-18 * sum.abs() {
        sum += term;
        term *= y2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
        k += 1.0;
    }
    sum
}

/// A geodesic ball of radius `r0` around any point of a model space.
///
/// The radius is strictly positive and, on the sphere, strictly below the
/// diameter `π/√K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicBall {
    space: CurvatureSpace,
    r0: f64,
}

impl GeodesicBall {
    pub fn new(space: CurvatureSpace, r0: f64) -> Result<Self> {
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(Error::domain(format!(
                "ball radius must be positive and finite, got {r0}"
            )));
        }
        if let MaxRadius::Finite(max) = space.max_radius() {
            if r0 >= max {
                return Err(Error::domain(format!(
                    "ball radius {r0} must be below π/√K = {max} for K = {}",
                    space.curvature()
                )));
            }
        }
        Ok(Self { space, r0 })
    }

    /// Shorthand for `GeodesicBall::new(CurvatureSpace::new(k)?, r0)`.
    pub fn with_curvature(k: f64, r0: f64) -> Result<Self> {
        Self::new(CurvatureSpace::new(k)?, r0)
    }

    #[inline]
    pub fn space(&self) -> CurvatureSpace {
        self.space
    }

    #[inline]
    pub fn curvature(&self) -> f64 {
        self.space.curvature()
    }

    #[inline]
    pub fn radius(&self) -> f64 {
        self.r0
    }

    pub fn volume(&self) -> f64 {
        self.space
            .ball_volume(self.r0)
            .expect("validated ball has admissible radius")
    }

    pub fn contains_radius(&self, r: f64) -> bool {
        (0.0..=self.r0).contains(&r)
    }
}

pub fn metric_factor(space: CurvatureSpace, r: f64) -> Result<f64> {
    space.metric_factor(r)
}

pub fn volume_weight(space: CurvatureSpace, r: f64) -> Result<f64> {
    space.volume_weight(r)
}

pub fn ball_volume(space: CurvatureSpace, r: f64) -> Result<f64> {
    space.ball_volume(r)
}

pub fn max_radius(space: CurvatureSpace) -> MaxRadius {
    space.max_radius()
}

pub fn validate_ball(space: CurvatureSpace, r0: f64) -> Result<GeodesicBall> {
    GeodesicBall::new(space, r0)
}
