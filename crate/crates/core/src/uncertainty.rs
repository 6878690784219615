//! Momentum-uncertainty bounds for a particle strictly localized in a
//! geodesic ball.
//!
//! The momentum deviation of any state supported in the ball obeys
//! `σ_p ≥ ħ √λ₁`, with equality for the ground state, so in curvature `K`
//!
//! ```text
//! σ_p r0 ≥ π ħ √(1 - K r0²/π²).
//! ```

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CurvatureSpace, GeodesicBall, MaxRadius};
use crate::numerics::QuadratureSpec;
use crate::spectra::eigenvalue;
use crate::table::{Asymptote, BoundRow, BoundTable};

fn check_hbar(hbar: f64) -> Result<()> {
    if !(hbar > 0.0) || !hbar.is_finite() {
        return Err(Error::domain(format!(
            "ħ must be positive and finite, got {hbar}"
        )));
    }
    Ok(())
}

/// Largest lower bound `ħ √λ₁ = ħ √((π/r0)² - K)` of the momentum deviation.
pub fn momentum_lower_bound(ball: &GeodesicBall, hbar: f64) -> Result<f64> {
    check_hbar(hbar)?;
    Ok(hbar * eigenvalue(ball, 1)?.sqrt())
}

/// `π ħ √(1 - K r0²/π²)`, the bound on `σ_p r0`. Exactly `π ħ` in flat space.
pub fn uncertainty_product(ball: &GeodesicBall, hbar: f64) -> Result<f64> {
    check_hbar(hbar)?;
    let r0 = ball.radius();
    let k = ball.curvature();
    Ok(PI * hbar * (1.0 - k * r0 * r0 / (PI * PI)).sqrt())
}

/// `ħ √|K|`, the radius-independent floor of the bound in hyperbolic space.
pub fn hyperbolic_floor(space: CurvatureSpace, hbar: f64) -> Result<f64> {
    check_hbar(hbar)?;
    let k = space.curvature();
    if k >= 0.0 {
        return Err(Error::domain(format!(
            "the momentum floor needs K < 0, got K = {k}"
        )));
    }
    Ok(hbar * (-k).sqrt())
}

/// `momentum_lower_bound - hyperbolic_floor`, evaluated as
/// `ħ (π/r0)² / (√λ₁ + √|K|)` so it stays positive for radii where the two
/// terms agree to all printed digits.
pub fn floor_excess(ball: &GeodesicBall, hbar: f64) -> Result<f64> {
    let floor = hyperbolic_floor(ball.space(), hbar)?;
    let q = PI / ball.radius();
    Ok(hbar * q * q / (momentum_lower_bound(ball, hbar)? + floor))
}

/// First-order expansion `π ħ (1/r0 - K r0/(2π²))` of the bound, without the
/// remainder.
pub fn taylor_bound(ball: &GeodesicBall, hbar: f64) -> Result<f64> {
    check_hbar(hbar)?;
    let r0 = ball.radius();
    Ok(PI * hbar * (1.0 / r0 - ball.curvature() * r0 / (2.0 * PI * PI)))
}

/// `(exact - taylor)/exact` in a cancellation-free form: with
/// `x = K r0²/π²` it is `-(x²/4) / ((√(1-x) + 1 - x/2) √(1-x))`.
pub fn taylor_relative_error(ball: &GeodesicBall) -> f64 {
    let r0 = ball.radius();
    let x = ball.curvature() * r0 * r0 / (PI * PI);
    let root = (1.0 - x).sqrt();
    -(x * x / 4.0) / ((root + 1.0 - x / 2.0) * root)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremumKind {
    /// `K < 0`: the expansion has a finite minimizer.
    Minimum,
    /// `K > 0`: the expansion crosses zero.
    Root,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaylorExtremum {
    pub radius: f64,
    pub kind: ExtremumKind,
    /// Whether `radius` is an admissible geodesic radius of the space.
    pub in_domain: bool,
}

/// `r = π √(2/|K|)`: the minimizer of the expansion for `K < 0`, its zero
/// for `K > 0` (which lies beyond the diameter `π/√K`).
pub fn taylor_extremum(space: CurvatureSpace) -> Result<TaylorExtremum> {
    let k = space.curvature();
    if k == 0.0 {
        return Err(Error::domain("the expansion has no extremum in flat space"));
    }
    let radius = PI * (2.0 / k.abs()).sqrt();
    let (kind, in_domain) = match space.max_radius() {
        MaxRadius::Finite(max) => (ExtremumKind::Root, radius < max),
        MaxRadius::Unbounded => (ExtremumKind::Minimum, true),
    };
    Ok(TaylorExtremum {
        radius,
        kind,
        in_domain,
    })
}

/// Bound curves `r ↦ ħ√λ₁(K, r)` on `steps` equally spaced radii in
/// `[r_min, r_max]`, one block per curvature in the order given. Radii at or
/// beyond `π/√K` are dropped for positive `K`.
pub fn figure1_table(
    k_list: &[f64],
    r_min: f64,
    r_max: f64,
    steps: usize,
    hbar: f64,
) -> Result<BoundTable> {
    check_hbar(hbar)?;
    if k_list.is_empty() {
        return Err(Error::EmptyRange("no curvatures requested".into()));
    }
    if !(r_min > 0.0) || !r_max.is_finite() || r_max < r_min {
        return Err(Error::EmptyRange(format!(
            "radius range [{r_min}, {r_max}] must satisfy 0 < r_min <= r_max"
        )));
    }
    if steps == 0 || (steps == 1 && r_max != r_min) {
        return Err(Error::EmptyRange(format!(
            "{steps} steps cannot span [{r_min}, {r_max}]"
        )));
    }
    let radii: Vec<f64> = (0..steps)
        .map(|i| {
            if i + 1 == steps {
                r_max
            } else {
                r_min + (r_max - r_min) * (i as f64 / (steps - 1) as f64)
            }
        })
        .collect();

    let mut rows = Vec::with_capacity(k_list.len() * steps);
    let mut asymptotes = Vec::new();
    for &k in k_list {
        let space = CurvatureSpace::new(k)?;
        let before = rows.len();
        for &r in &radii {
            let Ok(ball) = GeodesicBall::new(space, r) else {
                continue;
            };
            let sigma = momentum_lower_bound(&ball, hbar)?;
            rows.push(BoundRow {
                k,
                r,
                sigma_p_min: sigma,
                product: sigma * r,
            });
        }
        if rows.len() == before {
            return Err(Error::EmptyRange(format!(
                "no radius in [{r_min}, {r_max}] is admissible for K = {k}"
            )));
        }
        if k < 0.0 {
            asymptotes.push(Asymptote {
                k,
                sigma_p_floor: hyperbolic_floor(space, hbar)?,
            });
        }
    }
    Ok(BoundTable {
        hbar,
        rows,
        asymptotes,
    })
}

/// Outcome of comparing `λ₁` with the Reilly lower bound `n k = 3K` for a
/// ball on the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReillyCheck {
    pub lambda1: f64,
    pub reilly_bound: f64,
    /// `r0 ≤ π/(2√K)`: the ball lies in a hemisphere, so its boundary is
    /// weakly convex and the bound applies.
    pub hypothesis: bool,
    pub satisfied: bool,
    /// `λ₁ = 3K` to relative `1e-12`.
    pub equality: bool,
}

impl ReillyCheck {
    /// The implication "hypothesis ⇒ λ₁ ≥ 3K".
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.satisfied
    }
}

pub const REILLY_EQUALITY_TOL: f64 = 1e-12;

pub fn reilly_check(ball: &GeodesicBall) -> Result<ReillyCheck> {
    let k = ball.curvature();
    if k <= 0.0 {
        return Err(Error::domain(format!(
            "the Reilly comparison needs K > 0, got K = {k}"
        )));
    }
    let lambda1 = eigenvalue(ball, 1)?;
    let reilly_bound = 3.0 * k;
    let equality = (lambda1 - reilly_bound).abs() <= REILLY_EQUALITY_TOL * reilly_bound;
    Ok(ReillyCheck {
        lambda1,
        reilly_bound,
        hypothesis: ball.radius() <= PI / (2.0 * k.sqrt()),
        satisfied: lambda1 >= reilly_bound || equality,
        equality,
    })
}

fn check_rs(r_s: f64) -> Result<()> {
    if !(r_s > 0.0) || !r_s.is_finite() {
        return Err(Error::domain(format!(
            "Schwarzschild radius must be positive, got {r_s}"
        )));
    }
    Ok(())
}

/// Proper radial distance from the centre to the horizon, `π r_s / 2`.
pub fn schwarzschild_geodesic_radius(r_s: f64) -> Result<f64> {
    check_rs(r_s)?;
    Ok(PI * r_s / 2.0)
}

/// `∫₀^{r_s} |1 - r_s/ρ|^{-1/2} dρ` by Gauss–Legendre after the substitution
/// `ρ = r_s sin²θ`, which removes both endpoint singularities. Panels are
/// doubled until successive estimates agree to `tol` relative.
pub fn schwarzschild_integral_numeric(r_s: f64, tol: f64) -> Result<f64> {
    check_rs(r_s)?;
    if !(tol > 0.0) {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let integrand = |theta: f64| {
        let (sin, cos) = theta.sin_cos();
        let rho = r_s * sin * sin;
        let jacobian = 2.0 * r_s * sin * cos;
        (1.0 - r_s / rho).abs().powf(-0.5) * jacobian
    };
    let mut panels = 1usize;
    let mut previous = QuadratureSpec::new(16, 1)?.integrate(0.0, PI / 2.0, integrand);
    const MAX_PANELS: usize = 1 << 16;
    while panels < MAX_PANELS {
        panels *= 2;
        let current = QuadratureSpec::new(16 * panels, panels)?.integrate(0.0, PI / 2.0, integrand);
        if (current - previous).abs() <= 0.1 * tol * current.abs() {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::NonConvergence {
        what: format!("Schwarzschild radial integral for r_s = {r_s}"),
        iterations: panels,
    })
}

/// `ħ`, `G`, `c` in one consistent unit system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub g: f64,
    pub c: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64, g: f64, c: f64) -> Result<Self> {
        for (name, v) in [("ħ", hbar), ("G", g), ("c", c)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self { hbar, g, c })
    }

    /// `ħ = G = c = 1`.
    pub const fn natural() -> Self {
        Self {
            hbar: 1.0,
            g: 1.0,
            c: 1.0,
        }
    }

    /// CODATA 2018 values in SI units.
    pub const fn codata_2018() -> Self {
        Self {
            hbar: 1.054_571_817e-34,
            g: 6.674_30e-11,
            c: 299_792_458.0,
        }
    }
}

/// `l_P = √(ħ G / c³)`.
pub fn planck_length(constants: &PhysicalConstants) -> f64 {
    (constants.hbar * constants.g / constants.c.powi(3)).sqrt()
}

/// Lower bound `2 l_P` on the Schwarzschild radius of a particle localized
/// inside its own horizon.
pub fn min_schwarzschild_radius(constants: &PhysicalConstants) -> f64 {
    2.0 * planck_length(constants)
}

/// `σ_p ≥ 2ħ/r_s`: the flat-space bound on a ball whose geodesic radius is
/// the proper horizon distance `π r_s/2`.
pub fn schwarzschild_momentum_bound(r_s: f64, hbar: f64) -> Result<f64> {
    let ball = GeodesicBall::new(CurvatureSpace::flat(), schwarzschild_geodesic_radius(r_s)?)?;
    momentum_lower_bound(&ball, hbar)
}

/// `r_s ≥ 2G σ_p / c³`: the horizon a particle of momentum deviation `σ_p`
/// must at least have.
pub fn schwarzschild_radius_from_momentum(sigma_p: f64, constants: &PhysicalConstants) -> f64 {
    2.0 * constants.g / constants.c.powi(3) * sigma_p
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ball(k: f64, r0: f64) -> GeodesicBall {
        GeodesicBall::with_curvature(k, r0).unwrap()
    }

    fn space(k: f64) -> CurvatureSpace {
        CurvatureSpace::new(k).unwrap()
    }

    #[test]
    fn bound_examples() {
        assert_eq!(momentum_lower_bound(&ball(0.0, 1.0), 1.0).unwrap(), PI);
        let near_pi = momentum_lower_bound(&ball(1.0, PI * (1.0 - 1e-8)), 1.0).unwrap();
        assert!(near_pi < 1e-3 && near_pi > 0.0);
        let hyp = momentum_lower_bound(&ball(-1.0, 1.0), 1.0).unwrap();
        assert_relative_eq!(hyp, (PI * PI + 1.0).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(hyp, 3.2969, epsilon = 1e-4);
        assert!(momentum_lower_bound(&ball(0.0, 1.0), -1.0).is_err());
    }

    #[test]
    fn product_examples() {
        for &r0 in &[0.1, 1.0, 7.3, 1e5] {
            assert_eq!(uncertainty_product(&ball(0.0, r0), 1.0).unwrap(), PI);
        }
        let p = uncertainty_product(&ball(1.0, PI / 2.0), 1.0).unwrap();
        assert_relative_eq!(p, PI / 2.0 * 3f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(p, 2.7207, epsilon = 1e-4);
        let p = uncertainty_product(&ball(-1.0, 10.0), 1.0).unwrap();
        assert_relative_eq!(
            p,
            10.0 * (PI * PI / 100.0 + 1.0).sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(p, 10.4819, epsilon = 1e-4);
    }

    #[test]
    fn floor_examples() {
        assert_eq!(hyperbolic_floor(space(-1.0), 1.0).unwrap(), 1.0);
        assert_eq!(hyperbolic_floor(space(-4.0), 1.0).unwrap(), 2.0);
        assert!(hyperbolic_floor(space(0.0), 1.0).is_err());
        assert!(hyperbolic_floor(space(2.0), 1.0).is_err());
        let b = ball(-1.0, 1e3);
        let excess = momentum_lower_bound(&b, 1.0).unwrap() - 1.0;
        assert_relative_eq!(excess, 4.93e-6, max_relative = 1e-3);
        assert_relative_eq!(floor_excess(&b, 1.0).unwrap(), excess, max_relative = 1e-9);
        assert!(floor_excess(&ball(-1.0, 1e12), 1.0).unwrap() > 0.0);
    }

    #[test]
    fn taylor_examples() {
        assert_eq!(taylor_bound(&ball(0.0, 1.0), 1.0).unwrap(), PI);
        let t = taylor_bound(&ball(-1.0, 1.0), 1.0).unwrap();
        assert_relative_eq!(t, PI + 1.0 / (2.0 * PI), max_relative = 1e-15);
        assert_relative_eq!(t, 3.30075, epsilon = 1e-5);
        let t = taylor_bound(&ball(1.0, 1.0), 1.0).unwrap();
        assert_relative_eq!(t, PI - 1.0 / (2.0 * PI), max_relative = 1e-15);
        assert_relative_eq!(t, 2.98244, epsilon = 1e-5);
    }

    #[test]
    fn stable_taylor_error_matches_direct_difference() {
        for &(k, r0) in &[(-1.0, 1.0), (1.0, 1.0), (-4.0, 0.3), (0.25, 2.0)] {
            let b = ball(k, r0);
            let exact = momentum_lower_bound(&b, 1.0).unwrap();
            let direct = (exact - taylor_bound(&b, 1.0).unwrap()) / exact;
            assert_relative_eq!(taylor_relative_error(&b), direct, max_relative = 1e-9);
        }
        assert_eq!(taylor_relative_error(&ball(0.0, 3.0)), 0.0);
    }

    #[test]
    fn extremum_examples() {
        let e = taylor_extremum(space(-1.0)).unwrap();
        assert_relative_eq!(e.radius, PI * 2f64.sqrt(), max_relative = 1e-15);
        assert_eq!((e.kind, e.in_domain), (ExtremumKind::Minimum, true));
        let e = taylor_extremum(space(1.0)).unwrap();
        assert_relative_eq!(e.radius, PI * 2f64.sqrt(), max_relative = 1e-15);
        assert_eq!((e.kind, e.in_domain), (ExtremumKind::Root, false));
        assert_relative_eq!(
            taylor_extremum(space(-2.0)).unwrap().radius,
            PI,
            max_relative = 1e-15
        );
        assert!(taylor_extremum(space(0.0)).is_err());
    }

    #[test]
    fn table_examples() {
        let t = figure1_table(&[1.0, 0.0, -1.0], 0.05, PI, 200, 1.0).unwrap();
        let k1: Vec<_> = t.rows.iter().filter(|r| r.k == 1.0).collect();
        assert_eq!(k1.len(), 199);
        assert!(k1.last().unwrap().sigma_p_min < 0.2);
        let k0_last = t.rows.iter().rfind(|r| r.k == 0.0).unwrap();
        assert_eq!(k0_last.r, PI);
        assert_eq!(k0_last.sigma_p_min, 1.0);
        assert_eq!(t.asymptotes.len(), 1);
        assert_eq!(t.asymptotes[0].sigma_p_floor, 1.0);
        for row in &t.rows {
            assert_eq!(row.product, row.sigma_p_min * row.r);
        }
        let t = figure1_table(&[-1.0], 20.0, 20.0, 1, 1.0).unwrap();
        assert_relative_eq!(t.rows[0].sigma_p_min, 1.0123, epsilon = 1e-4);
    }

    #[test]
    fn table_rejects_empty_ranges() {
        assert!(matches!(
            figure1_table(&[4.0], 2.0, 3.0, 5, 1.0),
            Err(Error::EmptyRange(_))
        ));
        assert!(figure1_table(&[], 1.0, 2.0, 5, 1.0).is_err());
        assert!(figure1_table(&[0.0], 0.0, 2.0, 5, 1.0).is_err());
        assert!(figure1_table(&[0.0], 2.0, 1.0, 5, 1.0).is_err());
        assert!(figure1_table(&[0.0], 1.0, 2.0, 0, 1.0).is_err());
        assert!(figure1_table(&[0.0], 1.0, 2.0, 1, 1.0).is_err());
    }

    #[test]
    fn reilly_examples() {
        let c = reilly_check(&ball(1.0, PI / 2.0)).unwrap();
        assert!(c.hypothesis && c.equality && c.holds());
        assert_eq!(c.lambda1, 3.0);
        let c = reilly_check(&ball(1.0, PI / 4.0)).unwrap();
        assert!(c.hypothesis && c.satisfied && !c.equality);
        assert_relative_eq!(c.lambda1, 15.0, max_relative = 1e-15);
        let c = reilly_check(&ball(1.0, 0.9 * PI)).unwrap();
        assert!(!c.hypothesis && !c.satisfied && c.holds());
        assert_relative_eq!(c.lambda1, 0.2346, epsilon = 1e-4);
        assert!(reilly_check(&ball(0.0, 1.0)).is_err());
    }

    #[test]
    fn schwarzschild_examples() {
        assert_eq!(schwarzschild_geodesic_radius(1.0).unwrap(), PI / 2.0);
        assert_eq!(schwarzschild_geodesic_radius(2.0).unwrap(), PI);
        assert_eq!(schwarzschild_geodesic_radius(0.5).unwrap(), PI / 4.0);
        assert!(schwarzschild_geodesic_radius(0.0).is_err());
        for &rs in &[1e-3, 1.0, 3.0] {
            let v = schwarzschild_integral_numeric(rs, 1e-6).unwrap();
            assert_relative_eq!(v, PI * rs / 2.0, max_relative = 1e-6);
        }
        assert!(schwarzschild_integral_numeric(-1.0, 1e-6).is_err());
        assert!(schwarzschild_integral_numeric(1.0, 0.0).is_err());
    }

    #[test]
    fn planck_examples() {
        assert_eq!(planck_length(&PhysicalConstants::natural()), 1.0);
        assert_eq!(
            planck_length(&PhysicalConstants::new(4.0, 1.0, 1.0).unwrap()),
            2.0
        );
        let lp = planck_length(&PhysicalConstants::codata_2018());
        assert_relative_eq!(lp, 1.616e-35, max_relative = 1e-3);
        assert!(PhysicalConstants::new(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn schwarzschild_chain() {
        assert_eq!(min_schwarzschild_radius(&PhysicalConstants::natural()), 2.0);
        assert_eq!(schwarzschild_momentum_bound(1.0, 1.0).unwrap(), 2.0);
        // r_s = (2G/c³)(2ħ/r_s) has the positive root 2 l_P
        let c = PhysicalConstants::new(0.7, 3.0, 1.3).unwrap();
        let rs = min_schwarzschild_radius(&c);
        let sigma = schwarzschild_momentum_bound(rs, c.hbar).unwrap();
        assert_relative_eq!(
            schwarzschild_radius_from_momentum(sigma, &c),
            rs,
            max_relative = 1e-14
        );
    }
}
