//! The invariant grid behind `curvlab verify`.

use std::f64::consts::PI;

use curvlab::geometry::GeodesicBall;
use curvlab::numerics::{
    inner_product, random_trial_function, rayleigh_quotient, solve_eigenvalue_numeric,
    QuadratureSpec,
};
use curvlab::spectra::{eigenvalue, RadialFunction};
use curvlab::uncertainty::{reilly_check, schwarzschild_integral_numeric, uncertainty_product};
use rayon::prelude::*;

pub const GRID_CURVATURES: [f64; 5] = [-4.0, -1.0, 0.0, 1.0, 4.0];

/// Five admissible radii per curvature: fixed fractions of the diameter
/// `π/√K` on the sphere, fixed lengths otherwise. `K = 1` includes the
/// hemisphere `r0 = π/2`.
pub fn grid() -> Vec<GeodesicBall> {
    let mut out = Vec::with_capacity(25);
    for &k in &GRID_CURVATURES {
        let radii: Vec<f64> = if k > 0.0 {
            let diameter = PI / k.sqrt();
            [0.1, 0.3, 0.5, 0.7, 0.9]
                .iter()
                .map(|f| f * diameter)
                .collect()
        } else {
            vec![0.25, 0.8, 1.5, 3.0, 6.0]
        };
        for r0 in radii {
            out.push(GeodesicBall::with_curvature(k, r0).expect("grid radii are admissible"));
        }
    }
    out
}

/// Ten (K, r0) pairs for the variational suite.
pub fn variational_configs() -> Vec<GeodesicBall> {
    GRID_CURVATURES
        .iter()
        .flat_map(|&k| {
            let radii = if k > 0.0 {
                let d = PI / k.sqrt();
                [0.35 * d, 0.8 * d]
            } else {
                [0.5, 2.0]
            };
            radii.map(|r0| GeodesicBall::with_curvature(k, r0).expect("admissible"))
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Relative tolerance for oracle agreement, sharpness and
    /// normalization/orthogonality.
    pub tolerance: f64,
    pub seed: u64,
    /// Trial states per variational configuration.
    pub trials: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            seed: 0,
            trials: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    /// Largest observed residual (or the smallest ratio, for the
    /// variational check).
    pub worst: f64,
    pub threshold: f64,
    pub cases: usize,
    pub passed: bool,
    /// Where the worst case occurred.
    pub detail: String,
}

fn describe(ball: &GeodesicBall) -> String {
    format!("K={} r0={}", ball.curvature(), ball.radius())
}

/// Worst of `(residual, label)` pairs; a non-finite residual always wins.
fn worst_of(items: impl IntoIterator<Item = (f64, String)>) -> (f64, String, usize) {
    let mut worst = (f64::NEG_INFINITY, String::new());
    let mut count = 0;
    for (v, label) in items {
        count += 1;
        if v.is_nan() || v > worst.0 {
            worst = (if v.is_nan() { f64::INFINITY } else { v }, label);
        }
    }
    (worst.0, worst.1, count)
}

fn max_check(name: &'static str, threshold: f64, items: Vec<(f64, String)>) -> Check {
    let (worst, detail, cases) = worst_of(items);
    Check {
        name,
        worst,
        threshold,
        cases,
        passed: worst <= threshold,
        detail,
    }
}

/// Shooting `λ̂ₙ` against the closed form for `n ≤ 3` over the grid.
pub fn check_oracle(tolerance: f64) -> Check {
    let cases: Vec<(GeodesicBall, u32)> = grid()
        .into_iter()
        .flat_map(|b| (1..=3).map(move |n| (b, n)))
        .collect();
    let items = cases
        .par_iter()
        .map(|(b, n)| {
            let exact = eigenvalue(b, *n).expect("valid mode");
            let label = format!("{} n={n}", describe(b));
            match solve_eigenvalue_numeric(b, *n, tolerance * 1e-2) {
                Ok(res) => ((res.lambda_hat - exact).abs() / exact.abs(), label),
                Err(e) => (f64::INFINITY, format!("{label}: {e}")),
            }
        })
        .collect();
    max_check("eigenvalue_oracle", tolerance, items)
}

/// `|⟨Fₘ, Fₙ⟩_w − δₘₙ|` for `m, n ≤ 5` over the grid.
pub fn check_orthonormality(tolerance: f64) -> Check {
    let q = QuadratureSpec::default();
    let items: Vec<Vec<(f64, String)>> = grid()
        .par_iter()
        .map(|b| {
            let modes: Vec<RadialFunction> = (1..=5)
                .map(|n| RadialFunction::eigenfunction(*b, n).expect("valid mode"))
                .collect();
            let mut out = Vec::new();
            for m in 0..5 {
                for n in m..5 {
                    let delta = if m == n { 1.0 } else { 0.0 };
                    let ip = inner_product(&modes[m], &modes[n], &q);
                    out.push((
                        (ip - delta).abs(),
                        format!("{} <{},{}>", describe(b), m + 1, n + 1),
                    ));
                }
            }
            out
        })
        .collect();
    max_check(
        "orthonormality",
        tolerance,
        items.into_iter().flatten().collect(),
    )
}

/// Rayleigh quotient of `F₁` against `λ₁`.
pub fn check_sharpness(tolerance: f64) -> Check {
    let q = QuadratureSpec::default();
    let items = grid()
        .par_iter()
        .map(|b| {
            let lam = eigenvalue(b, 1).expect("valid mode");
            let f1 = RadialFunction::eigenfunction(*b, 1).expect("valid mode");
            let rq = rayleigh_quotient(&f1, &q).unwrap_or(f64::NAN);
            ((rq - lam).abs() / lam.abs(), describe(b))
        })
        .collect();
    max_check("sharpness", tolerance, items)
}

/// Degree of the `i`-th trial polynomial: cycles through 1..=10.
pub fn trial_degree(i: u64) -> usize {
    1 + (i % 10) as usize
}

/// `min R[ψ]/λ₁` over `trials` seeded states per configuration; passes when
/// it is at least `1 − 10⁻⁹`.
pub fn check_variational(seed: u64, trials: u64) -> Check {
    const SLACK: f64 = 1e-9;
    let q = QuadratureSpec::default();
    let configs = variational_configs();
    let per_config: Vec<(f64, String, usize)> = configs
        .par_iter()
        .map(|b| {
            let lam = eigenvalue(b, 1).expect("valid mode");
            let mut worst = (f64::INFINITY, String::new());
            for i in 0..trials {
                let s = seed.wrapping_add(i);
                let ratio = random_trial_function(b, s, trial_degree(i))
                    .and_then(|psi| rayleigh_quotient(&psi, &q))
                    .map_or(f64::NAN, |rq| rq / lam);
                if ratio.is_nan() || ratio < worst.0 {
                    worst = (
                        if ratio.is_nan() {
                            f64::NEG_INFINITY
                        } else {
                            ratio
                        },
                        format!("{} seed={s}", describe(b)),
                    );
                }
            }
            (worst.0, worst.1, trials as usize)
        })
        .collect();
    let cases = per_config.iter().map(|c| c.2).sum();
    let (worst, detail) = per_config.into_iter().map(|(w, d, _)| (w, d)).fold(
        (f64::INFINITY, String::new()),
        |acc, x| if x.0 < acc.0 { x } else { acc },
    );
    Check {
        name: "variational",
        worst,
        threshold: 1.0 - SLACK,
        cases,
        passed: worst >= 1.0 - SLACK,
        detail,
    }
}

/// The Reilly comparison on K = 1 balls, including the hemisphere, plus a
/// separate check that equality is attained there.
pub fn check_reilly() -> Vec<Check> {
    let radii: Vec<f64> = (1..=20)
        .map(|i| f64::from(i) / 20.0 * PI / 2.0)
        .chain([0.7 * PI, 0.9 * PI])
        .collect();
    let mut violations = Vec::new();
    let mut equality_gap = f64::INFINITY;
    for r0 in &radii {
        let b = GeodesicBall::with_curvature(1.0, *r0).expect("admissible");
        let check = reilly_check(&b).expect("positive curvature");
        let miss = if check.holds() {
            0.0
        } else {
            (check.reilly_bound - check.lambda1) / check.reilly_bound
        };
        violations.push((miss, describe(&b)));
        if check.hypothesis
            && !check.equality
            && (check.lambda1 - check.reilly_bound).abs() <= 1e-12 * check.reilly_bound
        {
            violations.push((
                f64::INFINITY,
                format!("{}: unflagged equality", describe(&b)),
            ));
        }
        if *r0 == PI / 2.0 {
            equality_gap = (check.lambda1 - check.reilly_bound).abs() / check.reilly_bound;
        }
    }
    vec![
        max_check("reilly_bound", 0.0, violations),
        Check {
            name: "reilly_hemisphere_equality",
            worst: equality_gap,
            threshold: 1e-12,
            cases: 1,
            passed: equality_gap <= 1e-12,
            detail: "K=1 r0=π/2".into(),
        },
    ]
}

/// Numeric horizon integral against `π r_s / 2`.
pub fn check_schwarzschild() -> Check {
    let items = [1e-3, 1.0, 1e3]
        .iter()
        .map(|&r_s| {
            let v = schwarzschild_integral_numeric(r_s, 1e-9).unwrap_or(f64::NAN);
            (
                (v / r_s - PI / 2.0).abs() / (PI / 2.0),
                format!("r_s={r_s}"),
            )
        })
        .collect();
    max_check("schwarzschild_integral", 1e-6, items)
}

/// `σ_p r0 = π ħ` in flat space, bit for bit.
pub fn check_flat_product() -> Check {
    let items = (1..=20)
        .map(|i| {
            let r0 = 0.1 * f64::from(i) * 1.37;
            let b = GeodesicBall::with_curvature(0.0, r0).expect("admissible");
            let p = uncertainty_product(&b, 1.0).expect("valid ħ");
            ((p - PI).abs(), format!("r0={r0}"))
        })
        .collect();
    max_check("flat_product", 0.0, items)
}

/// Every check, in a fixed order.
pub fn run(cfg: &VerifyConfig) -> Vec<Check> {
    let mut out = vec![
        check_oracle(cfg.tolerance),
        check_orthonormality(cfg.tolerance),
        check_sharpness(cfg.tolerance),
        check_variational(cfg.seed, cfg.trials),
    ];
    out.extend(check_reilly());
    out.push(check_schwarzschild());
    out.push(check_flat_product());
    out
}
