use curvlab::geometry::{CurvatureSpace, GeodesicBall};
use curvlab::numerics::{
    norm_squared, random_trial_function, rayleigh_quotient, solve_eigenvalue_numeric,
    QuadratureSpec,
};
use curvlab::spectra::{eigenpair, eigenvalue, RadialFunction};
use curvlab::table::{BoundDocument, BoundTable};
use curvlab::uncertainty::{
    figure1_table, floor_excess, min_schwarzschild_radius, momentum_lower_bound, planck_length,
    schwarzschild_geodesic_radius, schwarzschild_integral_numeric, schwarzschild_momentum_bound,
    taylor_bound, taylor_relative_error,
};
use curvlab::PhysicalConstants;
use serde_json::{json, Value};

use crate::report::{Cell, Report};
use crate::verify::{self, VerifyConfig};
use crate::{
    Cli, CliError, Command, CurveArgs, EigenArgs, Format, SchwarzschildArgs, TrialArgs, Units,
    VerifyArgs, VolumeArgs, TOOL, VERSION,
};

/// Variational slack for trial states.
const VARIATIONAL_SLACK: f64 = 1e-9;

type Rendered = (String, Result<(), CliError>);

fn constants(units: Units) -> PhysicalConstants {
    match units {
        Units::Natural => PhysicalConstants::natural(),
        Units::Si => PhysicalConstants::codata_2018(),
    }
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("{name} must be positive, got {v}")))
    }
}

fn metadata(cli: &Cli) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "units": cli.units,
        "hbar": constants(cli.units).hbar,
        "config": cli.command,
    })
}

fn emit(cli: &Cli, report: &Report) -> String {
    match cli.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(metadata(cli)),
    }
}

fn outcome(failures: Vec<String>) -> Result<(), CliError> {
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(failures.join("; ")))
    }
}

/// Renders the command's output. Argument and domain errors surface as the
/// outer `Err`; failed checks come back alongside the rendered text.
pub fn render(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Eigen(a) => eigen(cli, a),
        Command::Bound(a) => bound(cli, a),
        Command::Volume(a) => volume(cli, a),
        Command::Verify(a) => verify_cmd(cli, a),
        Command::Trial(a) => trial(cli, a),
        Command::Schwarzschild(a) => schwarzschild(cli, a),
        Command::Sweep(a) => sweep(cli, a),
    }
}

fn eigen(cli: &Cli, a: &EigenArgs) -> Result<Rendered, CliError> {
    let tolerance = positive("tolerance", a.tolerance)?;
    let ball = GeodesicBall::with_curvature(a.k, a.r0)?;
    let pair = eigenpair(&ball, a.n)?;
    let shot = solve_eigenvalue_numeric(&ball, a.n, tolerance * 1e-2)?;
    let discrepancy = (shot.lambda_hat - pair.lambda).abs() / pair.lambda.abs();
    let norm = norm_squared(
        &RadialFunction::eigenfunction(ball, a.n)?,
        &QuadratureSpec::default(),
    );
    let hbar = constants(cli.units).hbar;

    let mut report = Report::new(&[
        "K",
        "r0",
        "n",
        "lambda",
        "lambda_hat",
        "relative_discrepancy",
        "boundary_residual",
        "interior_zeros",
        "iterations",
        "norm_integral",
        "sigma_p_min",
    ]);
    report.push(vec![
        a.k.into(),
        a.r0.into(),
        a.n.into(),
        pair.lambda.into(),
        shot.lambda_hat.into(),
        discrepancy.into(),
        shot.boundary_residual.into(),
        shot.interior_zeros.into(),
        shot.iterations.into(),
        norm.into(),
        (hbar * pair.lambda.max(0.0).sqrt()).into(),
    ]);

    let mut failures = Vec::new();
    if !(discrepancy <= tolerance) {
        failures.push(format!(
            "eigenvalue discrepancy {discrepancy:e} exceeds {tolerance:e}"
        ));
    }
    if !((norm - 1.0).abs() <= tolerance) {
        failures.push(format!("normalization integral {norm} differs from 1"));
    }
    Ok((emit(cli, &report), outcome(failures)))
}

fn curve_table(cli: &Cli, a: &CurveArgs) -> Result<BoundTable, CliError> {
    let (r_min, r_max) = a.r;
    let steps = if r_min == r_max { 1 } else { a.steps };
    Ok(figure1_table(
        &a.k,
        r_min,
        r_max,
        steps,
        constants(cli.units).hbar,
    )?)
}

fn bound(cli: &Cli, a: &CurveArgs) -> Result<Rendered, CliError> {
    let table = curve_table(cli, a)?;
    let text = match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let mut s = BoundDocument::new(&table, TOOL, VERSION, metadata(cli)["config"].clone())
                .to_json();
            s.push('\n');
            s
        }
    };
    Ok((text, Ok(())))
}

fn sweep(cli: &Cli, a: &CurveArgs) -> Result<Rendered, CliError> {
    let table = curve_table(cli, a)?;
    let hbar = table.hbar;
    let mut report = Report::new(&[
        "K",
        "r",
        "sigma_p_min",
        "taylor",
        "relative_error",
        "floor_excess",
    ]);
    for row in &table.rows {
        let ball = GeodesicBall::with_curvature(row.k, row.r)?;
        let excess = if row.k < 0.0 {
            Some(floor_excess(&ball, hbar)?)
        } else {
            None
        };
        report.push(vec![
            row.k.into(),
            row.r.into(),
            row.sigma_p_min.into(),
            taylor_bound(&ball, hbar)?.into(),
            taylor_relative_error(&ball).into(),
            excess.into(),
        ]);
    }
    Ok((emit(cli, &report), Ok(())))
}

fn volume(cli: &Cli, a: &VolumeArgs) -> Result<Rendered, CliError> {
    let space = CurvatureSpace::new(a.k)?;
    let v = space.ball_volume(a.r)?;
    let euclidean = 4.0 * std::f64::consts::PI * a.r.powi(3) / 3.0;
    let mut report = Report::new(&[
        "K",
        "r",
        "metric_factor",
        "volume_weight",
        "ball_volume",
        "euclidean_ratio",
        "max_radius",
    ]);
    report.push(vec![
        a.k.into(),
        a.r.into(),
        space.metric_factor(a.r)?.into(),
        space.volume_weight(a.r)?.into(),
        v.into(),
        if euclidean > 0.0 {
            Cell::from(v / euclidean)
        } else {
            Cell::Empty
        },
        space.max_radius().finite().into(),
    ]);
    Ok((emit(cli, &report), Ok(())))
}

fn verify_cmd(cli: &Cli, a: &VerifyArgs) -> Result<Rendered, CliError> {
    let cfg = VerifyConfig {
        tolerance: positive("tolerance", a.tolerance)?,
        seed: a.seed,
        trials: a.trials,
    };
    if cfg.trials == 0 {
        return Err(CliError::Usage("trials must be at least 1".into()));
    }
    let checks = verify::run(&cfg);
    let mut report = Report::new(&["check", "worst", "threshold", "cases", "status", "detail"]);
    let mut failures = Vec::new();
    for c in &checks {
        report.push(vec![
            c.name.into(),
            c.worst.into(),
            c.threshold.into(),
            c.cases.into(),
            (if c.passed { "pass" } else { "fail" }).into(),
            c.detail.as_str().into(),
        ]);
        if !c.passed {
            failures.push(format!("{} failed at {}", c.name, c.detail));
        }
    }
    Ok((emit(cli, &report), outcome(failures)))
}

fn trial(cli: &Cli, a: &TrialArgs) -> Result<Rendered, CliError> {
    let ball = GeodesicBall::with_curvature(a.k, a.r0)?;
    let lam = eigenvalue(&ball, 1)?;
    let hbar = constants(cli.units).hbar;
    let q = QuadratureSpec::default();
    let mut report = Report::new(&[
        "seed",
        "degree",
        "rayleigh",
        "lambda1",
        "ratio",
        "sigma_p",
        "sigma_p_min",
    ]);
    let bound = momentum_lower_bound(&ball, hbar)?;
    let mut failures = Vec::new();
    for i in 0..a.trials {
        let seed = a.seed.wrapping_add(i);
        let psi = random_trial_function(&ball, seed, a.degree)?;
        let rq = rayleigh_quotient(&psi, &q)?;
        let ratio = rq / lam;
        if !(ratio >= 1.0 - VARIATIONAL_SLACK) {
            failures.push(format!(
                "seed {seed}: Rayleigh quotient below λ₁ (ratio {ratio})"
            ));
        }
        report.push(vec![
            seed.into(),
            a.degree.into(),
            rq.into(),
            lam.into(),
            ratio.into(),
            (hbar * rq.sqrt()).into(),
            bound.into(),
        ]);
    }
    Ok((emit(cli, &report), outcome(failures)))
}

fn schwarzschild(cli: &Cli, a: &SchwarzschildArgs) -> Result<Rendered, CliError> {
    let tolerance = positive("tolerance", a.tolerance)?;
    let c = constants(cli.units);
    let closed = schwarzschild_geodesic_radius(a.r_s)?;
    let numeric = schwarzschild_integral_numeric(a.r_s, tolerance)?;
    let discrepancy = (numeric - closed).abs() / closed;
    let mut report = Report::new(&[
        "units",
        "r_s",
        "planck_length",
        "min_r_s",
        "sigma_p_min",
        "geodesic_radius",
        "geodesic_radius_numeric",
        "relative_discrepancy",
    ]);
    report.push(vec![
        (match cli.units {
            Units::Natural => "natural",
            Units::Si => "si",
        })
        .into(),
        a.r_s.into(),
        planck_length(&c).into(),
        min_schwarzschild_radius(&c).into(),
        schwarzschild_momentum_bound(a.r_s, c.hbar)?.into(),
        closed.into(),
        numeric.into(),
        discrepancy.into(),
    ]);
    let failures = if discrepancy <= tolerance {
        Vec::new()
    } else {
        vec![format!("horizon integral off by {discrepancy:e}")]
    };
    Ok((emit(cli, &report), outcome(failures)))
}
