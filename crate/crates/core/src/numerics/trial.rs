use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{norm_squared, QuadratureSpec};
use crate::error::{Error, Result};
use crate::geometry::GeodesicBall;
use crate::spectra::RadialFunction;

/// Trial states whose weighted norm falls below this are redrawn.
pub const MIN_TRIAL_NORM: f64 = 1e-6;
pub const MAX_REDRAWS: usize = 100;

/// A seeded random Dirichlet trial state
/// `ψ(r) = (r0 - r) Σ_{k=0..=degree} c_k (r/r0)^k`, `c_k ~ U[-1, 1]`.
pub fn random_trial_function(
    ball: &GeodesicBall,
    seed: u64,
    degree: usize,
) -> Result<RadialFunction> {
    if degree < 1 {
        return Err(Error::domain("trial polynomial degree must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quad = QuadratureSpec::default();
    for _ in 0..MAX_REDRAWS {
        let coeffs: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let psi = RadialFunction::boundary_polynomial(*ball, coeffs)?;
        if norm_squared(&psi, &quad).sqrt() >= MIN_TRIAL_NORM {
            return Ok(psi);
        }
    }
    Err(Error::ZeroNorm(format!(
        "{MAX_REDRAWS} consecutive trial draws for seed {seed} had weighted norm below {MIN_TRIAL_NORM}"
    )))
}
