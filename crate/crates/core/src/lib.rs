//! Spectral geometry of geodesic balls in the simply connected 3-manifolds of
//! constant sectional curvature `K` (the 3-sphere for `K > 0`, Euclidean space
//! for `K = 0`, hyperbolic space for `K < 0`), and the momentum-uncertainty
//! bounds that follow from the first Dirichlet eigenvalue.
//!
//! The crate is split into:
//!
//! * [`geometry`]: metric factor, radial volume weight, ball volumes, domain limits.
//! * [`spectra`]: closed-form radial Dirichlet eigenpairs for every sign of `K`.
//! * [`numerics`]: the independent oracle (Gauss–Legendre quadrature, Rayleigh
//!   quotients, a shooting solver for the singular radial ODE, random trial states).
//! * [`uncertainty`]: the momentum bound, its limits, the first-order expansion,
//!   the Reilly check and the Schwarzschild/Planck-length chain.
//! * [`table`]: the bound table and its CSV/JSON codecs.
//!
//! Units are whatever the caller uses consistently; every bound evaluator takes
//! `hbar` explicitly, so `hbar = 1` gives natural units.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod numerics;
pub mod spectra;
pub mod table;
pub mod uncertainty;

pub use error::{Error, Result};
pub use geometry::{CurvatureSpace, GeodesicBall, MaxRadius};
pub use numerics::{QuadratureSpec, ShootingResult};
pub use spectra::{EigenPair, RadialFunction};
pub use table::{BoundRow, BoundTable};
pub use uncertainty::PhysicalConstants;
