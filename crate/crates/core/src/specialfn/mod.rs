//! Special functions and quadrature primitives.
//!
//! Generalized Laguerre polynomials with real upper index, `ln Gamma`,
//! Gauss rules, adaptive integration on `[0, inf)` and `(-inf, inf)`, and a
//! one-sided Fourier transform that stays accurate for large momenta, and
//! finite-difference stencils.

mod diff;
mod fourier;
pub(crate) mod gamma;
pub(crate) mod laguerre;
pub(crate) mod quadrature;

pub use diff::{
    central_derivative, central_second_derivative, derivative_above, forward_derivative,
};
pub use fourier::{fourier_transform_semiline, FourierMesh, OscillatoryResult};
pub use gamma::{ln_factorial, log_gamma};
pub use laguerre::{laguerre, laguerre_at_zero, laguerre_series};
pub use quadrature::{
    gauss_laguerre_rule, gauss_legendre_rule, integrate_interval, integrate_line,
    integrate_semiline, xlogx, QuadratureResult, SemilineIntegrator, DENSITY_FLOOR,
    DEFAULT_TOL, ENTROPY_TOL,
};
