//! Shannon entropies of the radial bound states in position and momentum
//! space, the entropic uncertainty bound `S_r + S_p >= 1 + ln pi`, and a
//! harness that recomputes the reference entropy tables.
//!
//! How `|psi|^2` becomes a one-dimensional density, and how a momentum
//! density is built from it, is not unique; [`DensityConvention`] names the
//! choices and [`calibrate_convention`] picks the one that fits reference
//! rows.

mod convention;
mod density;
mod tables;

use std::cell::RefCell;
use std::f64::consts::PI;

use serde::Serialize;

pub use convention::{DensityConvention, FieldReading, MomentumRule, PositionMeasure};
pub use density::{
    momentum_entropy, position_entropy, MomentumEntropy, MomentumGrid, PositionDensity,
    PositionEntropy,
};
pub use tables::{
    calibrate_convention, check_trends, default_anchors, reference_rows, reproduce_table,
    Calibration, CalibrationCell, RowOutcome, TableReproduction, TableRow, TrendCheck,
    CALIBRATION_LIMIT, TABLE_ASSUMPTIONS,
};

use crate::error::Result;
use crate::specialfn::{fourier_transform_semiline, integrate_line, xlogx, SemilineIntegrator};
use crate::spectrum::RadialState;

/// `1 + ln pi`, the entropic uncertainty bound for one dimension.
pub const BBM_BOUND: f64 = 2.144_729_885_849_400_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyReport {
    pub s_position: f64,
    pub s_momentum: f64,
    pub total: f64,
    pub bbm_bound: f64,
    pub convention: DensityConvention,
    /// Error estimates of `(S_r, S_p)`.
    pub quad_errors: (f64, f64),
    /// `int |psi|^2 w dr` before renormalization.
    pub position_normalization: f64,
    /// Momentum mass before renormalization.
    pub momentum_normalization: f64,
    pub tail_mass: f64,
    pub p_max: f64,
}

pub fn entropy_report(
    state: &RadialState,
    conv: DensityConvention,
    grid: MomentumGrid,
    tol: f64,
) -> Result<EntropyReport> {
    let sr = position_entropy(state, conv.position_measure, tol)?;
    let sp = momentum_entropy(state, conv, grid, tol)?;
    Ok(EntropyReport {
        s_position: sr.value,
        s_momentum: sp.value,
        total: sr.value + sp.value,
        bbm_bound: BBM_BOUND,
        convention: conv,
        quad_errors: (sr.abs_error_estimate, sp.abs_error_estimate),
        position_normalization: sr.normalization,
        momentum_normalization: sp.normalization,
        tail_mass: sp.tail_mass,
        p_max: sp.p_max,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BbmCheck {
    pub satisfied: bool,
    /// `S_r + S_p - (1 + ln pi)`.
    pub margin: f64,
}

pub fn bbm_check(report: &EntropyReport) -> BbmCheck {
    let margin = report.total - report.bbm_bound;
    BbmCheck { satisfied: margin >= 0.0, margin }
}

/// `-int rho ln rho` over the whole line for a density given directly.
pub fn shannon_entropy_line<F: Fn(f64) -> f64>(density: F, tol: f64) -> Result<f64> {
    Ok(integrate_line(|x| -xlogx(density(x)), tol)?.value)
}

/// Momentum entropy of an even, real, normalized amplitude on the line,
/// `sigma(p) = |FT[psi](p)|^2`. Used to calibrate the transform and
/// quadrature stack against Gaussians.
pub fn momentum_entropy_line_even<F: Fn(f64) -> f64>(amplitude: F, tol: f64) -> Result<f64> {
    let sigma = |p: f64| -> Result<f64> {
        // FT on the line of an even function is twice the real half-line part
        let f = fourier_transform_semiline(&amplitude, p, 0.01 * tol)?;
        Ok((2.0 * f.value.re).powi(2))
    };
    let failure = RefCell::new(None);
    let half = SemilineIntegrator::new(tol).integrate(|p| match sigma(p) {
        Ok(s) => -xlogx(s),
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    });
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(2.0 * half?.value)
}

/// Entropy of a normal density with standard deviation `sigma`.
pub fn gaussian_entropy(sigma: f64) -> f64 {
    0.5 * (2.0 * PI * std::f64::consts::E * sigma * sigma).ln()
}
