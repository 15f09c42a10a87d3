//! Canonical thermodynamics of the fixed-`ell` tower `E_n = P + 2 omega0 n`
//! (additive constant `c` removed, Boltzmann constant 1).
//!
//! `Z = exp(-beta (omega0 j + Q)) / (2 sinh(beta omega0))`. Everything is
//! evaluated through `q = exp(-2 beta omega0)` so that neither small nor large
//! `beta` overflows.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{derive_params, DerivedParams, PotentialSpec, QuantumNumbers, SystemConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermoInput {
    pub beta: f64,
    pub config: SystemConfig,
    pub potential: PotentialSpec,
    pub ell: i32,
    /// Added to `F` and `U` after the fact; zero reproduces the `c = 0` tower.
    pub energy_shift: f64,
}

impl ThermoInput {
    pub fn new(beta: f64, config: SystemConfig, potential: PotentialSpec, ell: i32) -> Self {
        ThermoInput { beta, config, potential, ell, energy_shift: 0.0 }
    }

    /// Temperature `T = 1 / beta`.
    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }

    pub fn with_energy_shift(mut self, shift: f64) -> Self {
        self.energy_shift = shift;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    /// Parameter bundle with `c = 0`.
    pub fn params(&self) -> Result<DerivedParams> {
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::invalid("beta", self.beta, "must be a finite value > 0"));
        }
        if matches!(self.potential, PotentialSpec::InverseSquare { .. }) && self.config.b_field == 0.0
        {
            return Err(Error::CaseDNeedsField);
        }
        let pot = self.potential.without_constant(self.config.mass);
        derive_params(&self.config, &pot, QuantumNumbers::new(0, self.ell))
    }

    /// `E_n = Q + omega0 (2n + j + 1)`.
    pub fn level(&self, n: u32) -> Result<f64> {
        let d = self.params()?;
        Ok(d.p + 2.0 * d.omega0 * n as f64)
    }
}

/// `(x, q, 1 - q)` with `x = beta omega0`, `q = exp(-2x)`.
fn reduced(beta: f64, d: &DerivedParams) -> (f64, f64, f64) {
    let x = beta * d.omega0;
    (x, (-2.0 * x).exp(), -(-2.0 * x).exp_m1())
}

/// `ln Z`.
pub fn log_partition_function(input: &ThermoInput) -> Result<f64> {
    let d = input.params()?;
    let (x, _, one_minus_q) = reduced(input.beta, &d);
    // ln(2 sinh x) = x + ln(1 - e^{-2x})
    Ok(-input.beta * (d.omega0 * d.j + d.q) - x - one_minus_q.ln())
}

/// `Z`, failing when it leaves the range of `f64`.
pub fn partition_function(input: &ThermoInput) -> Result<f64> {
    let log_z = log_partition_function(input)?;
    if !(-745.0..=709.0).contains(&log_z) {
        return Err(Error::Overflow { log_value: log_z });
    }
    Ok(log_z.exp())
}

/// `F = Q + omega0 j + ln(2 sinh(beta omega0)) / beta`.
pub fn free_energy(input: &ThermoInput) -> Result<f64> {
    let d = input.params()?;
    let (_, _, one_minus_q) = reduced(input.beta, &d);
    Ok(input.energy_shift + d.q + d.omega0 * (d.j + 1.0) + one_minus_q.ln() / input.beta)
}

/// `U = Q + omega0 (j + coth(beta omega0))`.
pub fn mean_energy(input: &ThermoInput) -> Result<f64> {
    let d = input.params()?;
    let (_, q, one_minus_q) = reduced(input.beta, &d);
    let coth = 1.0 + 2.0 * q / one_minus_q;
    Ok(input.energy_shift + d.q + d.omega0 * (d.j + coth))
}

/// `C = (beta omega0)^2 / sinh^2(beta omega0)`.
pub fn heat_capacity(input: &ThermoInput) -> Result<f64> {
    let d = input.params()?;
    let (x, q, one_minus_q) = reduced(input.beta, &d);
    Ok(4.0 * x * x * q / (one_minus_q * one_minus_q))
}

/// `S = beta omega0 coth(beta omega0) - ln(2 sinh(beta omega0))`.
pub fn entropy_thermo(input: &ThermoInput) -> Result<f64> {
    let d = input.params()?;
    let (x, q, one_minus_q) = reduced(input.beta, &d);
    Ok(2.0 * x * q / one_minus_q - one_minus_q.ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermoReport {
    pub beta: f64,
    pub log_z: f64,
    pub free_energy: f64,
    pub mean_energy: f64,
    pub heat_capacity: f64,
    pub entropy: f64,
}

pub fn thermo_report(input: &ThermoInput) -> Result<ThermoReport> {
    Ok(ThermoReport {
        beta: input.beta,
        log_z: log_partition_function(input)?,
        free_energy: free_energy(input)?,
        mean_energy: mean_energy(input)?,
        heat_capacity: heat_capacity(input)?,
        entropy: entropy_thermo(input)?,
    })
}

/// The same quantities from the truncated Boltzmann sum over `levels` levels.
///
/// Energies are measured from the ground level so the sum is `1 + tail`;
/// the heat capacity uses the centred second moment.
pub fn series_report(input: &ThermoInput, levels: u32) -> Result<ThermoReport> {
    let d = input.params()?;
    let beta = input.beta;
    let e0 = d.p;
    let gaps: Vec<f64> = (0..levels).map(|n| 2.0 * d.omega0 * n as f64).collect();
    let weights: Vec<f64> = gaps.iter().map(|g| (-beta * g).exp()).collect();
    let tail: f64 = weights.iter().skip(1).sum();
    let sum = 1.0 + tail;
    let log_z = -beta * e0 + tail.ln_1p();
    let mean_gap: f64 = gaps.iter().zip(&weights).map(|(g, w)| g * w).sum::<f64>() / sum;
    let var: f64 = gaps
        .iter()
        .zip(&weights)
        .map(|(g, w)| (g - mean_gap).powi(2) * w)
        .sum::<f64>()
        / sum;
    let free = input.energy_shift + e0 - tail.ln_1p() / beta;
    let mean = input.energy_shift + e0 + mean_gap;
    Ok(ThermoReport {
        beta,
        log_z,
        free_energy: free,
        mean_energy: mean,
        heat_capacity: beta * beta * var,
        // beta (U - F) without the cancellation
        entropy: beta * mean_gap + tail.ln_1p(),
    })
}
