//! Persistent current, magnetization and susceptibility of a single level
//! (zero temperature) or of the fixed-`ell` tower (finite temperature).
//!
//! Flux enters as `Phi_AB = Phi Phi_0` with `Phi_0 = 2 pi / e`, so
//! `d/dPhi_AB = (e / 2 pi) d/dPhi`. The closed-form current is
//!
//! ```text
//! I = e omega_c / (2 pi alpha^2) + |e| |ell - Phi| omega0 / (2 pi alpha^2 j)
//! ```
//!
//! which equals `-(e/2pi) dE/dPhi` only for `ell > Phi`; below the flux the
//! exact derivative carries an extra `sign(ell - Phi)`. Both are exposed.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{derive_params, DerivedParams, PotentialSpec, QuantumNumbers, SystemConfig};
use crate::specialfn::{central_derivative, derivative_above};
use crate::spectrum;
use crate::thermo::{self, ThermoInput};

/// Step for the finite-difference oracles (five-point stencils).
pub const FD_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TemperatureTag {
    Zero,
    Finite { beta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MagneticReport {
    pub persistent_current: f64,
    pub magnetization: f64,
    pub susceptibility: f64,
    pub temperature: TemperatureTag,
}

fn checked_params(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
) -> Result<DerivedParams> {
    if matches!(potential, PotentialSpec::InverseSquare { .. }) && config.b_field == 0.0 {
        return Err(Error::CaseDNeedsField);
    }
    derive_params(config, potential, qn)
}

fn reject_kink(config: &SystemConfig, ell: i32) -> Result<f64> {
    let shift = ell as f64 - config.phi;
    if shift == 0.0 {
        return Err(Error::KinkPoint);
    }
    Ok(shift)
}

/// Closed-form current as printed: no `sign(ell - Phi)` factor.
pub fn persistent_current(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
) -> Result<f64> {
    let shift = reject_kink(config, qn.ell)?;
    let d = checked_params(config, potential, qn)?;
    let a2 = config.alpha * config.alpha;
    Ok(config.signed_charge() * d.omega_c / (2.0 * PI * a2)
        + config.charge * shift.abs() * d.omega0 / (2.0 * PI * a2 * d.j))
}

/// Exact `-(e / 2 pi) dE/dPhi`, valid on both sides of the kink.
pub fn persistent_current_exact(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
) -> Result<f64> {
    let shift = reject_kink(config, qn.ell)?;
    let d = checked_params(config, potential, qn)?;
    let a2 = config.alpha * config.alpha;
    let e = config.signed_charge();
    Ok(e / (2.0 * PI) * (shift.signum() * d.omega_c / a2 + d.omega0 * shift / (a2 * d.j)))
}

/// `-(e / 2 pi) dE/dPhi` by a five-point difference in `Phi`.
pub fn persistent_current_fd(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
    h: f64,
) -> Result<f64> {
    let shift = reject_kink(config, qn.ell)?;
    if shift.abs() <= 2.0 * h {
        return Err(Error::KinkPoint);
    }
    spectrum::energy(config, potential, qn)?;
    let e = |phi: f64| {
        spectrum::energy(&SystemConfig { phi, ..*config }, potential, qn)
            .map(|l| l.energy)
            .unwrap_or(f64::NAN)
    };
    Ok(-config.signed_charge() / (2.0 * PI) * central_derivative(e, config.phi, h))
}

/// `-(e / 2 pi) dF/dPhi` at finite temperature, analytic.
///
/// `omega0` does not depend on the flux, so this coincides with
/// [`persistent_current_exact`].
pub fn persistent_current_finite_t(input: &ThermoInput) -> Result<f64> {
    let shift = reject_kink(&input.config, input.ell)?;
    let d = input.params()?;
    let a2 = input.config.alpha * input.config.alpha;
    let e = input.config.signed_charge();
    // dF/dPhi = dQ/dPhi + omega0 dj/dPhi; the coth term has no flux dependence
    let dq = -shift.signum() * d.omega_c / a2;
    let dj = -shift / (a2 * d.j);
    Ok(-e / (2.0 * PI) * (dq + d.omega0 * dj))
}

/// `-(e / 2 pi) dF/dPhi` by a five-point difference in `Phi`.
pub fn persistent_current_finite_t_fd(input: &ThermoInput, h: f64) -> Result<f64> {
    let shift = reject_kink(&input.config, input.ell)?;
    if shift.abs() <= 2.0 * h {
        return Err(Error::KinkPoint);
    }
    thermo::free_energy(input)?;
    let f = |phi: f64| {
        let t = ThermoInput { config: SystemConfig { phi, ..input.config }, ..*input };
        thermo::free_energy(&t).unwrap_or(f64::NAN)
    };
    Ok(-input.config.signed_charge() / (2.0 * PI) * central_derivative(f, input.config.phi, h))
}

/// `e^2 / (4 M^2 alpha^2)`, the curvature of `omega0^2` in `B`.
fn field_curvature(config: &SystemConfig) -> f64 {
    let e = config.charge;
    let m = config.mass;
    e * e / (4.0 * m * m * config.alpha * config.alpha)
}

/// `M = -dE/dB = -|e||ell - Phi| / (2 M alpha^2) - e^2 B (2n + 1 + j) / (4 M^2 alpha^2 omega0)`.
pub fn magnetization_zero_t(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
) -> Result<f64> {
    let d = checked_params(config, potential, qn)?;
    let shift = (qn.ell as f64 - config.phi).abs();
    let a2 = config.alpha * config.alpha;
    Ok(-config.charge * shift / (2.0 * config.mass * a2)
        - field_curvature(config) * config.b_field * (2.0 * qn.n as f64 + 1.0 + d.j) / d.omega0)
}

/// `-dE/dB` by a five-point difference (forward near `B = 0`).
pub fn magnetization_zero_t_fd(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
    h: f64,
) -> Result<f64> {
    spectrum::energy(config, potential, qn)?;
    let e = |b: f64| {
        spectrum::energy(&SystemConfig { b_field: b, ..*config }, potential, qn)
            .map(|l| l.energy)
            .unwrap_or(f64::NAN)
    };
    Ok(-derivative_above(e, config.b_field, h, 0.0))
}

/// `chi = dM/dB = -(2 a e^2 / (4 M^3 alpha^2)) (2n + 1 + j) / omega0^3`.
pub fn susceptibility_zero_t(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
) -> Result<f64> {
    let d = checked_params(config, potential, qn)?;
    let a = d.coefficients.a;
    Ok(-field_curvature(config) * (2.0 * a / config.mass) * (2.0 * qn.n as f64 + 1.0 + d.j)
        / d.omega0.powi(3))
}

/// `dM/dB` of the closed-form magnetization by a five-point difference.
pub fn susceptibility_zero_t_fd(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
    h: f64,
) -> Result<f64> {
    magnetization_zero_t(config, potential, qn)?;
    let m = |b: f64| {
        magnetization_zero_t(&SystemConfig { b_field: b, ..*config }, potential, qn)
            .unwrap_or(f64::NAN)
    };
    Ok(derivative_above(m, config.b_field, h, 0.0))
}

/// `M_T = -dF/dB = -(e^2 B / (4 M^2 alpha^2 omega0)) [j + coth(beta omega0)] - |e||ell - Phi| / (2 M alpha^2)`.
pub fn magnetization_finite_t(input: &ThermoInput) -> Result<f64> {
    let d = input.params()?;
    let cfg = &input.config;
    let x = input.beta * d.omega0;
    let coth = 1.0 + 2.0 * (-2.0 * x).exp() / -(-2.0 * x).exp_m1();
    let shift = (input.ell as f64 - cfg.phi).abs();
    let a2 = cfg.alpha * cfg.alpha;
    Ok(-field_curvature(cfg) * cfg.b_field / d.omega0 * (d.j + coth)
        - cfg.charge * shift / (2.0 * cfg.mass * a2))
}

/// `-dF/dB` by a five-point difference.
pub fn magnetization_finite_t_fd(input: &ThermoInput, h: f64) -> Result<f64> {
    thermo::free_energy(input)?;
    let f = |b: f64| {
        let t = ThermoInput { config: SystemConfig { b_field: b, ..input.config }, ..*input };
        thermo::free_energy(&t).unwrap_or(f64::NAN)
    };
    Ok(-derivative_above(f, input.config.b_field, h, 0.0))
}

/// Analytic `dM_T/dB`:
///
/// ```text
/// chi_T = -k { (2a/M) [j + coth x] / omega0^3 - beta (B / omega0) csch^2 x  k B / omega0 }
/// ```
///
/// with `k = e^2 / (4 M^2 alpha^2)` and `x = beta omega0`.
pub fn susceptibility_finite_t(input: &ThermoInput) -> Result<f64> {
    let d = input.params()?;
    let cfg = &input.config;
    let k = field_curvature(cfg);
    let a = d.coefficients.a;
    let x = input.beta * d.omega0;
    let q = (-2.0 * x).exp();
    let one_minus_q = -(-2.0 * x).exp_m1();
    let coth = 1.0 + 2.0 * q / one_minus_q;
    let csch2 = 4.0 * q / (one_minus_q * one_minus_q);
    let b = cfg.b_field;
    Ok(-k
        * ((2.0 * a / cfg.mass) * (d.j + coth) / d.omega0.powi(3)
            - input.beta * (b / d.omega0) * csch2 * k * b / d.omega0))
}

/// `dM_T/dB` by a five-point difference of the closed-form magnetization.
pub fn susceptibility_finite_t_fd(input: &ThermoInput, h: f64) -> Result<f64> {
    magnetization_finite_t(input)?;
    let m = |b: f64| {
        let t = ThermoInput { config: SystemConfig { b_field: b, ..input.config }, ..*input };
        magnetization_finite_t(&t).unwrap_or(f64::NAN)
    };
    Ok(derivative_above(m, input.config.b_field, h, 0.0))
}

pub fn magnetic_report_zero_t(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
) -> Result<MagneticReport> {
    Ok(MagneticReport {
        persistent_current: persistent_current(config, potential, qn)?,
        magnetization: magnetization_zero_t(config, potential, qn)?,
        susceptibility: susceptibility_zero_t(config, potential, qn)?,
        temperature: TemperatureTag::Zero,
    })
}

pub fn magnetic_report_finite_t(input: &ThermoInput) -> Result<MagneticReport> {
    Ok(MagneticReport {
        persistent_current: persistent_current_finite_t(input)?,
        magnetization: magnetization_finite_t(input)?,
        susceptibility: susceptibility_finite_t(input)?,
        temperature: TemperatureTag::Finite { beta: input.beta },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ChargeSign;
    use approx::assert_relative_eq;

    fn setup() -> (SystemConfig, PotentialSpec) {
        (
            SystemConfig::natural(0.75, 1.5, 0.25).unwrap(),
            PotentialSpec::Anharmonic { a: 0.8, b: 0.6, c: 0.3 },
        )
    }

    #[test]
    fn kink_is_rejected() {
        let (cfg, pot) = setup();
        let cfg = SystemConfig { phi: 1.0, ..cfg };
        let qn = QuantumNumbers::new(0, 1);
        assert_eq!(persistent_current(&cfg, &pot, qn).unwrap_err(), Error::KinkPoint);
        let t = ThermoInput::new(1.0, cfg, pot, 1);
        assert_eq!(persistent_current_finite_t(&t).unwrap_err(), Error::KinkPoint);
    }

    #[test]
    fn printed_current_matches_derivative_above_flux() {
        let (cfg, pot) = setup();
        let qn = QuantumNumbers::new(1, 1);
        let i = persistent_current(&cfg, &pot, qn).unwrap();
        let fd = persistent_current_fd(&cfg, &pot, qn, FD_STEP).unwrap();
        assert_relative_eq!(i, fd, max_relative = 1e-9);
    }

    #[test]
    fn printed_current_has_wrong_sign_below_flux() {
        let (cfg, pot) = setup();
        let qn = QuantumNumbers::new(1, -1);
        let i = persistent_current(&cfg, &pot, qn).unwrap();
        let exact = persistent_current_exact(&cfg, &pot, qn).unwrap();
        let fd = persistent_current_fd(&cfg, &pot, qn, FD_STEP).unwrap();
        assert_relative_eq!(exact, fd, max_relative = 1e-9);
        assert_relative_eq!(i, -exact, max_relative = 1e-12);
    }

    #[test]
    fn zero_b_current_reduces() {
        let cfg = SystemConfig::natural(0.6, 0.0, 0.3).unwrap();
        let pot = PotentialSpec::Harmonic { omega: 1.2 };
        let qn = QuantumNumbers::new(0, 1);
        let d = derive_params(&cfg, &pot, qn).unwrap();
        let i = persistent_current(&cfg, &pot, qn).unwrap();
        assert_relative_eq!(i, d.omega0 / (2.0 * PI * 0.6), max_relative = 1e-13);
    }

    #[test]
    fn finite_t_current_is_temperature_independent() {
        let (cfg, pot) = setup();
        let qn = QuantumNumbers::new(0, 2);
        let zero = persistent_current_exact(&cfg, &pot, qn).unwrap();
        for beta in [0.1, 1.0, 10.0] {
            let t = ThermoInput::new(beta, cfg, pot, 2);
            let an = persistent_current_finite_t(&t).unwrap();
            let fd = persistent_current_finite_t_fd(&t, FD_STEP).unwrap();
            assert!((an - zero).abs() <= 1e-10 * zero.abs());
            assert!((fd - zero).abs() <= 1e-10 * zero.abs(), "beta={beta}: {fd} vs {zero}");
        }
    }

    #[test]
    fn magnetization_examples() {
        let cfg = SystemConfig::natural(0.5, 0.0, 0.25).unwrap();
        let pot = PotentialSpec::Anharmonic { a: 1.0, b: 0.2, c: 0.0 };
        let m = magnetization_zero_t(&cfg, &pot, QuantumNumbers::new(2, 1)).unwrap();
        assert_relative_eq!(m, -0.75 / (2.0 * 0.25), epsilon = 1e-14);

        let cfg = SystemConfig::natural(0.5, 2.0, 1.0).unwrap();
        let pot = PotentialSpec::Harmonic { omega: 1.0 };
        let qn = QuantumNumbers::new(0, 1);
        let d = derive_params(&cfg, &pot, qn).unwrap();
        let m = magnetization_zero_t(&cfg, &pot, qn).unwrap();
        assert_relative_eq!(m, -2.0 / (4.0 * 0.25 * d.omega0), max_relative = 1e-14);
    }

    #[test]
    fn magnetization_is_minus_energy_slope() {
        let (cfg, pot) = setup();
        for qn in [QuantumNumbers::new(0, 1), QuantumNumbers::new(2, -2)] {
            let an = magnetization_zero_t(&cfg, &pot, qn).unwrap();
            let fd = magnetization_zero_t_fd(&cfg, &pot, qn, FD_STEP).unwrap();
            assert_relative_eq!(an, fd, max_relative = 1e-9);
        }
        let t = ThermoInput::new(0.8, cfg, pot, 1);
        assert_relative_eq!(
            magnetization_finite_t(&t).unwrap(),
            magnetization_finite_t_fd(&t, FD_STEP).unwrap(),
            max_relative = 1e-9
        );
    }

    #[test]
    fn susceptibility_checks() {
        let (cfg, pot) = setup();
        let qn = QuantumNumbers::new(1, 1);
        let an = susceptibility_zero_t(&cfg, &pot, qn).unwrap();
        assert!(an < 0.0);
        let fd = susceptibility_zero_t_fd(&cfg, &pot, qn, FD_STEP).unwrap();
        assert_relative_eq!(an, fd, max_relative = 1e-9);

        let flat = PotentialSpec::Anharmonic { a: 0.0, b: 0.6, c: 0.0 };
        assert_eq!(susceptibility_zero_t(&cfg, &flat, qn).unwrap(), 0.0);

        for beta in [0.2, 1.0, 5.0] {
            let t = ThermoInput::new(beta, cfg, pot, 1);
            let an = susceptibility_finite_t(&t).unwrap();
            let fd = susceptibility_finite_t_fd(&t, FD_STEP).unwrap();
            assert_relative_eq!(an, fd, max_relative = 1e-8);
        }
    }

    #[test]
    fn ground_state_limit() {
        let (cfg, pot) = setup();
        let t = ThermoInput::new(200.0, cfg, pot, 1);
        let qn = QuantumNumbers::new(0, 1);
        assert_relative_eq!(
            magnetization_finite_t(&t).unwrap(),
            magnetization_zero_t(&cfg, &pot, qn).unwrap(),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            susceptibility_finite_t(&t).unwrap(),
            susceptibility_zero_t(&cfg, &pot, qn).unwrap(),
            max_relative = 1e-10
        );
    }

    #[test]
    fn small_field_limit() {
        let cfg = SystemConfig::natural(0.7, 0.0, 0.25).unwrap();
        let pot = PotentialSpec::Anharmonic { a: 1.0, b: 0.5, c: 0.0 };
        let t = ThermoInput::new(1.0, cfg, pot, 1);
        let at_zero = susceptibility_finite_t(&t).unwrap();
        let fd = susceptibility_finite_t_fd(&t, 1e-4).unwrap();
        assert!(at_zero.is_finite() && at_zero < 0.0);
        assert_relative_eq!(at_zero, fd, max_relative = 1e-7);
    }

    #[test]
    fn negative_charge_flips_cyclotron_term_only() {
        let (cfg, pot) = setup();
        let qn = QuantumNumbers::new(0, 1);
        let neg = cfg.with_charge_sign(ChargeSign::Negative);
        let d = derive_params(&cfg, &pot, qn).unwrap();
        let diff = persistent_current(&cfg, &pot, qn).unwrap()
            - persistent_current(&neg, &pot, qn).unwrap();
        assert_relative_eq!(diff, 2.0 * d.omega_c / (2.0 * PI * 0.5625), max_relative = 1e-12);
    }
}
