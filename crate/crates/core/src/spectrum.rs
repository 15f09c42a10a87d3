//! Closed-form bound-state energies, normalized radial wavefunctions and the
//! effective radial potential.
//!
//! Energies:
//!
//! ```text
//! E = c + omega_c |ell - Phi| / alpha^2 + omega0 (2n + j + 1)
//! ```
//!
//! and for the inverse-square case `E = (omega_c / alpha) [2n + 1 + j + |ell - Phi| / alpha]`.
//! The radial function is
//! `psi(r) = D Omega^{j/2} r^j exp(-Omega r^2 / 2) L_n^{(j)}(Omega r^2)`,
//! normalized so that `int |psi|^2 alpha r dr = 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    derive_params, CaseTag, DerivedParams, PotentialSpec, QuantumNumbers, SystemConfig,
};
use crate::specialfn::{gamma::log_gamma_unchecked, laguerre::laguerre_unchecked, ln_factorial};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub qn: QuantumNumbers,
    pub energy: f64,
    pub case_tag: CaseTag,
}

/// How the field-orbital cross term `omega_c (ell - Phi) / alpha^2` is read.
///
/// `Absolute` uses `|ell - Phi|`, the reading behind the closed-form spectrum.
/// `Signed` keeps the sign of `ell - Phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum CrossTermReading {
    #[default]
    Absolute,
    Signed,
}

fn check_case_d(config: &SystemConfig, potential: &PotentialSpec) -> Result<()> {
    if matches!(potential, PotentialSpec::InverseSquare { .. }) && config.b_field == 0.0 {
        return Err(Error::CaseDNeedsField);
    }
    Ok(())
}

fn params(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
) -> Result<DerivedParams> {
    config.validate()?;
    potential.validate()?;
    check_case_d(config, potential)?;
    derive_params(config, potential, qn)
}

/// Energy from the case-specific formula of the potential variant.
pub fn energy(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
) -> Result<EnergyLevel> {
    let d = params(config, potential, qn)?;
    let m = config.mass;
    let alpha = config.alpha;
    let wc = d.omega_c;
    let shift = (qn.ell as f64 - config.phi).abs();
    let n = qn.n as f64;
    let energy = match *potential {
        PotentialSpec::Anharmonic { .. } => general_energy(&d, qn.n),
        PotentialSpec::Harmonic { omega } => {
            let w = (omega * omega + wc * wc / (alpha * alpha)).sqrt();
            wc * shift / (alpha * alpha) + w * (2.0 * n + shift / alpha + 1.0)
        }
        PotentialSpec::Pseudoharmonic { dissociation, r0 }
        | PotentialSpec::ShiftedPseudoharmonic { dissociation, r0 } => {
            let w = (2.0 * dissociation / (m * r0 * r0) + wc * wc / (alpha * alpha)).sqrt();
            let j = (shift * shift / (alpha * alpha) + 2.0 * m * dissociation * r0 * r0).sqrt();
            let offset = if matches!(potential, PotentialSpec::Pseudoharmonic { .. }) {
                -2.0 * dissociation
            } else {
                0.0
            };
            offset + wc * shift / (alpha * alpha) + w * (2.0 * n + 1.0 + j)
        }
        PotentialSpec::InverseSquare { b } => {
            let j = (shift * shift / (alpha * alpha) + 2.0 * m * b).sqrt();
            wc / alpha * (2.0 * n + 1.0 + j + shift / alpha)
        }
    };
    Ok(EnergyLevel { qn, energy, case_tag: potential.case_tag() })
}

/// Energy from the general `(a, b, c)` formula after mapping the variant.
pub fn energy_general(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
) -> Result<EnergyLevel> {
    let d = params(config, potential, qn)?;
    Ok(EnergyLevel { qn, energy: general_energy(&d, qn.n), case_tag: CaseTag::General })
}

fn general_energy(d: &DerivedParams, n: u32) -> f64 {
    d.coefficients.c + d.q + d.omega0 * (2.0 * n as f64 + d.j + 1.0)
}

/// Eigenvalue of the radial problem whose cross term is read per `reading`.
///
/// Under `Signed` the level shifts by `omega_c ((ell - Phi) - |ell - Phi|) / alpha^2`.
pub fn energy_for_reading(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
    reading: CrossTermReading,
) -> Result<f64> {
    let d = params(config, potential, qn)?;
    let base = general_energy(&d, qn.n);
    Ok(match reading {
        CrossTermReading::Absolute => base,
        CrossTermReading::Signed => {
            let shift = qn.ell as f64 - config.phi;
            base - d.q + d.omega_c * shift / (config.alpha * config.alpha)
        }
    })
}

/// `dE/dalpha` of the general formula at fixed `B`, `Phi`, potential and quantum numbers.
pub fn energy_alpha_derivative(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
) -> Result<f64> {
    let d = params(config, potential, qn)?;
    let alpha = config.alpha;
    let a3 = alpha * alpha * alpha;
    let s = (qn.ell as f64 - config.phi).abs();
    let wc = d.omega_c;
    let dj = if d.j > 0.0 { -s * s / (a3 * d.j) } else { 0.0 };
    Ok(-2.0 * wc * s / a3
        - wc * wc / (a3 * d.omega0) * (2.0 * qn.n as f64 + d.j + 1.0)
        + d.omega0 * dj)
}

/// Energy at `alpha = 1` (no defect) in natural units `M = |e| = 1`.
pub fn landau_limit(
    potential: &PotentialSpec,
    qn: QuantumNumbers,
    b_field: f64,
    phi: f64,
) -> Result<EnergyLevel> {
    energy(&SystemConfig::natural(1.0, b_field, phi)?, potential, qn)
}

/// Energy of `config` with the defect removed.
pub fn landau_limit_of(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
) -> Result<EnergyLevel> {
    let flat = SystemConfig { alpha: 1.0, ..*config };
    energy(&flat, potential, qn)
}

/// `V_eff(r)` with the cross term kept signed.
pub fn effective_potential(
    config: &SystemConfig,
    potential: &PotentialSpec,
    r: f64,
    ell: i32,
) -> Result<f64> {
    effective_potential_with(config, potential, r, ell, CrossTermReading::Signed)
}

/// `(a + e^2 B^2 / (8 M alpha^2)) r^2 + (b + (ell - Phi)^2 / (2 M alpha^2)) / r^2
///  + omega_c X / alpha^2 + c`, with `X = ell - Phi` or `|ell - Phi|`.
pub fn effective_potential_with(
    config: &SystemConfig,
    potential: &PotentialSpec,
    r: f64,
    ell: i32,
    reading: CrossTermReading,
) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("effective potential needs r > 0, got {r}")));
    }
    config.validate()?;
    potential.validate()?;
    let k = potential.coefficients(config.mass);
    let m = config.mass;
    let a2 = config.alpha * config.alpha;
    let e2b2 = (config.charge * config.b_field).powi(2);
    let shift = ell as f64 - config.phi;
    let cross = match reading {
        CrossTermReading::Signed => shift,
        CrossTermReading::Absolute => shift.abs(),
    };
    Ok((k.a + e2b2 / (8.0 * m * a2)) * r * r
        + (k.b + shift * shift / (2.0 * m * a2)) / (r * r)
        + config.cyclotron_frequency() * cross / a2
        + k.c)
}

/// Normalized bound state `(n, ell)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialState {
    pub qn: QuantumNumbers,
    pub params: DerivedParams,
    /// `ln D_{n, ell}`.
    pub norm_log: f64,
    pub potential: PotentialSpec,
    pub config: SystemConfig,
}

pub fn wavefunction(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
) -> Result<RadialState> {
    let d = params(config, potential, qn)?;
    let norm_log = 0.5
        * ((2.0 * d.omega_big / config.alpha).ln() + ln_factorial(qn.n)
            - log_gamma_unchecked(qn.n as f64 + d.j + 1.0));
    Ok(RadialState { qn, params: d, norm_log, potential: *potential, config: *config })
}

impl RadialState {
    pub fn omega(&self) -> f64 {
        self.params.omega_big
    }

    pub fn j(&self) -> f64 {
        self.params.j
    }

    /// `s = Omega r^2`, the Laguerre argument.
    pub fn s(&self, r: f64) -> f64 {
        self.params.omega_big * r * r
    }

    pub fn energy(&self) -> f64 {
        general_energy(&self.params, self.qn.n)
    }

    /// `(ln |psi(r)|, sign psi(r))`; `ln |psi|` is `-inf` at a zero.
    pub fn ln_abs(&self, r: f64) -> (f64, f64) {
        let j = self.params.j;
        let om = self.params.omega_big;
        let s = om * r * r;
        let lag = laguerre_unchecked(self.qn.n, j, s);
        let sign = if lag < 0.0 { -1.0 } else { 1.0 };
        if r == 0.0 {
            if j > 0.0 {
                return (f64::NEG_INFINITY, sign);
            }
            return (self.norm_log + lag.abs().ln(), sign);
        }
        let ln = self.norm_log + 0.5 * j * om.ln() + j * r.ln() - 0.5 * s + lag.abs().ln();
        (ln, sign)
    }

    pub fn eval(&self, r: f64) -> f64 {
        let (ln, sign) = self.ln_abs(r);
        if ln == f64::NEG_INFINITY {
            0.0
        } else {
            sign * ln.exp()
        }
    }

    /// `|psi(r)|^2`.
    pub fn density(&self, r: f64) -> f64 {
        let (ln, _) = self.ln_abs(r);
        (2.0 * ln).exp()
    }

    /// Interior zeros of `psi`, the roots of `L_n^{(j)}(Omega r^2)`, found by
    /// sign changes on a fine grid refined with bisection.
    pub fn nodes(&self) -> Vec<f64> {
        let om = self.params.omega_big;
        let n = self.qn.n;
        let j = self.params.j;
        // every Laguerre zero lies below 4n + 2j + 2 in s
        let s_max = 4.0 * n as f64 + 2.0 * j + 10.0;
        let samples = 4000 + 400 * n as usize;
        let f = |s: f64| laguerre_unchecked(n, j, s);
        let mut out = Vec::new();
        let mut prev_s = 0.0;
        let mut prev = f(0.0);
        for k in 1..=samples {
            let s = s_max * k as f64 / samples as f64;
            let v = f(s);
            if v == 0.0 {
                // sampled exactly on a simple root
                out.push((s / om).sqrt());
                prev_s = s;
                prev = -prev;
                continue;
            }
            if (v < 0.0) != (prev < 0.0) {
                let (mut lo, mut hi) = (prev_s, s);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if (f(mid) < 0.0) == (prev < 0.0) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                out.push((0.5 * (lo + hi) / om).sqrt());
            }
            prev_s = s;
            prev = v;
        }
        out
    }

    /// Number of sign changes of `psi` sampled on `(0, r_max]`.
    pub fn count_sign_changes(&self, r_max: f64, samples: usize) -> usize {
        let mut count = 0;
        let mut prev = 0.0;
        for k in 1..=samples {
            let v = self.eval(r_max * k as f64 / samples as f64);
            if v != 0.0 {
                if prev != 0.0 && (v < 0.0) != (prev < 0.0) {
                    count += 1;
                }
                prev = v;
            }
        }
        count
    }

    /// Radius beyond which `|psi|^2 r` is negligible (`Omega r^2 = 2n + j + 60`).
    pub fn outer_radius(&self) -> f64 {
        let p = &self.params;
        ((4.0 * self.qn.n as f64 + 2.0 * p.j + 80.0) / p.omega_big).sqrt()
    }
}
