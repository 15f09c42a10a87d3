//! Physical configuration, potential family and the derived parameter bundle.
//!
//! Everything downstream (spectrum, thermodynamics, magnetic response,
//! entropies) reads its coefficients from [`DerivedParams`], so this is the
//! single place where the defect parameter, field, flux and potential are
//! folded together.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign of the particle charge. Magnitudes always enter through `charge`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChargeSign {
    #[default]
    Positive,
    Negative,
}

impl ChargeSign {
    pub fn factor(self) -> f64 {
        match self {
            ChargeSign::Positive => 1.0,
            ChargeSign::Negative => -1.0,
        }
    }
}

/// The physical environment: conical defect, uniform field, AB flux and the
/// particle itself. Natural units with the axial wavenumber fixed to zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    /// Defect parameter, `0 < alpha <= 1`; `alpha = 1` is flat space.
    pub alpha: f64,
    /// Magnetic field magnitude, `B >= 0`.
    #[serde(rename = "B")]
    pub b_field: f64,
    /// Flux ratio `Phi_AB / Phi_0`.
    pub phi: f64,
    pub mass: f64,
    /// Charge magnitude `|e|`.
    pub charge: f64,
    #[serde(default)]
    pub charge_sign: ChargeSign,
}

impl SystemConfig {
    pub fn new(alpha: f64, b_field: f64, phi: f64, mass: f64, charge: f64) -> Result<Self> {
        let config = SystemConfig {
            alpha,
            b_field,
            phi,
            mass,
            charge,
            charge_sign: ChargeSign::Positive,
        };
        config.validate()?;
        Ok(config)
    }

    /// Unit mass and unit charge, the convention used by every table and figure.
    pub fn natural(alpha: f64, b_field: f64, phi: f64) -> Result<Self> {
        Self::new(alpha, b_field, phi, 1.0, 1.0)
    }

    pub fn with_charge_sign(mut self, sign: ChargeSign) -> Self {
        self.charge_sign = sign;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::invalid("alpha", self.alpha, "must lie in (0, 1]"));
        }
        if !(self.b_field >= 0.0) || !self.b_field.is_finite() {
            return Err(Error::invalid("B", self.b_field, "must be a finite magnitude >= 0"));
        }
        if !self.phi.is_finite() {
            return Err(Error::invalid("phi", self.phi, "must be finite"));
        }
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return Err(Error::invalid("mass", self.mass, "must be > 0"));
        }
        if !(self.charge > 0.0) || !self.charge.is_finite() {
            return Err(Error::invalid("charge", self.charge, "must be > 0"));
        }
        Ok(())
    }

    /// `omega_c = |e| B / (2M)`.
    pub fn cyclotron_frequency(&self) -> f64 {
        self.charge * self.b_field / (2.0 * self.mass)
    }

    /// Signed charge `e`.
    pub fn signed_charge(&self) -> f64 {
        self.charge_sign.factor() * self.charge
    }
}

/// Coefficients of `V(r) = a r^2 + b / r^2 + c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnharmonicCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// The potential family. Every variant is a special case of the anharmonic
/// form and maps onto it through [`PotentialSpec::coefficients`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PotentialSpec {
    Anharmonic { a: f64, b: f64, c: f64 },
    Harmonic { omega: f64 },
    Pseudoharmonic {
        #[serde(rename = "De")]
        dissociation: f64,
        r0: f64,
    },
    ShiftedPseudoharmonic {
        #[serde(rename = "De")]
        dissociation: f64,
        r0: f64,
    },
    InverseSquare { b: f64 },
}

/// Which closed-form expression produced an energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    General,
    /// Harmonic oscillator.
    A,
    /// Pseudoharmonic.
    B,
    /// Shifted pseudoharmonic.
    C,
    /// Inverse square.
    D,
}

impl PotentialSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PotentialSpec::Anharmonic { a, b, c } => {
                if !(a >= 0.0) || !a.is_finite() {
                    return Err(Error::invalid("a", a, "must be >= 0"));
                }
                if !(b >= 0.0) || !b.is_finite() {
                    return Err(Error::invalid("b", b, "must be >= 0"));
                }
                if !c.is_finite() {
                    return Err(Error::invalid("c", c, "must be finite"));
                }
            }
            PotentialSpec::Harmonic { omega } => {
                if !(omega > 0.0) || !omega.is_finite() {
                    return Err(Error::invalid("omega", omega, "must be > 0"));
                }
            }
            PotentialSpec::Pseudoharmonic { dissociation, r0 }
            | PotentialSpec::ShiftedPseudoharmonic { dissociation, r0 } => {
                if !(dissociation > 0.0) || !dissociation.is_finite() {
                    return Err(Error::invalid("De", dissociation, "must be > 0"));
                }
                if !(r0 > 0.0) || !r0.is_finite() {
                    return Err(Error::invalid("r0", r0, "must be > 0"));
                }
            }
            PotentialSpec::InverseSquare { b } => {
                if !(b > 0.0) || !b.is_finite() {
                    return Err(Error::invalid("b", b, "must be > 0"));
                }
            }
        }
        Ok(())
    }

    /// Map onto `(a, b, c)`. The harmonic variant needs the mass.
    pub fn coefficients(&self, mass: f64) -> AnharmonicCoefficients {
        match *self {
            PotentialSpec::Anharmonic { a, b, c } => AnharmonicCoefficients { a, b, c },
            PotentialSpec::Harmonic { omega } => AnharmonicCoefficients {
                a: 0.5 * mass * omega * omega,
                b: 0.0,
                c: 0.0,
            },
            PotentialSpec::Pseudoharmonic { dissociation, r0 } => AnharmonicCoefficients {
                a: dissociation / (r0 * r0),
                b: dissociation * r0 * r0,
                c: -2.0 * dissociation,
            },
            PotentialSpec::ShiftedPseudoharmonic { dissociation, r0 } => AnharmonicCoefficients {
                a: dissociation / (r0 * r0),
                b: dissociation * r0 * r0,
                c: 0.0,
            },
            PotentialSpec::InverseSquare { b } => AnharmonicCoefficients { a: 0.0, b, c: 0.0 },
        }
    }

    pub fn case_tag(&self) -> CaseTag {
        match self {
            PotentialSpec::Anharmonic { .. } => CaseTag::General,
            PotentialSpec::Harmonic { .. } => CaseTag::A,
            PotentialSpec::Pseudoharmonic { .. } => CaseTag::B,
            PotentialSpec::ShiftedPseudoharmonic { .. } => CaseTag::C,
            PotentialSpec::InverseSquare { .. } => CaseTag::D,
        }
    }

    /// Same potential with the additive constant removed.
    pub fn without_constant(&self, mass: f64) -> PotentialSpec {
        match *self {
            PotentialSpec::Pseudoharmonic { dissociation, r0 } => {
                PotentialSpec::ShiftedPseudoharmonic { dissociation, r0 }
            }
            PotentialSpec::Anharmonic { .. } => {
                let k = self.coefficients(mass);
                PotentialSpec::Anharmonic { a: k.a, b: k.b, c: 0.0 }
            }
            other => other,
        }
    }

    /// `V(r)`.
    pub fn value(&self, r: f64, mass: f64) -> f64 {
        let k = self.coefficients(mass);
        k.a * r * r + k.b / (r * r) + k.c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub ell: i32,
}

impl QuantumNumbers {
    pub fn new(n: u32, ell: i32) -> Self {
        QuantumNumbers { n, ell }
    }
}

/// Coefficients shared by the energy, wavefunction, thermal and magnetic
/// expressions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedParams {
    pub omega_c: f64,
    /// `|ell - Phi| / alpha`.
    pub ell_prime: f64,
    /// `sqrt(2 M a + M^2 omega_c^2 / alpha^2)`.
    pub omega_big: f64,
    /// `sqrt((ell - Phi)^2 / alpha^2 + 2 M b)`, the Laguerre upper index.
    pub j: f64,
    /// `Q + omega0 (j + 1)`, the ground energy of the fixed-`ell` tower with `c = 0`.
    pub p: f64,
    /// `omega_c |ell - Phi| / alpha^2`.
    pub q: f64,
    /// `Omega / M`, half the level spacing.
    pub omega0: f64,
    pub coefficients: AnharmonicCoefficients,
    pub mass: f64,
}

impl DerivedParams {
    /// `Lambda = 2M(E - c) - 2M omega_c ell' / alpha` for a given energy.
    pub fn lambda(&self, energy: f64, alpha: f64) -> f64 {
        2.0 * self.mass * (energy - self.coefficients.c)
            - 2.0 * self.mass * self.omega_c * self.ell_prime / alpha
    }
}

pub fn derive_params(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
) -> Result<DerivedParams> {
    config.validate()?;
    potential.validate()?;
    let m = config.mass;
    let alpha = config.alpha;
    let k = potential.coefficients(m);
    let omega_c = config.cyclotron_frequency();
    let shift = qn.ell as f64 - config.phi;
    let ell_prime = shift.abs() / alpha;
    let omega_big = (2.0 * m * k.a + m * m * omega_c * omega_c / (alpha * alpha)).sqrt();
    if omega_big == 0.0 {
        return Err(Error::DegenerateConfinement);
    }
    let j = (shift * shift / (alpha * alpha) + 2.0 * m * k.b).sqrt();
    let omega0 = (2.0 * k.a / m + omega_c * omega_c / (alpha * alpha)).sqrt();
    let q = omega_c * shift.abs() / (alpha * alpha);
    let p = q + omega0 * (j + 1.0);
    Ok(DerivedParams {
        omega_c,
        ell_prime,
        omega_big,
        j,
        p,
        q,
        omega0,
        coefficients: k,
        mass: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn flat_space_oscillator() {
        let cfg = SystemConfig::natural(1.0, 0.0, 0.0).unwrap();
        let d = derive_params(&cfg, &PotentialSpec::Harmonic { omega: 1.0 }, QuantumNumbers::new(0, 0))
            .unwrap();
        assert_eq!(d.omega_c, 0.0);
        assert_eq!(d.ell_prime, 0.0);
        assert_eq!(d.j, 0.0);
        assert_relative_eq!(d.omega_big, 1.0, epsilon = 1e-15);
        assert_relative_eq!(d.omega0, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn worked_point() {
        let cfg = SystemConfig::natural(0.75, 1.0, 0.75).unwrap();
        let pot = PotentialSpec::Anharmonic { a: 1.0, b: 1.0, c: 0.0 };
        let d = derive_params(&cfg, &pot, QuantumNumbers::new(0, 1)).unwrap();
        assert_relative_eq!(d.omega_c, 0.5, epsilon = 1e-15);
        assert_relative_eq!(d.ell_prime, 1.0 / 3.0, epsilon = 1e-15);
        // sqrt(1/9 + 2), sqrt(2 + 4/9)
        assert_relative_eq!(d.j, 1.452_966_314_513_557_8, epsilon = 1e-14);
        assert_relative_eq!(d.omega0, 1.563_471_919_941_143_2, epsilon = 1e-14);
    }

    #[test]
    fn flux_cancels_orbital_term() {
        let cfg = SystemConfig::natural(0.5, 0.0, 2.0).unwrap();
        let pot = PotentialSpec::Anharmonic { a: 0.7, b: 0.0, c: 0.0 };
        let d = derive_params(&cfg, &pot, QuantumNumbers::new(0, 2)).unwrap();
        assert_eq!(d.ell_prime, 0.0);
        assert_eq!(d.j, 0.0);
        assert_relative_eq!(d.omega_big, (2.0f64 * 0.7).sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn no_confinement_is_rejected() {
        let cfg = SystemConfig::natural(0.5, 0.0, 0.0).unwrap();
        let pot = PotentialSpec::Anharmonic { a: 0.0, b: 1.0, c: 0.0 };
        assert!(matches!(
            derive_params(&cfg, &pot, QuantumNumbers::new(0, 0)),
            Err(Error::DegenerateConfinement)
        ));
    }

    #[test]
    fn config_validation() {
        assert!(SystemConfig::natural(0.0, 1.0, 0.0).is_err());
        assert!(SystemConfig::natural(1.2, 1.0, 0.0).is_err());
        assert!(SystemConfig::natural(1.0, -1.0, 0.0).is_err());
        assert!(SystemConfig::new(0.5, 1.0, 0.0, 0.0, 1.0).is_err());
        assert!(SystemConfig::new(0.5, 1.0, 0.0, 1.0, -1.0).is_err());
        assert!(SystemConfig::natural(1.0, 0.0, 0.3).is_ok());
    }

    #[test]
    fn variant_mapping() {
        let m = 2.0;
        let k = PotentialSpec::Harmonic { omega: 3.0 }.coefficients(m);
        assert_eq!((k.a, k.b, k.c), (9.0, 0.0, 0.0));
        let k = PotentialSpec::Pseudoharmonic { dissociation: 2.0, r0: 0.5 }.coefficients(m);
        assert_eq!((k.a, k.b, k.c), (8.0, 0.5, -4.0));
        let k = PotentialSpec::ShiftedPseudoharmonic { dissociation: 2.0, r0: 0.5 }.coefficients(m);
        assert_eq!((k.a, k.b, k.c), (8.0, 0.5, 0.0));
        let k = PotentialSpec::InverseSquare { b: 1.5 }.coefficients(m);
        assert_eq!((k.a, k.b, k.c), (0.0, 1.5, 0.0));
    }

    #[test]
    fn pseudoharmonic_is_a_perfect_square() {
        let pot = PotentialSpec::Pseudoharmonic { dissociation: 1.3, r0: 1.7 };
        for &r in &[0.3f64, 1.0, 1.7, 4.2] {
            let direct = 1.3 * (r / 1.7 - 1.7 / r).powi(2);
            assert_relative_eq!(pot.value(r, 1.0), direct, epsilon = 1e-12);
        }
    }

    #[test]
    fn pure_function() {
        let cfg = SystemConfig::natural(0.37, 2.1, -0.3).unwrap();
        let pot = PotentialSpec::Anharmonic { a: 0.4, b: 1.1, c: 0.2 };
        let qn = QuantumNumbers::new(2, -1);
        let a = derive_params(&cfg, &pot, qn).unwrap();
        let b = derive_params(&cfg, &pot, qn).unwrap();
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }

    #[test]
    fn lambda_vanishes_consistently() {
        let cfg = SystemConfig::natural(0.6, 1.4, 0.2).unwrap();
        let pot = PotentialSpec::Anharmonic { a: 0.5, b: 0.3, c: 0.1 };
        let d = derive_params(&cfg, &pot, QuantumNumbers::new(0, 1)).unwrap();
        let energy_at_zero_lambda = d.coefficients.c + d.omega_c * d.ell_prime / cfg.alpha;
        assert!(d.lambda(energy_at_zero_lambda, cfg.alpha).abs() < 1e-14);
    }
}
