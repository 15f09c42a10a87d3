//! Run configuration: a strict JSON document, figure presets and command-line
//! flags, merged in that order.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use disclination_qm::{ChargeSign, PotentialSpec, QuantumNumbers, SystemConfig};
use serde::{Deserialize, Serialize};

/// A configuration problem; the binary exits with status 2 on these.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "configuration error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_error(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Spectrum,
    Wavefunction,
    EffectivePotential,
    Thermo,
    Magnetics,
    Entropy,
    Tables,
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Wavefunction => "wavefunction",
            Command::EffectivePotential => "effective-potential",
            Command::Thermo => "thermo",
            Command::Magnetics => "magnetics",
            Command::Entropy => "entropy",
            Command::Tables => "tables",
            Command::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PotentialKind {
    Anharmonic,
    Harmonic,
    Pseudoharmonic,
    ShiftedPseudoharmonic,
    InverseSquare,
}

/// Physical parameters. Every field is optional so that files, presets and
/// flags can be layered; [`Params::resolve`] fills defaults and checks that
/// only parameters of the chosen potential are set.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub alpha: Option<f64>,
    #[serde(rename = "B")]
    pub b_field: Option<f64>,
    pub phi: Option<f64>,
    pub mass: Option<f64>,
    pub charge: Option<f64>,
    pub charge_sign: Option<ChargeSign>,
    pub potential: Option<PotentialKind>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub omega: Option<f64>,
    #[serde(rename = "De")]
    pub de: Option<f64>,
    pub r0: Option<f64>,
    pub n: Option<u32>,
    pub ell: Option<i32>,
    pub beta: Option<f64>,
}

macro_rules! overlay {
    ($dst:ident, $src:ident, $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f; } )*
    };
}

/// A fully resolved parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub config: SystemConfig,
    pub potential: PotentialSpec,
    pub qn: QuantumNumbers,
    pub beta: Option<f64>,
}

impl Params {
    /// Fields set in `other` replace those in `self`.
    pub fn overlay(&mut self, other: &Params) {
        overlay!(
            self, other, alpha, b_field, phi, mass, charge, charge_sign, potential, a, b, c, omega,
            de, r0, n, ell, beta
        );
    }

    /// Assign a sweep or series variable.
    pub fn set(&mut self, var: SweepVar, value: f64) -> anyhow::Result<()> {
        let integer = |name: &str| -> anyhow::Result<f64> {
            if value.fract() != 0.0 {
                return Err(config_error(format!("{name} must be an integer, got {value}")));
            }
            Ok(value)
        };
        match var {
            SweepVar::Alpha => self.alpha = Some(value),
            SweepVar::B => self.b_field = Some(value),
            SweepVar::Phi => self.phi = Some(value),
            SweepVar::Beta => self.beta = Some(value),
            SweepVar::T => {
                if !(value > 0.0) {
                    return Err(config_error(format!("temperature must be > 0, got {value}")));
                }
                self.beta = Some(1.0 / value)
            }
            SweepVar::A => self.a = Some(value),
            SweepVar::SmallB => self.b = Some(value),
            SweepVar::Omega => self.omega = Some(value),
            SweepVar::De => self.de = Some(value),
            SweepVar::R0 => self.r0 = Some(value),
            SweepVar::N => {
                let v = integer("n")?;
                if v < 0.0 {
                    return Err(config_error(format!("n must be >= 0, got {value}")));
                }
                self.n = Some(v as u32)
            }
            SweepVar::Ell => self.ell = Some(integer("ell")? as i32),
        }
        Ok(())
    }

    pub fn resolve(&self) -> anyhow::Result<Point> {
        let kind = self.potential.unwrap_or(PotentialKind::Anharmonic);
        let allowed: &[&str] = match kind {
            PotentialKind::Anharmonic => &["a", "b", "c"],
            PotentialKind::Harmonic => &["omega"],
            PotentialKind::Pseudoharmonic | PotentialKind::ShiftedPseudoharmonic => &["De", "r0"],
            PotentialKind::InverseSquare => &["b"],
        };
        let given = [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("omega", self.omega),
            ("De", self.de),
            ("r0", self.r0),
        ];
        for (name, v) in given {
            if v.is_some() && !allowed.contains(&name) {
                return Err(config_error(format!(
                    "{name} is not a parameter of the {} potential",
                    kind.to_possible_value().unwrap().get_name()
                )));
            }
        }
        let need = |name: &str, v: Option<f64>| {
            v.ok_or_else(|| {
                config_error(format!(
                    "the {} potential needs {name}",
                    kind.to_possible_value().unwrap().get_name()
                ))
            })
        };
        let potential = match kind {
            PotentialKind::Anharmonic => PotentialSpec::Anharmonic {
                a: self.a.unwrap_or(0.0),
                b: self.b.unwrap_or(0.0),
                c: self.c.unwrap_or(0.0),
            },
            PotentialKind::Harmonic => PotentialSpec::Harmonic { omega: need("omega", self.omega)? },
            PotentialKind::Pseudoharmonic => PotentialSpec::Pseudoharmonic {
                dissociation: need("De", self.de)?,
                r0: need("r0", self.r0)?,
            },
            PotentialKind::ShiftedPseudoharmonic => PotentialSpec::ShiftedPseudoharmonic {
                dissociation: need("De", self.de)?,
                r0: need("r0", self.r0)?,
            },
            PotentialKind::InverseSquare => PotentialSpec::InverseSquare { b: need("b", self.b)? },
        };
        potential.validate().map_err(|e| config_error(e.to_string()))?;
        let config = SystemConfig::new(
            self.alpha.unwrap_or(1.0),
            self.b_field.unwrap_or(0.0),
            self.phi.unwrap_or(0.0),
            self.mass.unwrap_or(1.0),
            self.charge.unwrap_or(1.0),
        )
        .map_err(|e| config_error(e.to_string()))?
        .with_charge_sign(self.charge_sign.unwrap_or_default());
        if let Some(beta) = self.beta {
            if !(beta > 0.0) || !beta.is_finite() {
                return Err(config_error(format!("beta must be > 0, got {beta}")));
            }
        }
        Ok(Point {
            config,
            potential,
            qn: QuantumNumbers::new(self.n.unwrap_or(0), self.ell.unwrap_or(0)),
            beta: self.beta,
        })
    }
}

/// Variables that can be swept or used as a series label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepVar {
    #[serde(rename = "alpha")]
    Alpha,
    #[serde(rename = "B")]
    B,
    #[serde(rename = "phi")]
    Phi,
    #[serde(rename = "beta")]
    Beta,
    /// Temperature; sets `beta = 1 / T`.
    #[serde(rename = "T")]
    T,
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    SmallB,
    #[serde(rename = "omega")]
    Omega,
    #[serde(rename = "De")]
    De,
    #[serde(rename = "r0")]
    R0,
    #[serde(rename = "n")]
    N,
    #[serde(rename = "ell")]
    Ell,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::Alpha => "alpha",
            SweepVar::B => "B",
            SweepVar::Phi => "phi",
            SweepVar::Beta => "beta",
            SweepVar::T => "T",
            SweepVar::A => "a",
            SweepVar::SmallB => "b",
            SweepVar::Omega => "omega",
            SweepVar::De => "De",
            SweepVar::R0 => "r0",
            SweepVar::N => "n",
            SweepVar::Ell => "ell",
        }
    }
}

impl FromStr for SweepVar {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let all = [
            SweepVar::Alpha,
            SweepVar::B,
            SweepVar::Phi,
            SweepVar::Beta,
            SweepVar::T,
            SweepVar::A,
            SweepVar::SmallB,
            SweepVar::Omega,
            SweepVar::De,
            SweepVar::R0,
            SweepVar::N,
            SweepVar::Ell,
        ];
        all.into_iter().find(|v| v.name() == s).ok_or_else(|| {
            config_error(format!(
                "unknown sweep variable {s:?}; expected one of alpha, B, phi, beta, T, a, b, omega, De, r0, n, ell"
            ))
        })
    }
}

/// `steps` points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: SweepVar,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.max
                } else {
                    self.min + (self.max - self.min) * k as f64 / (self.steps - 1) as f64
                }
            })
            .collect()
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.steps < 1 {
            return Err(config_error("sweep needs steps >= 1"));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(config_error("sweep bounds must be finite"));
        }
        Ok(())
    }
}

impl FromStr for SweepSpec {
    type Err = anyhow::Error;

    /// `var:min:max:steps`.
    fn from_str(s: &str) -> anyhow::Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(config_error(format!("sweep {s:?} is not var:min:max:steps")));
        }
        let num = |t: &str| {
            t.trim().parse::<f64>().map_err(|_| config_error(format!("bad number {t:?} in sweep {s:?}")))
        };
        let spec = SweepSpec {
            variable: parts[0].trim().parse()?,
            min: num(parts[1])?,
            max: num(parts[2])?,
            steps: parts[3]
                .trim()
                .parse()
                .map_err(|_| config_error(format!("bad step count {:?} in sweep {s:?}", parts[3])))?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// An outer loop over a few values of one variable, one curve each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesSpec {
    pub variable: SweepVar,
    pub values: Vec<f64>,
}

impl FromStr for SeriesSpec {
    type Err = anyhow::Error;

    /// `var:v1,v2,...`.
    fn from_str(s: &str) -> anyhow::Result<Self> {
        let (var, vals) =
            s.split_once(':').ok_or_else(|| config_error(format!("series {s:?} is not var:v1,v2,...")))?;
        let values = vals
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| config_error(format!("bad number {t:?} in series {s:?}"))))
            .collect::<anyhow::Result<Vec<f64>>>()?;
        if values.is_empty() {
            return Err(config_error("series needs at least one value"));
        }
        Ok(SeriesSpec { variable: var.trim().parse()?, values })
    }
}

/// Sampling of `r` (effective potential) or `s = Omega r^2` (wavefunction).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub points: Option<usize>,
    pub s_max: Option<f64>,
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Relative tolerance handed to the Numerov solver.
    pub oracle: f64,
    /// Quadrature tolerance for entropies.
    pub entropy: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            oracle: disclination_qm::oracle::DEFAULT_TOL,
            entropy: disclination_qm::specialfn::ENTROPY_TOL,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

/// The JSON document accepted by `--config`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    #[serde(default)]
    pub params: Params,
    pub sweep: Option<SweepSpec>,
    pub series: Option<SeriesSpec>,
    pub figure: Option<String>,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// `standard`, `calibrate` or a convention tag such as `plain_dr/ft_of_wavefunction`.
    pub convention: Option<String>,
    pub field_reading: Option<disclination_qm::infoentropy::FieldReading>,
    /// Also solve with the Numerov oracle (`spectrum`).
    pub oracle: Option<bool>,
    /// Table number for `tables`; all three when absent.
    pub which: Option<u8>,
    pub sweep_seed: Option<u64>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        serde_json::from_str(text).map_err(|e| config_error(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parsing() {
        let s: SweepSpec = "alpha:0.5:1:6".parse().unwrap();
        assert_eq!(s.variable, SweepVar::Alpha);
        assert_eq!(s.values(), vec![0.5, 0.6, 0.7, 0.8, 0.9, 1.0]);
        let one: SweepSpec = "B:2:3:1".parse().unwrap();
        assert_eq!(one.values(), vec![2.0]);
        assert!("alpha:0:1:0".parse::<SweepSpec>().is_err());
        assert!("gamma:0:1:3".parse::<SweepSpec>().is_err());
        assert!("alpha:0:1".parse::<SweepSpec>().is_err());
    }

    #[test]
    fn series_parsing() {
        let s: SeriesSpec = "De:0.5, 1,2".parse().unwrap();
        assert_eq!(s.variable, SweepVar::De);
        assert_eq!(s.values, vec![0.5, 1.0, 2.0]);
    }

    #[test]
    fn strict_json() {
        let ok = RunConfig::from_json(
            r#"{"command": "spectrum", "params": {"alpha": 0.5, "B": 1, "potential": "harmonic", "omega": 2},
                "sweep": {"variable": "B", "min": 0, "max": 1, "steps": 3}}"#,
        )
        .unwrap();
        assert_eq!(ok.params.b_field, Some(1.0));
        assert_eq!(ok.sweep.unwrap().variable, SweepVar::B);
        assert!(RunConfig::from_json(r#"{"params": {"alpha": 0.5, "gamma": 1}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"colour": 1}"#).is_err());
    }

    #[test]
    fn foreign_potential_parameters_are_rejected() {
        let p = Params { potential: Some(PotentialKind::Harmonic), omega: Some(1.0), a: Some(1.0), ..Default::default() };
        assert!(p.resolve().unwrap_err().downcast_ref::<ConfigError>().is_some());
        let p = Params { potential: Some(PotentialKind::Pseudoharmonic), de: Some(1.0), ..Default::default() };
        assert!(p.resolve().is_err());
    }

    #[test]
    fn integer_variables() {
        let mut p = Params::default();
        p.set(SweepVar::N, 2.0).unwrap();
        p.set(SweepVar::Ell, -1.0).unwrap();
        assert_eq!((p.n, p.ell), (Some(2), Some(-1)));
        assert!(p.set(SweepVar::N, 0.5).is_err());
        p.set(SweepVar::T, 4.0).unwrap();
        assert_eq!(p.beta, Some(0.25));
    }
}
