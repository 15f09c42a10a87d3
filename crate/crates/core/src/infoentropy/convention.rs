use std::fmt;

use serde::{Deserialize, Serialize};

/// Measure used to turn `|psi|^2` into a density on `[0, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PositionMeasure {
    /// `rho ~ |psi|^2`.
    PlainDr,
    /// `rho ~ |psi|^2 r`.
    RadialRDr,
    /// `rho ~ |psi|^2 alpha r`.
    ConicalAlphaRDr,
}

/// How the momentum density is built from the position density `rho`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentumRule {
    /// `sigma ~ |FT[rho](p)|`, renormalized over the whole `p` line.
    FtOfDensityModulus,
    /// `sigma = |FT[sign(psi) sqrt(rho)](p)|^2`, the usual quantum-mechanical rule.
    FtOfWavefunction,
    /// `sigma = |FT[rho](p)|` on `p >= 0` only, used as is without renormalization.
    FtOfDensityModulusHalfLine,
}

/// How a tabulated field value `B` maps onto the cyclotron frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldReading {
    /// `omega_c = |e| B / (2M)`, the model's own definition.
    #[default]
    Half,
    /// `omega_c = |e| B / M`, i.e. the tabulated value is `2 B`.
    Full,
}

impl FieldReading {
    pub const ALL: [FieldReading; 2] = [FieldReading::Half, FieldReading::Full];

    /// Model field for a tabulated field value.
    pub fn model_field(self, tabulated: f64) -> f64 {
        match self {
            FieldReading::Half => tabulated,
            FieldReading::Full => 2.0 * tabulated,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            FieldReading::Half => "half",
            FieldReading::Full => "full",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DensityConvention {
    pub position_measure: PositionMeasure,
    pub momentum_rule: MomentumRule,
}

impl DensityConvention {
    /// `|psi|^2 r` in position space and the squared transform of the amplitude.
    pub const STANDARD: DensityConvention = DensityConvention {
        position_measure: PositionMeasure::RadialRDr,
        momentum_rule: MomentumRule::FtOfWavefunction,
    };

    pub const fn new(position_measure: PositionMeasure, momentum_rule: MomentumRule) -> Self {
        DensityConvention { position_measure, momentum_rule }
    }

    /// All nine combinations in enum order.
    pub fn all() -> Vec<DensityConvention> {
        let measures = [
            PositionMeasure::PlainDr,
            PositionMeasure::RadialRDr,
            PositionMeasure::ConicalAlphaRDr,
        ];
        let rules = [
            MomentumRule::FtOfDensityModulus,
            MomentumRule::FtOfWavefunction,
            MomentumRule::FtOfDensityModulusHalfLine,
        ];
        measures
            .iter()
            .flat_map(|&m| rules.iter().map(move |&r| DensityConvention::new(m, r)))
            .collect()
    }

    pub fn tag(&self) -> String {
        let m = match self.position_measure {
            PositionMeasure::PlainDr => "plain_dr",
            PositionMeasure::RadialRDr => "radial_r_dr",
            PositionMeasure::ConicalAlphaRDr => "conical_alpha_r_dr",
        };
        let r = match self.momentum_rule {
            MomentumRule::FtOfDensityModulus => "ft_of_density_modulus",
            MomentumRule::FtOfWavefunction => "ft_of_wavefunction",
            MomentumRule::FtOfDensityModulusHalfLine => "ft_of_density_modulus_half_line",
        };
        format!("{m}/{r}")
    }
}

impl fmt::Display for DensityConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order_is_stable() {
        let all = DensityConvention::all();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0].tag(), "plain_dr/ft_of_density_modulus");
        assert_eq!(all[4], DensityConvention::STANDARD);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn field_reading() {
        assert_eq!(FieldReading::Half.model_field(1.5), 1.5);
        assert_eq!(FieldReading::Full.model_field(1.5), 3.0);
    }
}
