//! Parameter presets that regenerate the curves of the published figures:
//! energy and radial wavefunction against the defect parameter, and the
//! thermal functions against `alpha` or `T`.
//!
//! Fixed parameters follow the figure captions (`M = |e| = 1`, `c = 0`,
//! `ell = 1`). Series values and axis ranges are not legible from the
//! captions and are chosen to cover the plotted window.

use crate::config::{config_error, Command, Params, PotentialKind, SeriesSpec, SweepSpec, SweepVar};

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: &'static str,
    pub command: Command,
    pub params: Params,
    pub sweep: Option<SweepSpec>,
    pub series: SeriesSpec,
    pub s_max: Option<f64>,
    pub description: &'static str,
}

pub const FIGURE_IDS: [&str; 16] = [
    "2a", "2b", "2c", "2d", "3a", "3b", "3c", "3d", "4a", "4b", "5a", "5b", "6a", "6b", "7a", "7b",
];

fn base(a: Option<f64>, b: Option<f64>, b_field: Option<f64>, phi: Option<f64>, alpha: Option<f64>) -> Params {
    Params {
        alpha,
        b_field,
        phi,
        mass: Some(1.0),
        charge: Some(1.0),
        potential: Some(PotentialKind::Anharmonic),
        a,
        b,
        c: Some(0.0),
        n: Some(0),
        ell: Some(1),
        ..Default::default()
    }
}

fn alpha_sweep() -> Option<SweepSpec> {
    Some(SweepSpec { variable: SweepVar::Alpha, min: 0.1, max: 1.0, steps: 91 })
}

fn series(variable: SweepVar, values: &[f64]) -> SeriesSpec {
    SeriesSpec { variable, values: values.to_vec() }
}

pub fn preset(name: &str) -> anyhow::Result<FigurePreset> {
    let wanted = name.trim().trim_start_matches("fig");
    let id = FIGURE_IDS.iter().copied().find(|&f| f == wanted).ok_or_else(|| {
        config_error(format!("unknown figure {name:?}; expected one of {}", FIGURE_IDS.join(", ")))
    })?;
    let quarter3 = Some(0.75);
    let levels = [0.5, 1.0, 2.0];
    let fluxes = [0.25, 0.5, 0.75];
    let thermal = |b_field: Option<f64>, phi: Option<f64>| {
        let mut params = base(Some(1.0), Some(1.0), b_field, phi, None);
        params.beta = Some(0.5);
        params
    };
    let (command, params, sweep, series, description) = match id {
        "2a" => (
            Command::Spectrum,
            base(None, Some(1.0), Some(1.0), quarter3, None),
            alpha_sweep(),
            series(SweepVar::A, &levels),
            "E against alpha for several a (b = B = 1, Phi = 3/4)",
        ),
        "2b" => (
            Command::Spectrum,
            base(Some(1.0), None, Some(1.0), quarter3, None),
            alpha_sweep(),
            series(SweepVar::SmallB, &levels),
            "E against alpha for several b (a = B = 1, Phi = 3/4)",
        ),
        "2c" => (
            Command::Spectrum,
            base(Some(1.0), Some(1.0), None, quarter3, None),
            alpha_sweep(),
            series(SweepVar::B, &levels),
            "E against alpha for several B (a = b = 1, Phi = 3/4)",
        ),
        "2d" => (
            Command::Spectrum,
            base(Some(1.0), Some(1.0), Some(2.0), None, None),
            alpha_sweep(),
            series(SweepVar::Phi, &fluxes),
            "E against alpha for several Phi (a = b = 1, B = 2)",
        ),
        "3a" => (
            Command::Wavefunction,
            base(Some(1.0), Some(1.0), Some(1.0), quarter3, None),
            None,
            series(SweepVar::Alpha, &[0.25, 0.5, 0.75, 1.0]),
            "psi against s for several alpha (a = b = B = 1, Phi = 3/4)",
        ),
        "3b" => (
            Command::Wavefunction,
            base(Some(1.0), Some(1.0), None, quarter3, quarter3),
            None,
            series(SweepVar::B, &levels),
            "psi against s for several B (a = b = 1, Phi = alpha = 3/4)",
        ),
        "3c" => (
            Command::Wavefunction,
            base(None, Some(1.0), Some(2.0), quarter3, quarter3),
            None,
            series(SweepVar::A, &levels),
            "psi against s for several a (b = 1, B = 2, Phi = alpha = 3/4)",
        ),
        "3d" => (
            Command::Wavefunction,
            base(Some(2.0), None, Some(1.0), quarter3, quarter3),
            None,
            series(SweepVar::SmallB, &levels),
            "psi against s for several b (a = 2, B = 1, Phi = alpha = 3/4)",
        ),
        "4a" | "5a" | "6a" => (
            Command::Thermo,
            thermal(None, Some(0.5)),
            alpha_sweep(),
            series(SweepVar::B, &levels),
            "Z, F and U against alpha for several B (a = b = 1, Phi = 1/2, beta = 1/2)",
        ),
        "4b" | "5b" | "6b" => (
            Command::Thermo,
            thermal(Some(2.0), None),
            alpha_sweep(),
            series(SweepVar::Phi, &fluxes),
            "Z, F and U against alpha for several Phi (a = b = 1, B = 2, beta = 1/2)",
        ),
        "7a" => (
            Command::Thermo,
            thermal(None, Some(0.5)),
            alpha_sweep(),
            series(SweepVar::B, &levels),
            "C against alpha for several B (a = 1, beta = 1/2)",
        ),
        _ => (
            Command::Thermo,
            base(Some(1.0), Some(1.0), None, Some(0.5), Some(0.5)),
            Some(SweepSpec { variable: SweepVar::T, min: 0.05, max: 5.0, steps: 100 }),
            series(SweepVar::B, &levels),
            "C against T for several B (a = 1, alpha = 1/2)",
        ),
    };
    let s_max = (command == Command::Wavefunction).then_some(10.0);
    Ok(FigurePreset { id, command, params, sweep, series, s_max, description })
}
