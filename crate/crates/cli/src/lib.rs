//! Command-line surface of `disclination-qm`: configuration ingestion,
//! parameter sweeps, table reproduction, the validation battery and figure
//! presets.

pub mod commands;
pub mod config;
pub mod figures;
pub mod output;
pub mod validate;

use std::path::PathBuf;

use clap::Parser;
use disclination_qm::infoentropy::FieldReading;
use disclination_qm::ChargeSign;

use crate::commands::{parse_convention, run_tables, sweep_table, EvalOptions};
use crate::config::{config_error, Command, Format, Params, PotentialKind, RunConfig};
use crate::output::json_string;

pub const THREADS_ENV: &str = "DISCLINATION_QM_THREADS";

fn parse_charge_sign(s: &str) -> Result<ChargeSign, String> {
    match s {
        "positive" | "+" => Ok(ChargeSign::Positive),
        "negative" | "-" => Ok(ChargeSign::Negative),
        _ => Err(format!("expected positive or negative, got {s:?}")),
    }
}

fn parse_field_reading(s: &str) -> Result<FieldReading, String> {
    match s {
        "half" => Ok(FieldReading::Half),
        "full" => Ok(FieldReading::Full),
        _ => Err(format!("expected half or full, got {s:?}")),
    }
}

/// Flags override the fields of `--config`.
#[derive(Debug, Clone, Default, Parser)]
#[command(name = "disclination-qm", version, about, allow_negative_numbers = true)]
pub struct Cli {
    /// What to compute; may instead come from the config file.
    #[arg(value_enum)]
    pub command: Option<Command>,

    /// JSON run configuration (strict: unknown fields are errors).
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Defect parameter, 0 < alpha <= 1.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Magnetic field magnitude.
    #[arg(long = "B")]
    pub b_field: Option<f64>,
    /// Aharonov-Bohm flux in units of the flux quantum.
    #[arg(long)]
    pub phi: Option<f64>,
    #[arg(long)]
    pub mass: Option<f64>,
    /// Charge magnitude |e|.
    #[arg(long)]
    pub charge: Option<f64>,
    #[arg(long, value_parser = parse_charge_sign)]
    pub charge_sign: Option<ChargeSign>,
    #[arg(long, value_enum)]
    pub potential: Option<PotentialKind>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long = "De")]
    pub de: Option<f64>,
    #[arg(long)]
    pub r0: Option<f64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub ell: Option<i32>,
    /// Inverse temperature; switches magnetics to the thermal ensemble.
    #[arg(long)]
    pub beta: Option<f64>,

    /// var:min:max:steps, steps being the number of points.
    #[arg(long)]
    pub sweep: Option<String>,
    /// var:v1,v2,... evaluated as separate curves.
    #[arg(long)]
    pub series: Option<String>,
    /// Preset reproducing a published figure (2a ... 7b).
    #[arg(long)]
    pub figure: Option<String>,

    /// Samples of the wavefunction or effective-potential grid.
    #[arg(long)]
    pub points: Option<usize>,
    /// Upper end of the s = Omega r^2 grid for wavefunctions.
    #[arg(long)]
    pub s_max: Option<f64>,
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,

    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Also solve each level with the Numerov oracle (spectrum).
    #[arg(long)]
    pub oracle: bool,
    /// standard, calibrate, or a tag such as plain_dr/ft_of_wavefunction (entropy, tables).
    #[arg(long)]
    pub convention: Option<String>,
    /// How B maps onto the cyclotron frequency for entropies: half (model) or full.
    #[arg(long, value_parser = parse_field_reading)]
    pub field_reading: Option<FieldReading>,
    /// Table number for `tables`; all when absent.
    #[arg(long)]
    pub which: Option<u8>,
    /// Seed of the validation sweep.
    #[arg(long)]
    pub sweep_seed: Option<u64>,
    #[arg(long)]
    pub oracle_tol: Option<f64>,
    #[arg(long)]
    pub entropy_tol: Option<f64>,
}

impl Cli {
    fn flag_params(&self) -> Params {
        Params {
            alpha: self.alpha,
            b_field: self.b_field,
            phi: self.phi,
            mass: self.mass,
            charge: self.charge,
            charge_sign: self.charge_sign,
            potential: self.potential,
            a: self.a,
            b: self.b,
            c: self.c,
            omega: self.omega,
            de: self.de,
            r0: self.r0,
            n: self.n,
            ell: self.ell,
            beta: self.beta,
        }
    }

    /// Merge config file, figure preset and flags.
    pub fn to_run_config(&self) -> anyhow::Result<RunConfig> {
        let mut rc = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if self.figure.is_some() {
            rc.figure = self.figure.clone();
        }
        if let Some(id) = rc.figure.clone() {
            let f = figures::preset(&id)?;
            if let Some(cmd) = self.command.or(rc.command) {
                if cmd != f.command {
                    return Err(config_error(format!(
                        "figure {} is a {} preset, not {}",
                        f.id,
                        f.command.name(),
                        cmd.name()
                    )));
                }
            }
            rc.command = Some(f.command);
            rc.params.overlay(&f.params);
            rc.sweep = f.sweep;
            rc.series = Some(f.series);
            if f.s_max.is_some() {
                rc.grid.s_max = f.s_max;
            }
        }
        if self.command.is_some() {
            rc.command = self.command;
        }
        rc.params.overlay(&self.flag_params());
        if let Some(s) = &self.sweep {
            rc.sweep = Some(s.parse()?);
        }
        if let Some(s) = &self.series {
            rc.series = Some(s.parse()?);
        }
        let grid = &mut rc.grid;
        grid.points = self.points.or(grid.points);
        grid.s_max = self.s_max.or(grid.s_max);
        grid.r_min = self.r_min.or(grid.r_min);
        grid.r_max = self.r_max.or(grid.r_max);
        rc.output.path = self.out.clone().or(rc.output.path);
        rc.output.format = self.format.or(rc.output.format);
        if self.oracle {
            rc.oracle = Some(true);
        }
        rc.convention = self.convention.clone().or(rc.convention);
        rc.field_reading = self.field_reading.or(rc.field_reading);
        rc.which = self.which.or(rc.which);
        rc.sweep_seed = self.sweep_seed.or(rc.sweep_seed);
        if let Some(t) = self.oracle_tol {
            rc.tolerances.oracle = t;
        }
        if let Some(t) = self.entropy_tol {
            rc.tolerances.entropy = t;
        }
        for (name, t) in [("oracle", rc.tolerances.oracle), ("entropy", rc.tolerances.entropy)] {
            if !(t > 0.0 && t < 1.0) {
                return Err(config_error(format!("{name} tolerance must lie in (0, 1), got {t}")));
            }
        }
        if let Some(s) = &rc.sweep {
            s.validate()?;
        }
        Ok(rc)
    }
}

/// Rendered output of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub path: Option<PathBuf>,
    /// False when `validate` found a failing check.
    pub success: bool,
}

fn units_line(params: &Params) -> String {
    format!(
        "units: natural (hbar = c = 1), Boltzmann constant kappa = 1; M = {}, |e| = {}, k = 0",
        output::fmt_sig(params.mass.unwrap_or(1.0)),
        output::fmt_sig(params.charge.unwrap_or(1.0))
    )
}

pub fn run(rc: &RunConfig) -> anyhow::Result<Outcome> {
    let command = rc.command.ok_or_else(|| config_error("no command given"))?;
    let tol = rc.tolerances;
    let (text, success) = match command {
        Command::Validate => {
            let report = validate::run_battery(rc.sweep_seed.unwrap_or(42));
            let text = match rc.output.format {
                Some(Format::Json) => json_string(&report.to_json()),
                Some(Format::Csv) => return Err(config_error("validate writes a text or json report")),
                None => report.to_text(),
            };
            (text, report.passed())
        }
        Command::Tables => {
            let run = run_tables(rc.which, rc.convention.as_deref(), rc.field_reading, tol.entropy)
                .map_err(|e| match e.downcast::<disclination_qm::Error>() {
                    Ok(core) => commands::classify(core),
                    Err(other) => other,
                })?;
            let text = match rc.output.format.unwrap_or(Format::Csv) {
                Format::Csv => run.to_table().to_csv(),
                Format::Json => json_string(&run.to_json()),
            };
            (text, true)
        }
        _ => {
            let (convention, _) = if command == Command::Entropy {
                parse_convention(rc.convention.as_deref(), tol.entropy)?
            } else {
                (disclination_qm::infoentropy::DensityConvention::STANDARD, None)
            };
            let opts = EvalOptions {
                grid: rc.grid,
                tolerances: tol,
                convention,
                field_reading: rc.field_reading.unwrap_or_default(),
                oracle: rc.oracle.unwrap_or(false),
            };
            let mut table = sweep_table(command, &rc.params, rc.series.as_ref(), rc.sweep.as_ref(), &opts)?;
            table.comments.push(format!("disclination-qm {}", command.name()));
            table.comments.push(units_line(&rc.params));
            if command == Command::Entropy {
                table.comments.push(format!(
                    "convention: {convention}, field reading {}; bbm_margin = S_r + S_p - (1 + ln pi)",
                    opts.field_reading.tag()
                ));
            }
            if let Some(id) = &rc.figure {
                let f = figures::preset(id)?;
                table.comments.push(format!("figure {}: {}", f.id, f.description));
            }
            let single = rc.sweep.is_none() && rc.series.is_none() && table.rows.len() == 1;
            let format = rc.output.format.unwrap_or(if single { Format::Json } else { Format::Csv });
            let text = match format {
                Format::Csv => table.to_csv(),
                Format::Json => json_string(&table.to_json()),
            };
            (text, true)
        }
    };
    Ok(Outcome { text, path: rc.output.path.clone(), success })
}

/// Process exit status for an error: 2 for configuration problems, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.chain().any(|e| e.downcast_ref::<config::ConfigError>().is_some()) {
        2
    } else {
        1
    }
}

/// Thread cap from the environment; `None` keeps the hardware default.
pub fn thread_cap(value: Option<&str>) -> anyhow::Result<Option<usize>> {
    match value.map(str::trim) {
        None | Some("") => Ok(None),
        Some(v) => match v.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(config_error(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}
