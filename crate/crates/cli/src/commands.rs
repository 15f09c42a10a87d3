//! Per-point evaluation of each command and table assembly over sweeps.

use anyhow::{anyhow, Context};
use disclination_qm::infoentropy::{
    bbm_check, calibrate_convention, default_anchors, entropy_report, reproduce_table, Calibration,
    DensityConvention, FieldReading, MomentumGrid, TableReproduction, BBM_BOUND, TABLE_ASSUMPTIONS,
};
use disclination_qm::magnetics::{magnetic_report_finite_t, magnetic_report_zero_t, persistent_current_exact};
use disclination_qm::oracle::numerov_eigenvalue;
use disclination_qm::spectrum::{effective_potential_with, energy, wavefunction, CrossTermReading};
use disclination_qm::thermo::{thermo_report, ThermoInput};
use disclination_qm::{derive_params, Error};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{config_error, Command, GridSpec, Params, Point, SeriesSpec, SweepSpec, Tolerances};
use crate::output::{fmt_sig, Cell, Table};

/// Core errors that stem from the inputs rather than from the numerics.
pub fn classify(err: Error) -> anyhow::Error {
    match err {
        Error::InvalidParameter { .. }
        | Error::DegenerateConfinement
        | Error::CaseDNeedsField
        | Error::KinkPoint => {
            config_error(err.to_string())
        }
        other => anyhow::Error::new(other),
    }
}

/// Everything a point evaluation needs besides the parameters.
#[derive(Debug, Clone)]
pub struct EvalOptions {
    pub grid: GridSpec,
    pub tolerances: Tolerances,
    pub convention: DensityConvention,
    pub field_reading: FieldReading,
    pub oracle: bool,
}

pub fn columns(command: Command, opts: &EvalOptions) -> Vec<&'static str> {
    match command {
        Command::Spectrum => {
            let mut c = vec!["n", "ell", "energy", "case", "j", "omega0"];
            if opts.oracle {
                c.extend(["energy_numerov", "rel_difference"]);
            }
            c
        }
        Command::Wavefunction => vec!["n", "ell", "s", "r", "psi", "psi_squared"],
        Command::EffectivePotential => vec!["ell", "r", "v_eff", "v"],
        Command::Thermo => vec!["beta", "T", "omega0", "Z", "ln_Z", "F", "U", "C", "S"],
        Command::Magnetics => {
            vec!["n", "ell", "beta", "current", "current_exact", "magnetization", "susceptibility"]
        }
        Command::Entropy => vec![
            "n",
            "ell",
            "S_r",
            "S_p",
            "total",
            "bbm_margin",
            "position_norm",
            "momentum_norm",
            "tail_mass",
            "p_max",
        ],
        Command::Tables | Command::Validate => Vec::new(),
    }
}

/// Rows produced by one parameter point.
pub fn evaluate(command: Command, point: &Point, opts: &EvalOptions) -> anyhow::Result<Vec<Vec<Cell>>> {
    let Point { config, potential, qn, beta } = *point;
    match command {
        Command::Spectrum => {
            let level = energy(&config, &potential, qn).map_err(classify)?;
            let d = derive_params(&config, &potential, qn).map_err(classify)?;
            let mut row: Vec<Cell> = vec![
                qn.n.into(),
                qn.ell.into(),
                level.energy.into(),
                format!("{:?}", level.case_tag).into(),
                d.j.into(),
                d.omega0.into(),
            ];
            if opts.oracle {
                let e = numerov_eigenvalue(&config, &potential, qn.ell, qn.n, None, opts.tolerances.oracle)
                    .map_err(classify)?;
                row.push(e.into());
                row.push(((e - level.energy).abs() / (1.0 + level.energy.abs())).into());
            }
            Ok(vec![row])
        }
        Command::Wavefunction => {
            let st = wavefunction(&config, &potential, qn).map_err(classify)?;
            let points = opts.grid.points.unwrap_or(201);
            let s_max = opts.grid.s_max.unwrap_or(10.0);
            if points < 2 || !(s_max > 0.0) {
                return Err(config_error("wavefunction grid needs points >= 2 and s_max > 0"));
            }
            Ok((0..points)
                .map(|k| {
                    let s = s_max * k as f64 / (points - 1) as f64;
                    let r = (s / st.omega()).sqrt();
                    let psi = st.eval(r);
                    vec![qn.n.into(), qn.ell.into(), s.into(), r.into(), psi.into(), (psi * psi).into()]
                })
                .collect())
        }
        Command::EffectivePotential => {
            let points = opts.grid.points.unwrap_or(200);
            let r_min = opts.grid.r_min.unwrap_or(0.05);
            let r_max = opts.grid.r_max.unwrap_or(5.0);
            if points < 2 || !(r_min > 0.0 && r_max > r_min) {
                return Err(config_error("radial grid needs points >= 2 and 0 < r_min < r_max"));
            }
            (0..points)
                .map(|k| {
                    let r = r_min + (r_max - r_min) * k as f64 / (points - 1) as f64;
                    let v = effective_potential_with(&config, &potential, r, qn.ell, CrossTermReading::Signed)
                        .map_err(classify)?;
                    Ok(vec![qn.ell.into(), r.into(), v.into(), potential.value(r, config.mass).into()])
                })
                .collect()
        }
        Command::Thermo => {
            let beta = beta.ok_or_else(|| config_error("thermo needs beta (or a beta / T sweep)"))?;
            let input = ThermoInput::new(beta, config, potential, qn.ell);
            let omega0 = input.params().map_err(classify)?.omega0;
            let rep = thermo_report(&input).map_err(classify)?;
            let z = rep.log_z.exp();
            Ok(vec![vec![
                beta.into(),
                (1.0 / beta).into(),
                omega0.into(),
                if z.is_finite() { z.into() } else { Cell::Empty },
                rep.log_z.into(),
                rep.free_energy.into(),
                rep.mean_energy.into(),
                rep.heat_capacity.into(),
                rep.entropy.into(),
            ]])
        }
        Command::Magnetics => {
            let row = match beta {
                Some(beta) => {
                    let input = ThermoInput::new(beta, config, potential, qn.ell);
                    let rep = magnetic_report_finite_t(&input).map_err(classify)?;
                    vec![
                        Cell::Empty,
                        qn.ell.into(),
                        beta.into(),
                        rep.persistent_current.into(),
                        Cell::Empty,
                        rep.magnetization.into(),
                        rep.susceptibility.into(),
                    ]
                }
                None => {
                    let rep = magnetic_report_zero_t(&config, &potential, qn).map_err(classify)?;
                    let exact = persistent_current_exact(&config, &potential, qn).map_err(classify)?;
                    vec![
                        qn.n.into(),
                        qn.ell.into(),
                        Cell::Empty,
                        rep.persistent_current.into(),
                        exact.into(),
                        rep.magnetization.into(),
                        rep.susceptibility.into(),
                    ]
                }
            };
            Ok(vec![row])
        }
        Command::Entropy => {
            let model = disclination_qm::SystemConfig {
                b_field: opts.field_reading.model_field(config.b_field),
                ..config
            };
            let st = wavefunction(&model, &potential, qn).map_err(classify)?;
            let rep = entropy_report(&st, opts.convention, MomentumGrid::default(), opts.tolerances.entropy)
                .map_err(classify)?;
            Ok(vec![vec![
                qn.n.into(),
                qn.ell.into(),
                rep.s_position.into(),
                rep.s_momentum.into(),
                rep.total.into(),
                bbm_check(&rep).margin.into(),
                rep.position_normalization.into(),
                rep.momentum_normalization.into(),
                rep.tail_mass.into(),
                rep.p_max.into(),
            ]])
        }
        Command::Tables | Command::Validate => Err(anyhow!("{} is not a point command", command.name())),
    }
}

/// Evaluate over the series and sweep; sweep variables come first in each row.
pub fn sweep_table(
    command: Command,
    params: &Params,
    series: Option<&SeriesSpec>,
    sweep: Option<&SweepSpec>,
    opts: &EvalOptions,
) -> anyhow::Result<Table> {
    if let (Some(a), Some(b)) = (series, sweep) {
        if a.variable == b.variable {
            return Err(config_error("series and sweep must use different variables"));
        }
    }
    // a variable the command already reports (n, ell, beta, T) is not repeated
    let own = columns(command, opts);
    let shown = |name: &str| !own.contains(&name);
    let mut lead: Vec<&str> = Vec::new();
    for name in [series.map(|s| s.variable.name()), sweep.map(|s| s.variable.name())].into_iter().flatten() {
        if shown(name) {
            lead.push(name);
        }
    }
    let series_values: Vec<Option<f64>> = match series {
        Some(s) => s.values.iter().map(|&v| Some(v)).collect(),
        None => vec![None],
    };
    let sweep_values: Vec<Option<f64>> = match sweep {
        Some(s) => {
            s.validate()?;
            s.values().into_iter().map(Some).collect()
        }
        None => vec![None],
    };
    let mut points = Vec::new();
    for sv in &series_values {
        for wv in &sweep_values {
            let mut p = params.clone();
            let mut prefix = Vec::new();
            for (spec, value) in [(series.map(|s| s.variable), sv), (sweep.map(|s| s.variable), wv)] {
                if let (Some(var), Some(v)) = (spec, value) {
                    p.set(var, *v)?;
                    if shown(var.name()) {
                        prefix.push(Cell::Num(*v));
                    }
                }
            }
            points.push((prefix, p.resolve()?));
        }
    }
    let evaluated: Vec<anyhow::Result<Vec<Vec<Cell>>>> =
        points.par_iter().map(|(_, point)| evaluate(command, point, opts)).collect();
    let mut table = Table::new(&[lead, own.clone()].concat());
    for ((prefix, point), rows) in points.iter().zip(evaluated) {
        let rows = rows.with_context(|| {
            format!(
                "{} failed at {}",
                command.name(),
                crate::validate::describe(&point.config, &point.potential, point.qn)
            )
        })?;
        for row in rows {
            table.push([prefix.clone(), row].concat());
        }
    }
    Ok(table)
}

/// `--convention`: `standard`, `calibrate` or an explicit tag.
pub fn parse_convention(text: Option<&str>, tol: f64) -> anyhow::Result<(DensityConvention, Option<Calibration>)> {
    match text.unwrap_or("standard") {
        "standard" => Ok((DensityConvention::STANDARD, None)),
        "calibrate" => {
            let cal = calibrate_convention(&default_anchors(), MomentumGrid::default(), tol)?;
            Ok((cal.convention, Some(cal)))
        }
        tag => DensityConvention::all()
            .into_iter()
            .find(|c| c.tag() == tag)
            .map(|c| (c, None))
            .ok_or_else(|| {
                let known: Vec<String> = DensityConvention::all().iter().map(|c| c.tag()).collect();
                config_error(format!(
                    "unknown convention {tag:?}; expected standard, calibrate or one of {}",
                    known.join(", ")
                ))
            }),
    }
}

pub const TABLE_COLUMNS: [&str; 25] = [
    "table",
    "n",
    "group",
    "row",
    "alpha",
    "omega",
    "r0",
    "De",
    "b",
    "B",
    "phi",
    "S_r",
    "S_p",
    "total",
    "printed_S_r",
    "printed_S_p",
    "printed_total",
    "residual_r",
    "residual_p",
    "bbm_margin",
    "std_S_r",
    "std_S_p",
    "std_total",
    "std_bbm_margin",
    "status",
];

/// Reference tables recomputed under a fitted convention, with the standard
/// convention alongside.
#[derive(Debug, Clone)]
pub struct TablesRun {
    pub calibration: Option<Calibration>,
    pub fitted: Vec<TableReproduction>,
    pub standard: Vec<TableReproduction>,
}

/// Fraction of printed cells (`S_r` and `S_p`) reproduced within `tol`.
pub fn cells_within(fitted: &[TableReproduction], tol: f64) -> (usize, usize) {
    let mut hits = 0;
    let mut total = 0;
    for t in fitted {
        for o in &t.rows {
            for r in [o.residual_r(), o.residual_p()] {
                total += 1;
                if r.is_some_and(|r| r.abs() <= tol) {
                    hits += 1;
                }
            }
        }
    }
    (hits, total)
}

pub const STRETCH_TOL: f64 = 5e-3;

pub fn run_tables(
    which: Option<u8>,
    convention: Option<&str>,
    field: Option<FieldReading>,
    tol: f64,
) -> anyhow::Result<TablesRun> {
    let (conv, calibration) = parse_convention(Some(convention.unwrap_or("calibrate")), tol)?;
    let field = field.or(calibration.as_ref().map(|c| c.field)).unwrap_or_default();
    let tables: Vec<u8> = match which {
        Some(t @ 1..=3) => vec![t],
        Some(t) => return Err(config_error(format!("no table {t}; expected 1, 2 or 3"))),
        None => vec![1, 2, 3],
    };
    let mut fitted = Vec::new();
    let mut standard = Vec::new();
    for &t in &tables {
        fitted.push(reproduce_table(t, conv, field, MomentumGrid::default(), tol)?);
        standard.push(reproduce_table(t, DensityConvention::STANDARD, FieldReading::Half, MomentumGrid::default(), tol)?);
    }
    Ok(TablesRun { calibration, fitted, standard })
}

impl TablesRun {
    pub fn to_table(&self) -> Table {
        let mut table = Table::new(&TABLE_COLUMNS);
        table.comments = self.header_lines();
        for (fit, std) in self.fitted.iter().zip(&self.standard) {
            for (o, s) in fit.rows.iter().zip(&std.rows) {
                let r = &o.row;
                let rep = o.report.as_ref().ok();
                let srep = s.report.as_ref().ok();
                let status = match (&o.report, &s.report) {
                    (Ok(_), Ok(_)) => "ok".to_string(),
                    (Err(e), _) | (_, Err(e)) => e.to_string(),
                };
                table.push(vec![
                    r.table.into(),
                    r.n.into(),
                    r.group.as_str().into(),
                    r.row.into(),
                    r.alpha.into(),
                    r.omega.into(),
                    r.r0.into(),
                    r.de.into(),
                    r.b.into(),
                    r.b_field.into(),
                    r.phi.into(),
                    rep.map(|x| x.s_position).into(),
                    rep.map(|x| x.s_momentum).into(),
                    rep.map(|x| x.total).into(),
                    r.s_r.into(),
                    r.s_p.into(),
                    r.total.into(),
                    o.residual_r().into(),
                    o.residual_p().into(),
                    rep.map(|x| x.total - BBM_BOUND).into(),
                    srep.map(|x| x.s_position).into(),
                    srep.map(|x| x.s_momentum).into(),
                    srep.map(|x| x.total).into(),
                    srep.map(|x| x.total - BBM_BOUND).into(),
                    status.into(),
                ]);
            }
        }
        table
    }

    fn header_lines(&self) -> Vec<String> {
        let fit = &self.fitted[0];
        let mut out = vec![
            "disclination-qm tables: Shannon entropies of the reference rows".to_string(),
            format!("units: natural (hbar = 1); assumptions: {TABLE_ASSUMPTIONS}, kappa = 1"),
            format!(
                "convention: {} with field reading {}; std_* columns use {} with field reading half",
                fit.convention,
                fit.field.tag(),
                DensityConvention::STANDARD
            ),
            "residual = computed - printed; bbm_margin = S_r + S_p - (1 + ln pi)".to_string(),
        ];
        if let Some(cal) = &self.calibration {
            out.push(format!(
                "calibration: {} anchor rows, max anchor residual {}",
                cal.cells.first().map_or(0, |c| c.residuals.len()),
                fmt_sig(cal.max_residual)
            ));
        }
        for (label, set) in [("trend", &self.fitted), ("std trend", &self.standard)] {
            for t in set {
                for tr in &t.trends {
                    out.push(format!(
                        "{label} table {}: {} {}",
                        tr.table,
                        tr.name,
                        if tr.holds { "holds" } else { "BROKEN" }
                    ));
                }
            }
        }
        let (hits, total) = cells_within(&self.fitted, STRETCH_TOL);
        out.push(format!("cells within {}: {hits}/{total}", fmt_sig(STRETCH_TOL)));
        out
    }

    pub fn to_json(&self) -> Value {
        let trends = |set: &[TableReproduction]| -> Vec<Value> {
            set.iter()
                .flat_map(|t| t.trends.iter().map(|tr| json!(tr)))
                .collect()
        };
        let (hits, total) = cells_within(&self.fitted, STRETCH_TOL);
        json!({
            "assumptions": TABLE_ASSUMPTIONS,
            "convention": self.fitted[0].convention.tag(),
            "field_reading": self.fitted[0].field.tag(),
            "calibration": self.calibration.as_ref().map(|c| json!({
                "convention": c.convention.tag(),
                "field_reading": c.field.tag(),
                "max_residual": crate::output::round_sig(c.max_residual),
            })),
            "trends": trends(&self.fitted),
            "standard_trends": trends(&self.standard),
            "cells_within_tolerance": {"tolerance": STRETCH_TOL, "hits": hits, "total": total},
            "rows": self.to_table().row_objects(),
        })
    }
}
