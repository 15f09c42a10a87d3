//! The oracle and property battery behind `validate`.
//!
//! Every check draws its parameters from its own ChaCha8 stream of the sweep
//! seed, evaluates in parallel and reduces in index order, so the report is
//! a pure function of the seed.

use disclination_qm::infoentropy::{
    calibrate_convention, default_anchors, entropy_report, reproduce_table, DensityConvention,
    FieldReading, MomentumGrid, BBM_BOUND,
};
use disclination_qm::magnetics::{
    persistent_current, persistent_current_fd, persistent_current_finite_t, susceptibility_finite_t,
    susceptibility_finite_t_fd, susceptibility_zero_t, susceptibility_zero_t_fd, FD_STEP,
};
use disclination_qm::oracle::numerov_eigenvalue;
use disclination_qm::specialfn::{integrate_interval, ENTROPY_TOL};
use disclination_qm::spectrum::{energy, energy_alpha_derivative, landau_limit_of, wavefunction};
use disclination_qm::thermo::{
    entropy_thermo, free_energy, heat_capacity, mean_energy, partition_function, series_report,
    thermo_report, ThermoInput,
};
use disclination_qm::{PotentialSpec, QuantumNumbers, SystemConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::fmt_sig;

pub const ORACLE_TOL: f64 = 1e-5;
pub const ORTHONORMALITY_TOL: f64 = 1e-8;
pub const THERMO_TOL: f64 = 1e-8;
pub const CLASSICAL_LIMIT_TOL: f64 = 1e-4;
pub const IDENTITY_TOL: f64 = 1e-12;
pub const CURRENT_TOL: f64 = 1e-6;
pub const TEMPERATURE_TOL: f64 = 1e-10;
pub const SUSCEPTIBILITY_TOL: f64 = 1e-5;
pub const BBM_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub comparisons: usize,
    pub failures: usize,
    pub detail: String,
}

impl CheckResult {
    fn from_counts(name: &'static str, comparisons: usize, failures: usize, detail: String) -> Self {
        CheckResult { name, passed: failures == 0 && comparisons > 0, comparisons, failures, detail }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# disclination-qm validation report\n# sweep seed: {}\n", self.seed);
        for c in &self.checks {
            out.push_str(&format!(
                "{} {} comparisons={} failures={} {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.comparisons,
                c.failures,
                c.detail
            ));
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let oracle = self.check("oracle_spectrum").map_or(0, |c| c.comparisons - c.failures);
        out.push_str(&format!(
            "summary: {passed}/{} checks passed, {oracle} oracle comparisons passed\n",
            self.checks.len()
        ));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "passed": self.passed(),
            "checks": self.checks,
        })
    }
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// A potential of variant `kind % 5` with parameters in moderate ranges.
pub fn random_potential(rng: &mut ChaCha8Rng, kind: usize) -> PotentialSpec {
    match kind % 5 {
        0 => PotentialSpec::Anharmonic {
            a: rng.gen_range(0.2..2.0),
            b: rng.gen_range(0.0..2.0),
            c: rng.gen_range(-1.0..1.0),
        },
        1 => PotentialSpec::Harmonic { omega: rng.gen_range(0.5..2.0) },
        2 => PotentialSpec::Pseudoharmonic {
            dissociation: rng.gen_range(0.5..2.0),
            r0: rng.gen_range(0.8..2.5),
        },
        3 => PotentialSpec::ShiftedPseudoharmonic {
            dissociation: rng.gen_range(0.5..2.0),
            r0: rng.gen_range(0.8..2.5),
        },
        _ => PotentialSpec::InverseSquare { b: rng.gen_range(0.05..2.0) },
    }
}

pub fn describe(cfg: &SystemConfig, pot: &PotentialSpec, qn: QuantumNumbers) -> String {
    let p = match *pot {
        PotentialSpec::Anharmonic { a, b, c } => {
            format!("anharmonic(a={},b={},c={})", fmt_sig(a), fmt_sig(b), fmt_sig(c))
        }
        PotentialSpec::Harmonic { omega } => format!("harmonic(omega={})", fmt_sig(omega)),
        PotentialSpec::Pseudoharmonic { dissociation, r0 } => {
            format!("pseudoharmonic(De={},r0={})", fmt_sig(dissociation), fmt_sig(r0))
        }
        PotentialSpec::ShiftedPseudoharmonic { dissociation, r0 } => {
            format!("shifted-pseudoharmonic(De={},r0={})", fmt_sig(dissociation), fmt_sig(r0))
        }
        PotentialSpec::InverseSquare { b } => format!("inverse-square(b={})", fmt_sig(b)),
    };
    format!(
        "{p}@alpha={},B={},phi={},n={},ell={}",
        fmt_sig(cfg.alpha),
        fmt_sig(cfg.b_field),
        fmt_sig(cfg.phi),
        qn.n,
        qn.ell
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Case {
    pub config: SystemConfig,
    pub potential: PotentialSpec,
    pub qn: QuantumNumbers,
}

/// `count` cases cycling through the five variants, with
/// `alpha in [0.3, 1]`, `B in [0, 3]`, `Phi in [-1, 1]`, `n <= 2`, `|ell| <= 2`.
/// The inverse-square variant needs a field and draws `B in [0.3, 3]`.
pub fn oracle_cases(seed: u64, count: usize) -> Vec<Case> {
    let mut rng = stream(seed, 1);
    (0..count)
        .map(|k| {
            let kind = k % 5;
            let alpha = rng.gen_range(0.3..=1.0);
            let b_field = if kind == 4 { rng.gen_range(0.3..=3.0) } else { rng.gen_range(0.0..=3.0) };
            let phi = rng.gen_range(-1.0..=1.0);
            let qn = QuantumNumbers::new(rng.gen_range(0..=2), rng.gen_range(-2..=2));
            let config = SystemConfig::natural(alpha, b_field, phi).expect("ranges are valid");
            Case { config, potential: random_potential(&mut rng, kind), qn }
        })
        .collect()
}

pub fn oracle_spectrum(seed: u64, count: usize) -> CheckResult {
    let cases = oracle_cases(seed, count);
    let errors: Vec<Result<f64, String>> = cases
        .par_iter()
        .map(|c| {
            let closed = energy(&c.config, &c.potential, c.qn).map_err(|e| e.to_string())?.energy;
            let numeric = numerov_eigenvalue(&c.config, &c.potential, c.qn.ell, c.qn.n, None, 1e-8)
                .map_err(|e| e.to_string())?;
            Ok((numeric - closed).abs() / (1.0 + closed.abs()))
        })
        .collect();
    let mut worst = (0.0f64, String::new());
    let mut failures = 0;
    let mut variants = [0usize; 5];
    for (k, (c, e)) in cases.iter().zip(&errors).enumerate() {
        variants[k % 5] += 1;
        match e {
            Ok(rel) if *rel <= ORACLE_TOL => {
                if *rel > worst.0 {
                    worst = (*rel, describe(&c.config, &c.potential, c.qn));
                }
            }
            Ok(rel) => {
                failures += 1;
                worst = (rel.max(worst.0), describe(&c.config, &c.potential, c.qn));
            }
            Err(msg) => {
                failures += 1;
                worst = (f64::INFINITY, format!("{}: {msg}", describe(&c.config, &c.potential, c.qn)));
            }
        }
    }
    CheckResult::from_counts(
        "oracle_spectrum",
        cases.len(),
        failures,
        format!(
            "tol={} variants={:?} max_rel_error={} worst={}",
            fmt_sig(ORACLE_TOL),
            variants,
            fmt_sig(worst.0),
            worst.1
        ),
    )
}

/// One parameter set per variant; normalization, overlaps and node counts for `n <= 3`.
pub fn wavefunction_orthonormality(seed: u64) -> CheckResult {
    let mut rng = stream(seed, 2);
    let sets: Vec<(SystemConfig, PotentialSpec, i32)> = (0..5)
        .map(|kind| {
            let cfg = SystemConfig::natural(
                rng.gen_range(0.3..=1.0),
                rng.gen_range(0.3..=3.0),
                rng.gen_range(-1.0..=1.0),
            )
            .expect("ranges are valid");
            let pot = random_potential(&mut rng, kind);
            (cfg, pot, rng.gen_range(-2..=2))
        })
        .collect();
    let per_set: Vec<(usize, usize, f64)> = sets
        .par_iter()
        .map(|(cfg, pot, ell)| {
            let states: Vec<_> = (0..=3u32)
                .map(|n| wavefunction(cfg, pot, QuantumNumbers::new(n, *ell)))
                .collect();
            let mut count = 0;
            let mut fails = 0;
            let mut worst = 0.0f64;
            let Ok(states) = states.into_iter().collect::<Result<Vec<_>, _>>() else {
                return (1, 1, f64::INFINITY);
            };
            let r_max = states.iter().map(|s| s.outer_radius()).fold(0.0, f64::max);
            for a in &states {
                for b in &states {
                    if b.qn.n < a.qn.n {
                        continue;
                    }
                    count += 1;
                    let expected = if a.qn.n == b.qn.n { 1.0 } else { 0.0 };
                    let err = integrate_interval(|r| a.eval(r) * b.eval(r) * cfg.alpha * r, 0.0, r_max, 1e-12)
                        .map_or(f64::INFINITY, |q| (q.value - expected).abs());
                    worst = worst.max(err);
                    if !(err <= ORTHONORMALITY_TOL) {
                        fails += 1;
                    }
                }
                count += 1;
                if a.nodes().len() != a.qn.n as usize
                    || a.count_sign_changes(a.outer_radius(), 20_000) != a.qn.n as usize
                {
                    fails += 1;
                }
            }
            (count, fails, worst)
        })
        .collect();
    let count = per_set.iter().map(|p| p.0).sum();
    let failures = per_set.iter().map(|p| p.1).sum();
    let worst = per_set.iter().map(|p| p.2).fold(0.0, f64::max);
    CheckResult::from_counts(
        "wavefunction_orthonormality",
        count,
        failures,
        format!("sets=5 n<=3 tol={} max_abs_error={}", fmt_sig(ORTHONORMALITY_TOL), fmt_sig(worst)),
    )
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Closed form against the 2000-level Boltzmann sum for `beta omega0` in
/// `[0.05, 10]`, the classical heat capacity and `S = beta (U - F)`.
pub fn thermo_series(seed: u64) -> CheckResult {
    let mut rng = stream(seed, 3);
    let inputs: Vec<ThermoInput> = (0..5)
        .map(|kind| {
            let cfg = SystemConfig::natural(
                rng.gen_range(0.3..=1.0),
                rng.gen_range(0.3..=3.0),
                rng.gen_range(-1.0..=1.0),
            )
            .expect("ranges are valid");
            let pot = random_potential(&mut rng, kind);
            ThermoInput::new(1.0, cfg, pot, rng.gen_range(-2..=2))
        })
        .collect();
    let per_input: Vec<(usize, usize, f64, f64, f64)> = inputs
        .par_iter()
        .map(|base| {
            let Ok(omega0) = base.params().map(|d| d.omega0) else {
                return (1, 1, f64::INFINITY, f64::INFINITY, f64::INFINITY);
            };
            let (mut count, mut fails) = (0, 0);
            let (mut worst_series, mut worst_identity) = (0.0f64, 0.0f64);
            for k in 0..=20 {
                let x = 0.05 * 200f64.powf(k as f64 / 20.0);
                let t = base.with_beta(x / omega0);
                let (Ok(c), Ok(s), Ok(z)) = (thermo_report(&t), series_report(&t, 2000), partition_function(&t))
                else {
                    count += 1;
                    fails += 1;
                    continue;
                };
                let errs = [
                    rel(z, s.log_z.exp()),
                    rel(c.log_z, s.log_z),
                    rel(c.free_energy, s.free_energy),
                    rel(c.mean_energy, s.mean_energy),
                    rel(c.heat_capacity, s.heat_capacity),
                    rel(c.entropy, s.entropy),
                ];
                for e in errs {
                    count += 1;
                    worst_series = worst_series.max(e);
                    if !(e <= THERMO_TOL) {
                        fails += 1;
                    }
                }
                let s_val = entropy_thermo(&t).unwrap_or(f64::NAN);
                let via = t.beta
                    * (mean_energy(&t).unwrap_or(f64::NAN) - free_energy(&t).unwrap_or(f64::NAN));
                let e = (s_val - via).abs() / s_val.abs().max(1.0);
                count += 1;
                worst_identity = worst_identity.max(e);
                if !(e <= IDENTITY_TOL) {
                    fails += 1;
                }
            }
            let hot = base.with_beta(1e-3 / omega0);
            let c_err = heat_capacity(&hot).map_or(f64::INFINITY, |c| (c - 1.0).abs());
            count += 1;
            if !(c_err <= CLASSICAL_LIMIT_TOL) {
                fails += 1;
            }
            (count, fails, worst_series, worst_identity, c_err)
        })
        .collect();
    let fold = |i: usize| {
        per_input
            .iter()
            .map(|p| match i {
                2 => p.2,
                3 => p.3,
                _ => p.4,
            })
            .fold(0.0, f64::max)
    };
    CheckResult::from_counts(
        "thermo_series",
        per_input.iter().map(|p| p.0).sum(),
        per_input.iter().map(|p| p.1).sum(),
        format!(
            "levels=2000 beta_omega0=[0.05,10] max_rel_error={} max_identity_error={} max_classical_c_error={}",
            fmt_sig(fold(2)),
            fmt_sig(fold(3)),
            fmt_sig(fold(4))
        ),
    )
}

/// Flux derivative of the levels, temperature independence of the current,
/// field derivative of the magnetization and the `a = 0` susceptibility.
pub fn magnetic_derivatives(seed: u64, count: usize) -> CheckResult {
    let mut rng = stream(seed, 4);
    let cases: Vec<Case> = (0..count)
        .map(|k| {
            let ell = rng.gen_range(-2..=2);
            // flux strictly below ell, where the closed-form current applies
            let phi = ell as f64 - rng.gen_range(0.05..=0.95);
            let config = SystemConfig::natural(rng.gen_range(0.3..=1.0), rng.gen_range(0.3..=3.0), phi)
                .expect("ranges are valid");
            Case { config, potential: random_potential(&mut rng, k), qn: QuantumNumbers::new(rng.gen_range(0..=2), ell) }
        })
        .collect();
    let results: Vec<(usize, usize, [f64; 4])> = cases
        .par_iter()
        .map(|c| {
            let (mut n, mut fails) = (0, 0);
            let mut worst = [0.0f64; 4];
            let mut record = |slot: usize, err: f64, tol: f64| {
                n += 1;
                worst[slot] = worst[slot].max(err);
                if !(err <= tol) {
                    fails += 1;
                }
            };
            let printed = persistent_current(&c.config, &c.potential, c.qn);
            let fd = persistent_current_fd(&c.config, &c.potential, c.qn, FD_STEP);
            let current = match (&printed, fd) {
                (Ok(p), Ok(f)) => {
                    record(0, (p - f).abs(), CURRENT_TOL);
                    Some(*p)
                }
                _ => {
                    record(0, f64::INFINITY, CURRENT_TOL);
                    None
                }
            };
            for beta in [0.1, 1.0, 10.0] {
                let t = ThermoInput::new(beta, c.config, c.potential, c.qn.ell);
                let finite = persistent_current_finite_t(&t);
                let err = match (current, finite) {
                    (Some(z), Ok(f)) => (f - z).abs(),
                    _ => f64::INFINITY,
                };
                record(1, err, TEMPERATURE_TOL);
                let chi = susceptibility_finite_t(&t);
                let chi_fd = susceptibility_finite_t_fd(&t, FD_STEP);
                let err = match (chi, chi_fd) {
                    (Ok(a), Ok(b)) => (a - b).abs(),
                    _ => f64::INFINITY,
                };
                record(2, err, SUSCEPTIBILITY_TOL);
            }
            let chi = susceptibility_zero_t(&c.config, &c.potential, c.qn);
            let chi_fd = susceptibility_zero_t_fd(&c.config, &c.potential, c.qn, FD_STEP);
            let err = match (chi, chi_fd) {
                (Ok(a), Ok(b)) => (a - b).abs(),
                _ => f64::INFINITY,
            };
            record(2, err, SUSCEPTIBILITY_TOL);
            for pot in [PotentialSpec::Anharmonic { a: 0.0, b: 0.7, c: 0.2 }, PotentialSpec::InverseSquare { b: 0.7 }] {
                let chi = susceptibility_zero_t(&c.config, &pot, c.qn).map_or(f64::INFINITY, f64::abs);
                // exact zero, no tolerance
                record(3, chi, 0.0);
            }
            (n, fails, worst)
        })
        .collect();
    let worst = |i: usize| results.iter().map(|r| r.2[i]).fold(0.0, f64::max);
    CheckResult::from_counts(
        "magnetic_derivatives",
        results.iter().map(|r| r.0).sum(),
        results.iter().map(|r| r.1).sum(),
        format!(
            "cases={count} max_current_error={} max_temperature_drift={} max_susceptibility_error={} max_chi_without_a={}",
            fmt_sig(worst(0)),
            fmt_sig(worst(1)),
            fmt_sig(worst(2)),
            fmt_sig(worst(3))
        ),
    )
}

/// Random states for the entropic uncertainty check.
pub fn bound_cases(seed: u64, count: usize) -> Vec<Case> {
    let mut rng = stream(seed, 5);
    (0..count)
        .map(|k| {
            let config = SystemConfig::natural(
                rng.gen_range(0.25..=1.0),
                rng.gen_range(0.2..=3.0),
                rng.gen_range(-1.0..=1.0),
            )
            .expect("ranges are valid");
            let potential = random_potential(&mut rng, k);
            Case { config, potential, qn: QuantumNumbers::new(rng.gen_range(0..=2), rng.gen_range(-2..=2)) }
        })
        .collect()
}

/// Smallest `S_r + S_p - (1 + ln pi)` over `cases` under the standard convention.
pub fn uncertainty_bound(name: &'static str, cases: &[Case]) -> CheckResult {
    let margins: Vec<Result<f64, String>> = cases
        .par_iter()
        .map(|c| {
            let st = wavefunction(&c.config, &c.potential, c.qn).map_err(|e| e.to_string())?;
            let r = entropy_report(&st, DensityConvention::STANDARD, MomentumGrid::default(), ENTROPY_TOL)
                .map_err(|e| e.to_string())?;
            Ok(r.total - BBM_BOUND)
        })
        .collect();
    let mut failures = 0;
    let mut min_margin = f64::INFINITY;
    let mut first_error = None;
    for (c, m) in cases.iter().zip(&margins) {
        match m {
            Ok(m) => {
                min_margin = min_margin.min(*m);
                if !(*m >= -BBM_SLACK) {
                    failures += 1;
                }
            }
            Err(e) => {
                failures += 1;
                first_error.get_or_insert_with(|| format!(" first_error={}: {e}", describe(&c.config, &c.potential, c.qn)));
            }
        }
    }
    CheckResult::from_counts(
        name,
        cases.len(),
        failures,
        format!(
            "convention={} min_margin={}{}",
            DensityConvention::STANDARD,
            fmt_sig(min_margin),
            first_error.unwrap_or_default()
        ),
    )
}

/// Bound and monotonic trends over every printed table row under the
/// standard convention with the model's own field reading.
pub fn table_bound_and_trends() -> CheckResult {
    let (mut count, mut failures) = (0, 0);
    let mut min_margin = f64::INFINITY;
    let mut broken = Vec::new();
    for t in 1..=3u8 {
        let rep = match reproduce_table(t, DensityConvention::STANDARD, FieldReading::Half, MomentumGrid::default(), ENTROPY_TOL) {
            Ok(r) => r,
            Err(e) => {
                count += 1;
                failures += 1;
                broken.push(format!("table {t}: {e}"));
                continue;
            }
        };
        for o in &rep.rows {
            count += 1;
            match &o.report {
                Ok(r) => {
                    min_margin = min_margin.min(r.total - BBM_BOUND);
                    if !(r.total - BBM_BOUND >= -BBM_SLACK) {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
        for tr in &rep.trends {
            count += 1;
            if !tr.holds {
                failures += 1;
                broken.push(format!("table {t}: {}", tr.name));
            }
        }
    }
    let detail = if broken.is_empty() {
        format!("min_margin={} trends=all", fmt_sig(min_margin))
    } else {
        format!("min_margin={} broken=[{}]", fmt_sig(min_margin), broken.join("; "))
    };
    CheckResult::from_counts("table_bound_and_trends", count, failures, detail)
}

/// `alpha -> 1`: monotone approach and agreement with the analytic slope.
pub fn landau_limit(seed: u64, count: usize) -> CheckResult {
    let mut rng = stream(seed, 6);
    let cases: Vec<Case> = (0..count)
        .map(|k| {
            let config = SystemConfig::natural(1.0, rng.gen_range(0.1..=3.0), rng.gen_range(-1.0..=1.0))
                .expect("ranges are valid");
            let potential = random_potential(&mut rng, k);
            Case { config, potential, qn: QuantumNumbers::new(rng.gen_range(0..=2), rng.gen_range(-2..=2)) }
        })
        .collect();
    let outcomes: Vec<(bool, f64)> = cases
        .par_iter()
        .map(|c| landau_case(c).unwrap_or((false, f64::NAN)))
        .collect();
    let failures = outcomes.iter().filter(|o| !o.0).count();
    let (lo, hi) = outcomes
        .iter()
        .filter(|o| o.1.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), o| (lo.min(o.1), hi.max(o.1)));
    CheckResult::from_counts(
        "landau_limit",
        cases.len(),
        failures,
        format!("alphas=[0.9,0.99,0.999,1] slope_ratio_range=[{},{}]", fmt_sig(lo), fmt_sig(hi)),
    )
}

/// `(monotone and slope ratio within [1/2, 2], ratio)` for one case at `alpha = 1`.
pub fn landau_case(c: &Case) -> disclination_qm::Result<(bool, f64)> {
    let flat = landau_limit_of(&c.config, &c.potential, c.qn)?.energy;
    let e = |alpha: f64| -> disclination_qm::Result<f64> {
        Ok(energy(&SystemConfig { alpha, ..c.config }, &c.potential, c.qn)?.energy)
    };
    let gaps = [(e(0.9)? - flat).abs(), (e(0.99)? - flat).abs(), (e(0.999)? - flat).abs()];
    let monotone = gaps[0] >= gaps[1] && gaps[1] >= gaps[2];
    let slope = energy_alpha_derivative(&SystemConfig { alpha: 1.0, ..c.config }, &c.potential, c.qn)?;
    let predicted = -1e-3 * slope;
    let actual = e(0.999)? - flat;
    if predicted.abs() <= 1e-9 {
        return Ok((monotone && actual.abs() <= 1e-8, 1.0));
    }
    let ratio = actual / predicted;
    Ok((monotone && (0.5..=2.0).contains(&ratio), ratio))
}

/// The anchor calibration must single out one convention.
pub fn entropy_calibration() -> CheckResult {
    match calibrate_convention(&default_anchors(), MomentumGrid::default(), ENTROPY_TOL) {
        Ok(cal) => CheckResult::from_counts(
            "entropy_calibration",
            cal.cells.len(),
            0,
            format!(
                "convention={} field_reading={} max_anchor_residual={}",
                cal.convention,
                cal.field.tag(),
                fmt_sig(cal.max_residual)
            ),
        ),
        Err(e) => CheckResult::from_counts("entropy_calibration", 1, 1, e.to_string()),
    }
}

pub const ORACLE_CASES: usize = 25;
pub const MAGNETIC_CASES: usize = 20;
pub const RANDOM_BOUND_CASES: usize = 50;
pub const LANDAU_CASES: usize = 60;

pub fn run_battery(seed: u64) -> ValidationReport {
    let checks = vec![
        oracle_spectrum(seed, ORACLE_CASES),
        wavefunction_orthonormality(seed),
        thermo_series(seed),
        magnetic_derivatives(seed, MAGNETIC_CASES),
        uncertainty_bound("uncertainty_bound_random", &bound_cases(seed, RANDOM_BOUND_CASES)),
        table_bound_and_trends(),
        landau_limit(seed, LANDAU_CASES),
        entropy_calibration(),
    ];
    ValidationReport { seed, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases_are_reproducible() {
        assert_eq!(oracle_cases(42, 10), oracle_cases(42, 10));
        assert_ne!(oracle_cases(42, 10), oracle_cases(43, 10));
        let kinds: Vec<_> = oracle_cases(1, 5).iter().map(|c| c.potential.case_tag()).collect();
        assert_eq!(kinds.len(), 5);
        for (i, a) in kinds.iter().enumerate() {
            assert!(!kinds[i + 1..].contains(a));
        }
    }

    #[test]
    fn quick_checks_pass() {
        assert!(oracle_spectrum(3, 5).passed);
        assert!(landau_limit(3, 20).passed);
        assert!(magnetic_derivatives(3, 4).passed);
    }

    #[test]
    fn report_lines() {
        let r = ValidationReport {
            seed: 1,
            checks: vec![
                CheckResult::from_counts("a", 3, 0, "x=1".into()),
                CheckResult::from_counts("oracle_spectrum", 2, 1, "y".into()),
            ],
        };
        let text = r.to_text();
        assert!(text.contains("PASS a comparisons=3 failures=0 x=1\n"));
        assert!(text.contains("FAIL oracle_spectrum"));
        assert!(text.ends_with("summary: 1/2 checks passed, 1 oracle comparisons passed\n"));
        assert!(!r.passed());
    }
}
