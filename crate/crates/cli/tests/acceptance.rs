//! Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
//! Criterion 6 has a gating part (trends) and a reported part (cell agreement).

use std::process::Command as Process;
use std::time::Instant;

use disclination_qm::infoentropy::{
    reproduce_table, DensityConvention, FieldReading, MomentumGrid, BBM_BOUND,
};
use disclination_qm::specialfn::ENTROPY_TOL;
use disclination_qm_cli::commands::{cells_within, run_tables, STRETCH_TOL};
use disclination_qm_cli::output::fmt_sig;
use disclination_qm_cli::validate::{
    bound_cases, landau_case, magnetic_derivatives, oracle_spectrum, thermo_series,
    uncertainty_bound, wavefunction_orthonormality, Case, BBM_SLACK,
};
use disclination_qm::{PotentialSpec, QuantumNumbers, SystemConfig};

const SEED: u64 = 42;
const ORACLE_CASES: usize = 25;
const ORACLE_BUDGET_SECONDS: f64 = 60.0;
const RANDOM_STATES: usize = 50;
const STRETCH_FRACTION: f64 = 0.8;

struct Line {
    id: &'static str,
    passed: bool,
    gating: bool,
    detail: String,
}

fn main() {
    let mut lines = Vec::new();
    let mut emit = |line: Line| {
        let tag = match (line.gating, line.passed) {
            (true, true) => "PASS",
            (true, false) => "FAIL",
            (false, true) => "PASS (reported)",
            (false, false) => "MISS (reported)",
        };
        println!("{tag} criterion {}: {}", line.id, line.detail);
        lines.push((line.gating, line.passed));
    };

    // 1. closed-form spectrum against the Numerov oracle
    let start = Instant::now();
    let oracle = oracle_spectrum(SEED, ORACLE_CASES);
    let elapsed = start.elapsed().as_secs_f64();
    emit(Line {
        id: "1 oracle spectrum",
        passed: oracle.passed && oracle.comparisons >= 20 && elapsed <= ORACLE_BUDGET_SECONDS,
        gating: true,
        detail: format!("{} cases, {} ({elapsed:.1} s, budget {ORACLE_BUDGET_SECONDS} s)", oracle.comparisons, oracle.detail),
    });

    // 2. wavefunction normalization, orthogonality and nodes
    let wf = wavefunction_orthonormality(SEED);
    emit(Line { id: "2 wavefunctions", passed: wf.passed, gating: true, detail: wf.detail });

    // 3. thermodynamics against the truncated sum
    let th = thermo_series(SEED);
    emit(Line { id: "3 thermodynamics", passed: th.passed, gating: true, detail: th.detail });

    // 4. magnetic response
    let mg = magnetic_derivatives(SEED, 20);
    emit(Line { id: "4 magnetics", passed: mg.passed, gating: true, detail: mg.detail });

    // 6 first: the table run also supplies the standard-convention states of criterion 5
    let tables = run_tables(None, Some("calibrate"), None, ENTROPY_TOL).expect("tables run");

    // 5. entropic uncertainty bound under the standard convention
    let mut min_margin = f64::INFINITY;
    let mut table_states = 0;
    let mut violations = 0;
    let full_reading: Vec<_> = (1..=3u8)
        .map(|t| {
            reproduce_table(t, DensityConvention::STANDARD, FieldReading::Full, MomentumGrid::default(), ENTROPY_TOL)
                .expect("table")
        })
        .collect();
    for t in tables.standard.iter().chain(&full_reading) {
        for o in &t.rows {
            table_states += 1;
            match &o.report {
                Ok(r) => {
                    min_margin = min_margin.min(r.total - BBM_BOUND);
                    if r.total < BBM_BOUND - BBM_SLACK {
                        violations += 1;
                    }
                }
                Err(_) => violations += 1,
            }
        }
    }
    let random = uncertainty_bound("random", &bound_cases(SEED, RANDOM_STATES));
    emit(Line {
        id: "5 uncertainty bound",
        passed: violations == 0 && random.passed && random.comparisons == RANDOM_STATES,
        gating: true,
        detail: format!(
            "{table_states} table states (both field readings), min margin {}, {violations} violations; {RANDOM_STATES} random states: {}",
            fmt_sig(min_margin),
            random.detail
        ),
    });

    // 6. table reproduction
    let broken: Vec<String> = tables
        .fitted
        .iter()
        .flat_map(|t| &t.trends)
        .filter(|tr| !tr.holds)
        .map(|tr| format!("table {}: {} ({})", tr.table, tr.name, tr.detail))
        .collect();
    let trends = tables.fitted.iter().map(|t| t.trends.len()).sum::<usize>();
    let cal = tables.calibration.as_ref().expect("calibrated run");
    emit(Line {
        id: "6 table trends",
        passed: broken.is_empty() && trends > 0,
        gating: true,
        detail: format!(
            "convention {} with field reading {} (anchor residual {}); {}/{trends} trends hold{}",
            cal.convention,
            cal.field.tag(),
            fmt_sig(cal.max_residual),
            trends - broken.len(),
            if broken.is_empty() { String::new() } else { format!("; broken: {}", broken.join("; ")) }
        ),
    });
    let (hits, total) = cells_within(&tables.fitted, STRETCH_TOL);
    let mut per_table = Vec::new();
    for t in &tables.fitted {
        let (r, p) = t.rows.iter().fold((0.0f64, 0.0f64), |(r, p), o| {
            (
                r.max(o.residual_r().map_or(f64::INFINITY, f64::abs)),
                p.max(o.residual_p().map_or(f64::INFINITY, f64::abs)),
            )
        });
        let (h, n) = cells_within(std::slice::from_ref(t), STRETCH_TOL);
        per_table.push(format!("T{} {h}/{n} max|dS_r| {} max|dS_p| {}", t.table, fmt_sig(r), fmt_sig(p)));
    }
    emit(Line {
        id: "6 table cells (stretch)",
        passed: hits as f64 >= STRETCH_FRACTION * total as f64,
        gating: false,
        detail: format!(
            "{hits}/{total} cells within {} (target {}%); {}",
            fmt_sig(STRETCH_TOL),
            STRETCH_FRACTION * 100.0,
            per_table.join("; ")
        ),
    });
    let residuals = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("table_residuals.csv");
    std::fs::write(&residuals, tables.to_table().to_csv()).expect("write residuals");
    println!("     residual report: {}", residuals.display());

    // 7. flat-space limit
    let landau_cases: Vec<Case> = {
        let pots = [
            PotentialSpec::Anharmonic { a: 1.0, b: 1.0, c: 0.0 },
            PotentialSpec::Harmonic { omega: 1.0 },
            PotentialSpec::Pseudoharmonic { dissociation: 1.0, r0: 1.5 },
            PotentialSpec::ShiftedPseudoharmonic { dissociation: 0.5, r0: 1.0 },
            PotentialSpec::InverseSquare { b: 0.5 },
        ];
        let mut v = Vec::new();
        for pot in pots {
            for (b, phi) in [(1.0, 0.75), (2.0, -0.5), (0.5, 0.25)] {
                for n in 0..=2 {
                    for ell in [-1, 1] {
                        v.push(Case {
                            config: SystemConfig::natural(1.0, b, phi).unwrap(),
                            potential: pot,
                            qn: QuantumNumbers::new(n, ell),
                        });
                    }
                }
            }
        }
        v
    };
    let outcomes: Vec<_> = landau_cases.iter().map(landau_case).collect();
    let failures = outcomes.iter().filter(|o| !matches!(o, Ok((true, _)))).count();
    let (lo, hi) = outcomes
        .iter()
        .filter_map(|o| o.as_ref().ok())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), o| (lo.min(o.1), hi.max(o.1)));
    emit(Line {
        id: "7 flat-space limit",
        passed: failures == 0,
        gating: true,
        detail: format!(
            "{} cases, monotone and slope ratio in [0.5, 2]: ratios [{}, {}], {failures} failures",
            landau_cases.len(),
            fmt_sig(lo),
            fmt_sig(hi)
        ),
    });

    // 8. determinism of the validation report
    let bin = env!("CARGO_BIN_EXE_disclination-qm");
    let run = |threads: &str| {
        Process::new(bin)
            .args(["validate", "--sweep-seed", "42"])
            .env("DISCLINATION_QM_THREADS", threads)
            .output()
            .expect("run validate")
    };
    let first = run("1");
    let second = run("4");
    let identical = first.stdout == second.stdout && !first.stdout.is_empty();
    let summary = String::from_utf8_lossy(&first.stdout)
        .lines()
        .find(|l| l.starts_with("summary:"))
        .unwrap_or("no summary")
        .to_string();
    emit(Line {
        id: "8 determinism",
        passed: identical && first.status.success() && second.status.success(),
        gating: true,
        detail: format!(
            "validate --sweep-seed 42 with 1 and 4 threads: {} ({} bytes), exit {:?}/{:?}; {summary}",
            if identical { "byte-identical" } else { "DIFFERENT" },
            first.stdout.len(),
            first.status.code(),
            second.status.code()
        ),
    });

    let gating_failures = lines.iter().filter(|(g, p)| *g && !*p).count();
    println!(
        "acceptance: {} gating criteria passed, {gating_failures} failed",
        lines.iter().filter(|(g, p)| *g && *p).count()
    );
    if gating_failures > 0 {
        std::process::exit(1);
    }
}
