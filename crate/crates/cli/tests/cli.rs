use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_disclination-qm"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn flat_oscillator_ground_level() {
    let o = run(&["spectrum", "--alpha", "1", "--B", "0", "--phi", "0", "--potential", "harmonic", "--omega", "1", "--n", "0", "--ell", "0"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["energy"].as_f64(), Some(1.0));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["spectrum", "--alpha", "0"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--sweep", "kappa:0:1:2"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--a", "1", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["thermo", "--a", "1"]).status.code(), Some(2));
    let o = bin().args(["spectrum", "--a", "1"]).env("DISCLINATION_QM_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let cfg = scratch("unknown_field.json");
    std::fs::write(&cfg, r#"{"command": "spectrum", "params": {"a": 1, "colour": 2}}"#).unwrap();
    assert_eq!(run(&["--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let cfg = scratch("thermo.json");
    std::fs::write(
        &cfg,
        r#"{
  "command": "thermo",
  "params": {"alpha": 0.5, "B": 1, "phi": 0.5, "a": 1, "b": 1, "ell": 1, "beta": 0.5},
  "sweep": {"variable": "alpha", "min": 0.5, "max": 1.0, "steps": 6},
  "output": {"format": "csv"}
}"#,
    )
    .unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "--B", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let first = text.lines().next().unwrap();
    assert!(first.starts_with('#'));
    assert!(text.contains("kappa = 1"));
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "alpha,beta,T,omega0,Z,ln_Z,F,U,C,S");
    assert_eq!(rows.len(), 7);
    // B = 2 from the flag: omega0 = sqrt(2a + (B/2)^2 / alpha^2) at alpha = 1
    let last: Vec<&str> = rows[6].split(',').collect();
    assert_eq!(last[0], "1");
    assert!((last[3].parse::<f64>().unwrap() - 3f64.sqrt()).abs() < 1e-10);
}

#[test]
fn outputs_are_deterministic_across_thread_counts() {
    let args = ["spectrum", "--figure", "2c", "--format", "csv"];
    let a = bin().args(args).env("DISCLINATION_QM_THREADS", "1").output().unwrap();
    let b = bin().args(args).env("DISCLINATION_QM_THREADS", "3").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 3 * 91);
}

#[test]
fn every_figure_preset_runs() {
    for id in disclination_qm_cli::figures::FIGURE_IDS {
        let out = scratch(&format!("fig{id}.csv"));
        let o = run(&["--figure", id, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{id}: {}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.contains(&format!("# figure {id}:")), "{id}");
        let rows = text.lines().filter(|l| !l.starts_with('#')).count();
        assert!(rows > 10, "{id}: {rows}");
    }
    assert_eq!(run(&["thermo", "--figure", "2a"]).status.code(), Some(2));
}

#[test]
fn numbers_carry_twelve_significant_digits() {
    let o = run(&["spectrum", "--alpha", "0.75", "--B", "1", "--phi", "0.75", "--a", "1", "--b", "1", "--ell", "1", "--format", "csv"]);
    let text = stdout(&o);
    let row = text.lines().last().unwrap();
    let energy = row.split(',').nth(2).unwrap();
    assert_eq!(energy, "4.05736617553");
}

#[test]
fn entropy_with_explicit_convention() {
    let o = run(&[
        "entropy",
        "--potential",
        "harmonic",
        "--omega",
        "1",
        "--alpha",
        "0.75",
        "--B",
        "1",
        "--phi",
        "0.75",
        "--convention",
        "plain_dr/ft_of_density_modulus_half_line",
        "--field-reading",
        "full",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["S_r"].as_f64().unwrap() - 0.39417).abs() < 1e-5);
    assert!((v["S_p"].as_f64().unwrap() - 2.18524).abs() < 1e-5);
    assert_eq!(run(&["entropy", "--a", "1", "--convention", "nope"]).status.code(), Some(2));
}

#[test]
fn first_table_carries_printed_values() {
    let out = scratch("table1.csv");
    let o = run(&["tables", "--which", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().next().unwrap().starts_with("# "));
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[col("n")], "0");
    assert_eq!(first[col("alpha")], "0.75");
    assert_eq!(first[col("omega")], "1");
    assert_eq!(first[col("B")], "1");
    assert_eq!(first[col("phi")], "0.75");
    assert_eq!(first[col("printed_S_r")], "0.39417");
    assert!(first[col("residual_r")].parse::<f64>().unwrap().abs() < 1e-5);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 36);
    assert!(!text.contains("BROKEN"));
}
