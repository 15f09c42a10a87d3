use std::process::ExitCode;

use clap::Parser;
use disclination_qm_cli::{exit_code, run, thread_cap, Cli, THREADS_ENV};

fn execute(cli: &Cli) -> anyhow::Result<bool> {
    if let Some(n) = thread_cap(std::env::var(THREADS_ENV).ok().as_deref())? {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let rc = cli.to_run_config()?;
    let outcome = run(&rc)?;
    match &outcome.path {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(path, &outcome.text)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{}", outcome.text),
    }
    Ok(outcome.success)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("validation failed");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
