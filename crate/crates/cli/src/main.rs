use std::process::ExitCode;

use clap::Parser;
use hyperq_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("HYPERQ_THREADS").ok().and_then(|v| v.parse().ok()) {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("hyperq: failed checks: {}", out.failures.join(", "));
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("hyperq: error: {e:#}");
            ExitCode::from(2)
        }
    }
}
