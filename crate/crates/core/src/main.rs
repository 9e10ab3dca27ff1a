use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use logdmod::cli::{run, Command, JobConfig, Overrides, RunMode};
use logdmod::Error;

/// Exact D-module computations for logarithmic connections along plane curves.
#[derive(Parser, Debug)]
#[command(name = "logdmod", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Job configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Override a parameter, e.g. `--param lambda=0`.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    #[arg(long)]
    degree_bound: Option<u32>,
    #[arg(long, value_enum)]
    mode: Option<RunMode>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    kprime: Option<i64>,
    /// Print the operators P, C, D of the functional equation.
    #[arg(long)]
    certificate: bool,
    /// Emit JSON instead of the text report.
    #[arg(long)]
    json: bool,
}

fn execute(args: &Args) -> Result<String, Error> {
    let mut cfg = JobConfig::load(&args.config)?;
    let overrides = Overrides {
        params: args.params.clone(),
        degree_bound: args.degree_bound,
        mode: args.mode,
        k: args.k,
        kprime: args.kprime,
        certificate: args.certificate,
    };
    overrides.apply(&mut cfg)?;
    let report = run(args.command, &cfg)?;
    Ok(if args.json {
        serde_json::to_string_pretty(&report.json()).expect("report serializes") + "\n"
    } else {
        report.text()
    })
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
