use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lpdo::session::{run, RunOptions};

/// Runs an operator session from a file or standard input.
#[derive(Parser)]
#[command(version, about)]
struct Args {
    /// Emit one JSON record per line instead of text.
    #[arg(long)]
    json: bool,
    /// Session file; standard input when omitted.
    #[arg(long, value_name = "FILE")]
    session: Option<PathBuf>,
    /// Only report verification commands.
    #[arg(long)]
    check: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let script = match &args.session {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let script = match script {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read session: {e}");
            return ExitCode::from(2);
        }
    };
    let report = run(
        &script,
        RunOptions {
            check_only: args.check,
        },
    );
    if args.json {
        print!("{}", report.json_lines());
    } else {
        print!("{}", report.text());
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    if report.success() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
