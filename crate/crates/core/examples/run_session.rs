//! Runs a session script and prints text and JSON output.

use lpdo::session::{run, RunOptions};

const SCRIPT: &str = "\
vars x y
let L = Dx^2 + (x + y^2)*Dx + x*y^2
let F = Dy + y
verify L*F == (Dx + x)*(Dx + y^2)*(Dy + y)
divide-left L, Dx + x
laplace Dx*Dy + x*Dx
";

fn main() {
    let script = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable session file"),
        None => SCRIPT.to_string(),
    };
    let report = run(&script, RunOptions::default());
    print!("{}", report.text());
    print!("{}", report.json_lines());
    if let Some(e) = report.error {
        eprintln!("error: {e}");
    }
}
