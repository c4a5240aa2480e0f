//! One line per acceptance criterion; exits nonzero if any fails.

use latjac::verify::{format_line, run_suite, Golden, Suite};
use std::process::ExitCode;

fn main() -> ExitCode {
    let reports = run_suite(Suite::All, &Golden::embedded());
    for r in &reports {
        println!("{}", format_line(r));
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if reports.len() != 11 || !failed.is_empty() {
        println!("acceptance: failed criteria {failed:?}");
        return ExitCode::FAILURE;
    }
    println!("acceptance: all {} criteria pass", reports.len());
    ExitCode::SUCCESS
}
