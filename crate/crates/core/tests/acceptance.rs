//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;

use caputo::validation::run_all;
use caputo::PrecisionConfig;

fn main() -> ExitCode {
    let reports = run_all(&PrecisionConfig::default());
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!(
        "acceptance: {} of {} criteria passed",
        reports.len() - failed,
        reports.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
