//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;

use hfkit::acceptance;

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for r in acceptance::run_all() {
        println!("{}", r.line());
        if !r.passed {
            failed.push(r.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
