//! Runs every acceptance criterion at its stated bound; one PASS/FAIL line
//! each, nonzero exit if any fails.

use incmat::suite::{acceptance_checks, run_checks};

fn main() {
    let checks = acceptance_checks();
    let stdout = std::io::stdout();
    let outcomes = run_checks(&checks, &mut stdout.lock()).expect("writing to stdout");
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", outcomes.len());
    } else {
        println!("acceptance: failed criteria {}", failed.join(", "));
        std::process::exit(1);
    }
}
