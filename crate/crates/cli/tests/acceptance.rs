//! Runs the ten acceptance criteria on the default configuration and prints
//! one verdict line per criterion.

use std::process::ExitCode;

use mayerfield_cli::commands::all_checks;
use mayerfield_cli::config::RunConfig;
use mayerfield_cli::output::write_all;

fn main() -> ExitCode {
    let report = match all_checks::run(&RunConfig::default()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("acceptance suite failed to run: {e}");
            return ExitCode::FAILURE;
        }
    };
    for c in &report.criteria {
        println!("{}", c.line());
        if let Some(t) = c.runtime_line() {
            println!("  {t}");
        }
    }

    let dir = tempfile::tempdir().expect("temp dir");
    write_all(dir.path(), &report.artifacts).expect("write artifacts");
    let summary = std::fs::read_to_string(dir.path().join("acceptance.txt")).expect("summary written");
    let listed = summary.lines().filter(|l| l.contains(" criterion ")).count();

    let failed: Vec<usize> = report.criteria.iter().filter(|c| !c.passed()).map(|c| c.number).collect();
    if report.criteria.len() != 10 || listed != 10 || !failed.is_empty() {
        println!("acceptance: FAILED (failing criteria: {failed:?})");
        return ExitCode::FAILURE;
    }
    println!("acceptance: all {} criteria passed", report.criteria.len());
    ExitCode::SUCCESS
}
