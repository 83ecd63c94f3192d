// Run the built-in verification suites with reduced limits.
//
//     cargo run --release --example verify_suites

use continuants::bounds::Verdict;
use continuants::verify::{run, Limits, Status, Suite};
use continuants::Result;

pub fn run_example() -> Result<usize> {
    let limits = Limits { m_max: 1024, s_max: 200, k_max: 10, census_m_max: 14, ..Limits::default() };
    let mut failed = 0;
    for suite in [Suite::Statement1, Suite::Theorem5, Suite::Theorem6, Suite::Remarks] {
        let out = run(suite, &limits)?;
        for c in &out.checks {
            println!("{:?} {suite} {}: {}", c.status, c.name, c.detail);
            failed += usize::from(c.status == Status::Fail);
        }
        failed += out.reports.iter().filter(|r| r.verdict == Verdict::Fails).count();
    }
    println!("{failed} failing items");
    Ok(failed)
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
