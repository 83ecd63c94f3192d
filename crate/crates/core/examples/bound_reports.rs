// Explicit lower and upper bounds, each checked against an exact oracle,
// written as JSON lines and CSV.
//
//     cargo run --release --example bound_reports

use continuants::bounds::{
    base_three_bound, dyadic_chain_bound, growth_bound, method_ceiling_s2, method_ceiling_s4,
    method_ceiling_s4_tabulated, refined_six_bound, BoundReport, Oracle,
};
use continuants::census::CensusOptions;
use continuants::{report, Result};

pub fn run_example() -> Result<Vec<BoundReport>> {
    let census = Oracle::Census(CensusOptions::with_budget(100_000_000));
    let reports = vec![
        growth_bound(2, 2, 14, census)?,
        growth_bound(2, 6, 400, Oracle::GTable)?,
        growth_bound(2, 7, 400, Oracle::GTable)?,
        refined_six_bound(2, 14369, Oracle::GTable)?,
        base_three_bound(9, census)?,
        dyadic_chain_bound(2, census)?,
        dyadic_chain_bound(6, Oracle::GTable)?,
        method_ceiling_s2(8)?,
        method_ceiling_s4(6)?,
        method_ceiling_s4_tabulated(6)?,
    ];
    for r in &reports {
        println!("{}", report::bound_line(r));
    }
    let mut buf = Vec::new();
    report::bounds_csv(&mut buf, &reports)?;
    report::bounds_json(&mut buf, &reports[..2])?;
    print!("{}", String::from_utf8_lossy(&buf));
    Ok(reports)
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
