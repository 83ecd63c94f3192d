// Exhaustive counts of bounded sequences with continuant a^m.
//
//     cargo run --release --example census_count

use continuants::census::{count_f, enumerate, CensusOptions, CensusQuery, Mode};
use continuants::Result;

pub fn run_example() -> Result<()> {
    let opts = CensusOptions::with_budget(100_000_000);

    let q = CensusQuery::power(2, 3, 3, Mode::Sequences)?;
    for u in enumerate(&q, &opts)? {
        println!("<{u}> = 8");
    }

    println!("{:>3} {:>10} {:>10} {:>12}", "m", "sequences", "fractions", "nodes");
    for m in 6..=14 {
        let seqs = count_f(2, m, 4, Mode::Sequences, &opts)?;
        let fracs = count_f(2, m, 4, Mode::Fractions, &opts)?;
        println!("{m:>3} {:>10} {:>10} {:>12}", seqs.count, fracs.count, seqs.nodes_visited);
    }

    // A tiny budget aborts with the partial count attached.
    match count_f(3, 10, 4, Mode::Sequences, &CensusOptions::with_budget(1_000)) {
        Err(e) => println!("budget of 1000 nodes: {e}"),
        Ok(r) => println!("finished anyway: {}", r.count),
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
