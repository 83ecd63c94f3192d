// The growth recurrence next to the exhaustive census it bounds.
//
//     cargo run --release --example growth_table

use continuants::bounds::GTable;
use continuants::census::{count_f, CensusOptions, Mode};
use continuants::construction::Scheme;
use continuants::Result;

pub fn run_example() -> Result<()> {
    let table = GTable::new(2, 4096)?;
    let opts = CensusOptions::default();
    println!("{:>3} {:>6} {:>8}", "m", "4 g_m", "f(2^m,4)");
    for m in 6..=16 {
        let f = count_f(2, m, 4, Mode::Sequences, &opts)?.count;
        println!("{m:>3} {:>6} {f:>8}", table.get(m) * 4u32);
    }
    for k in 4..=12 {
        let m = (1u32 << k) - 1;
        println!("g_{m} = {}", table.get(m));
    }
    assert_eq!(table.index_form_mismatch(), None);

    let dyadic = GTable::for_scheme(&Scheme::dyadic(), 63)?;
    println!("elements below 3: g_7 = {}, g_63 = {}", dyadic.get(7), dyadic.get(63));
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
