// Build many sequences with continuant 2^m from a handful of seeds by
// repeated doubling, and show how each one was made.
//
//     cargo run --release --example doubling_family

use continuants::bounds::GTable;
use continuants::construction::{generate_family, hensley_double, Step};
use continuants::{PartialQuotients, Result};

pub fn run_example() -> Result<()> {
    let u: PartialQuotients = "(2,1,2)".parse()?;
    let (w, w2) = hensley_double(&u, 2)?;
    println!("doubling {u}: {w} -> {}, {w2} -> {}", w.continuant(), w2.continuant());

    let table = GTable::new(2, 40)?;
    for m in [12, 20, 30, 40] {
        let set = generate_family(2, 2, m)?;
        println!("m = {m:>2}: {:>6} sequences, 4 g_m = {}", set.len(), table.get(m) * 4u32);
    }

    let set = generate_family(2, 2, 14)?;
    let (u, steps) = set.members.iter().next().expect("nonempty");
    println!("{u}");
    for s in steps {
        match s {
            Step::Seed { m } => println!("  seed for 2^{m}"),
            Step::Doubling { r, form } => println!("  doubled with r = {r} ({form:?})"),
            Step::Endpoint { variant } => println!("  endpoint variant {variant:?}"),
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
