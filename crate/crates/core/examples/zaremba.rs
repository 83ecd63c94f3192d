// Smallest numerators whose expansion over d stays below a bound.
//
//     cargo run --example zaremba

use continuants::census::zaremba_witness;

pub fn run_example() -> usize {
    let mut misses = 0;
    for d in [7, 64, 81, 100, 1000, 4096, 6561] {
        match zaremba_witness(d, 5) {
            Some(w) => println!("{}/{d} = [0; {}]", w.numerator, w.expansion),
            None => {
                misses += 1;
                println!("{d}: none below 5");
            }
        }
    }
    // With elements below 3 some denominators have no witness at all.
    let none: Vec<u64> = (2..60).filter(|&d| zaremba_witness(d, 3).is_none()).collect();
    println!("no witness with elements in {{1, 2}}: {none:?}");
    misses
}

fn main() {
    run_example();
}
