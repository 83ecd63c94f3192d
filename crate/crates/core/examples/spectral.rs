// Growth polynomials, their transfer matrices, and the certified gap
// between the plain and refined growth rates at s = 6.
//
//     cargo run --example spectral

use continuants::bounds::{case_matrix, growth_polynomial, largest_root, refinement_gap, spectral_pair};
use continuants::Result;

pub fn run_example() -> Result<()> {
    for s in [2, 3, 4, 6, 8, 10, 12] {
        let p = growth_polynomial(s)?;
        let r = largest_root(&p)?;
        println!("s = {s:>2}  {:<34} λ = {:.12}", p.poly.to_string(), r.lambda);
    }
    let m = case_matrix(6)?;
    println!("A = {}", m.matrix);
    println!("char poly of 2A = {}", m.matrix.scale(2).char_poly());
    let (power, root) = spectral_pair(14)?;
    println!("s = 14: power iteration {power:.12}, root {:.12}", root.lambda);

    let g = refinement_gap()?;
    println!("2 mu^(1/5) - lambda = {:.9} (> {}: {})", g.gap, g.threshold, g.exceeds_threshold);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
