// Continuants, continued-fraction expansions and the reversal identity.
//
//     cargo run --example continued_fractions

use continuants::continuant::{cf_expand, cf_value, continuant, continuant_det, reverse};
use continuants::{Fraction, PartialQuotients, Result};

pub fn run_example() -> Result<()> {
    let u: PartialQuotients = "(2,1,3,1,1,2)".parse()?;
    println!("<{u}> = {}", continuant(&u));
    println!("determinant form: {}", continuant_det(&u)?);
    println!("reversed {} has the same continuant: {}", reverse(&u), continuant(&reverse(&u)));

    // [0; 2,1,3,1,1,2] as a fraction, then back again.
    let f = cf_value(&u)?;
    println!("value = {}/{}", f.numerator(), f.denominator());
    assert_eq!(cf_expand(&f)?, u);

    let f = Fraction::from_u64(17, 81)?;
    let e = cf_expand(&f)?;
    println!("17/81 = [0; {e}], largest partial quotient {}", e.max_element().unwrap_or(0));
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
