// Seed searches are cached in a small text file so later runs skip them.
//
//     cargo run --example seed_cache

use continuants::construction::{generate_with, seed_sequences, Scheme, SeedCache};
use continuants::Result;

pub fn run_example() -> Result<()> {
    let path = std::env::temp_dir().join(format!("continuant-seeds-{}.txt", std::process::id()));
    let scheme = Scheme::power(3, 2)?;
    {
        let cache = SeedCache::open(&path)?;
        for (m, u) in seed_sequences(&scheme, &cache)? {
            println!("3^{m}: {u}");
        }
        println!("{} entries written", cache.len());
    }
    let cache = SeedCache::open(&path)?;
    let set = generate_with(&scheme, 16, &cache)?;
    println!("reopened with {} entries; {} sequences for 3^16 below 9", cache.len(), set.len());
    print!("{}", std::fs::read_to_string(&path)?);
    std::fs::remove_file(&path)?;
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
