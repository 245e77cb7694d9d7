//! Enumerate a group element by element and read off its exponent.
//!
//!     cargo run --release --example brute_force [spec] [cap]
//!
//! The first part builds the standard generators of a classical group and
//! compares the enumerated exponent with the formula. The second reads a
//! small permutation group from text.

use group_exponent::classical::{standard_generators, ClassicalSpec};
use group_exponent::expfml::exponent_formula;
use group_exponent::grpengine::{enumerate, exponent, read_generators, DEFAULT_BUDGET};

const M11: &str = "
# M11 on 11 points
perm 11
(1,2,3,4,5,6,7,8,9,10,11)
(3,7,11,8)(4,10,5,6)
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let spec: ClassicalSpec = args.next().unwrap_or("psp4:3".into()).parse()?;
    let cap = args.next().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_BUDGET);

    let g = standard_generators(&spec)?;
    println!("{spec}: {} generators", g.handle.generators.len());
    let e = enumerate(&g.handle, cap)?;
    println!("  order    {}", e.order());
    println!("  exponent {} (enumerated)", exponent(&e));
    println!("  exponent {} (formula)", exponent_formula(&spec)?);

    let m11 = enumerate(&read_generators(M11, false)?, cap)?;
    println!("M11: order {}, exponent {}", m11.order(), exponent(&m11));
    Ok(())
}
