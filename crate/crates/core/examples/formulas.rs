//! Closed-form exponents of classical groups, prime by prime.
//!
//!     cargo run --example formulas [spec ...]
//!
//! Specs look like `psp4:7`, `sl3:4`, `omega8:2+`, `pomega7:3`.

use group_exponent::classical::{order_factored, ClassicalSpec};
use group_exponent::expfml::{exp_p, exponent_alternating, exponent_formula};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        args = ["psp4:7", "sp6:2", "omega8:2+", "pomega8:2+", "sl3:4", "pomega7:3", "psp6:3"]
            .map(String::from)
            .to_vec();
    }
    for a in &args {
        let spec: ClassicalSpec = a.parse()?;
        let order = order_factored(&spec)?;
        match exponent_formula(&spec) {
            Ok(exp) => println!("{spec}: exponent {} = {exp}", exp.to_u64().map_or("?".into(), |v| v.to_string())),
            Err(e) => println!("{spec}: {e}"),
        }
        for p in order.primes() {
            // a few small cases are left to enumeration
            let e = exp_p(&spec, p).map_or_else(|e| format!("not covered ({e})"), |v| v.to_string());
            println!("  p={p:<3} |G|_p = {:<10} exp_p = {e}", order.p_part(p).to_string());
        }
    }
    for n in [6, 7, 9, 12, 34] {
        println!("A{n}: {}", exponent_alternating(n));
    }
    Ok(())
}
