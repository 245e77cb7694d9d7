//! Recompute the exponent table for the named pairs.
//!
//! Rows whose groups fit the element budget are enumerated; PSp4(7) and
//! O8+(2) fall back to the closed formulas, and the large sporadic and
//! exceptional groups carry their printed values.
//!
//!     cargo run --release --example table3 [budget]

use group_exponent::classify::verify_table3;
use group_exponent::grpengine::DEFAULT_BUDGET;

fn main() {
    let budget = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_BUDGET);
    println!("{:<9} {:>8} {:<11} {:<7} {:>8} {:<11} equal", "G", "exp(G)", "", "M", "exp(M)", "");
    let mut mismatches = 0;
    for r in verify_table3(budget) {
        let show = |m: &Option<group_exponent::classify::Measured>| match m {
            Some(m) => (m.value.to_u64().map_or(m.value.to_string(), |v| v.to_string()), m.provenance.to_string()),
            None => ("?".into(), "-".into()),
        };
        let (g, gp) = show(&r.exp_group);
        let (m, mp) = show(&r.exp_subgroup);
        println!("{:<9} {:>8} {:<11} {:<7} {:>8} {:<11} {}", r.group, g, gp, r.subgroup, m, mp, r.equal);
        if !r.matches_printed {
            mismatches += 1;
            println!("  differs from the printed {} / {}", r.printed_group, r.printed_subgroup);
        }
        if let Some(e) = r.error {
            println!("  {e}");
        }
    }
    println!("{mismatches} rows differ from the printed table");
}
