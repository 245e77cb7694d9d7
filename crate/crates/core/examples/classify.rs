//! Which simple groups have a proper subgroup of the same exponent.
//!
//!     cargo run --example classify

use group_exponent::classify::{alternating_no_set, classify, SimpleGroupId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ids = [
        SimpleGroupId::Alt { n: 10 },
        SimpleGroupId::Alt { n: 12 },
        SimpleGroupId::Alt { n: 18 },
        SimpleGroupId::Alt { n: 34 },
        SimpleGroupId::PSp4 { q: 9 },
        SimpleGroupId::PSp4 { q: 4 },
        SimpleGroupId::PSpEvenEven { m: 4, q: 2 },
        SimpleGroupId::POmegaOdd { m: 4, q: 7 },
        SimpleGroupId::POmegaOdd { m: 4, q: 5 },
        SimpleGroupId::POmegaPlus { m: 4, q: 3 },
        SimpleGroupId::SporadicOrSmall { name: "M24".into() },
        SimpleGroupId::SporadicOrSmall { name: "Co3".into() },
        SimpleGroupId::Classical { spec: "psl2:9".parse()? },
    ];
    for id in &ids {
        let r = classify(id)?;
        let detail = match (&r.witness, &r.reason) {
            (Some(w), _) => format!("witness {w}"),
            (_, Some(reason)) => format!("reason {}", reason.code()),
            _ => String::new(),
        };
        println!("{:<24} {:?} {detail}", id.to_string(), r.verdict);
    }

    println!("\n{}", serde_json::to_string_pretty(&classify(&SimpleGroupId::PSp4 { q: 4 })?)?);

    let no = alternating_no_set(100)?;
    println!("\nA_n with no such subgroup, n <= 100: {no:?}");
    Ok(())
}
