//! Confirm YES verdicts by measuring both the group and its witness.
//!
//!     cargo run --release --example witnesses

use group_exponent::classify::{verify_witness, SimpleGroupId};
use group_exponent::grpengine::DEFAULT_BUDGET;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ids = [
        SimpleGroupId::Alt { n: 8 },
        SimpleGroupId::Alt { n: 12 },
        SimpleGroupId::Alt { n: 34 },
        SimpleGroupId::PSp4 { q: 4 },
        SimpleGroupId::PSp4 { q: 5 },
        SimpleGroupId::PSpEvenEven { m: 4, q: 2 },
        SimpleGroupId::POmegaOdd { m: 4, q: 5 },
        SimpleGroupId::POmegaPlus { m: 4, q: 2 },
        SimpleGroupId::SporadicOrSmall { name: "M12".into() },
        SimpleGroupId::SporadicOrSmall { name: "HS".into() },
    ];
    for id in &ids {
        let r = verify_witness(id, DEFAULT_BUDGET)?;
        let show = |m: &Option<group_exponent::classify::Measured>| {
            m.as_ref().map_or("?".to_string(), |m| format!("{} ({})", m.value, m.provenance))
        };
        println!("{} vs {}: {:?}", r.group, r.witness, r.status);
        println!("  {}\n  {}", show(&r.exp_group), show(&r.exp_witness));
        if let Some(n) = r.note {
            println!("  {n}");
        }
    }
    Ok(())
}
