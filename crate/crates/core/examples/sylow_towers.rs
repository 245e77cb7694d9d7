//! Build the explicit Sylow models and check their predicted order and
//! exponent by enumeration.
//!
//!     cargo run --release --example sylow_towers

use group_exponent::grpengine::DEFAULT_BUDGET;
use group_exponent::sylowlab::{build, ModelKind, SylowModelSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut specs = Vec::new();
    // odd p: products of wreathed cyclic groups
    for (p, q, n) in [(3, 7, 6), (3, 4, 4), (5, 11, 5)] {
        specs.push(SylowModelSpec { kind: ModelKind::GLtower, p, q, level: n, projective: false });
    }
    specs.push(SylowModelSpec { kind: ModelKind::SpTower, p: 3, q: 5, level: 4, projective: false });
    // p = 2: the symplectic tower and the two orthogonal kernels
    for q in [3, 5, 7] {
        for r in 1..=3 {
            specs.push(SylowModelSpec { kind: ModelKind::Wr, p: 2, q, level: r, projective: false });
        }
        for r in 0..=2 {
            specs.push(SylowModelSpec { kind: ModelKind::WprimeR, p: 2, q, level: r, projective: false });
        }
        for projective in [false, true] {
            specs.push(SylowModelSpec { kind: ModelKind::WdoubleR, p: 2, q, level: 2, projective });
        }
    }

    println!("{:<9} {:>2} {:>2} {:>2} {:>5} {:>7} {:>5}  ok", "model", "p", "q", "r", "proj", "order", "exp");
    for s in specs {
        let m = build(&s)?;
        let (order, exp) = m.measure(DEFAULT_BUDGET)?;
        let ok = order == m.expected_order && exp == m.expected_exponent;
        println!(
            "{:<9} {:>2} {:>2} {:>2} {:>5} {:>7} {:>5}  {ok}",
            format!("{:?}", s.kind),
            s.p,
            s.q,
            s.level,
            s.projective,
            order.to_u64().unwrap_or(0),
            exp.to_u64().unwrap_or(0)
        );
    }
    Ok(())
}
