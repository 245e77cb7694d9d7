//! Named groups of the exceptional rows: how to build each one, its order,
//! and the printed exponents for the pairs with equal prime sets.

use std::sync::Arc;

use serde::Serialize;

use crate::classical::{standard_generators_with_budget, ClassicalSpec};
use crate::error::{Error, Result};
use crate::expfml::{exponent_alternating, exponent_formula, exponent_symmetric};
use crate::grpengine::{enumerate, exponent, GroupHandle, PermAlgebra};
use crate::numth::FactoredInteger;

use super::unitary::unitary_group;

/// Where a number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Enumerated,
    Formula,
    Recorded,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Enumerated => "enumerated",
            Provenance::Formula => "formula",
            Provenance::Recorded => "recorded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Measured {
    pub value: FactoredInteger,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug)]
pub enum Source {
    /// 1-based cycle notation.
    Perm { degree: usize, gens: &'static [&'static str] },
    Alternating(usize),
    Symmetric(usize),
    Classical(&'static str),
    Unitary { n: usize, q: u64 },
    /// No generators are carried; only the printed exponent.
    Recorded,
}

#[derive(Clone, Copy, Debug)]
pub struct NamedGroup {
    pub name: &'static str,
    pub order: u64,
    pub source: Source,
    /// The exponent as printed, for groups that are not rebuilt here.
    pub printed_exponent: Option<u64>,
}

const M11: &[&str] = &["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"];
const M12: &[&str] =
    &["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)", "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)"];
// the stabilizer of two points of M24 on the remaining 22
const M22: &[&str] = &[
    "(1,21,2,12,19,13,15,6,17,4,22)(3,7,10,14,11,18,20,8,9,5,16)",
    "(1,20,7,14,13)(2,18,19,3,10)(4,5,16,6,15)(8,9,17,11,21)",
];
const M23: &[&str] = &[
    "(1,22,18,7,5,19,17,23)(2,8)(3,14,9,21,13,10,6,12)(4,15,11,20)",
    "(1,20,11,22,5)(2,23,8,12,4,19,18,10,9,7,15,6,14,16,13)(3,17,21)",
];
// PSL(2, 23) on the projective line, with the extra map x -> x^3/9 on
// squares and 9x^3 on non-squares
const M24: &[&str] = &[
    "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
    "(2,3,5,9,17,10,19,14,4,7,13)(6,11,21,18,12,23,22,20,16,8,15)",
    "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)",
    "(2,19,5,3,7)(6,22,21,11,8)(9,17,14,10,13)(12,20,23,15,18)",
];

const fn named(name: &'static str, order: u64, source: Source) -> NamedGroup {
    NamedGroup { name, order, source, printed_exponent: None }
}

const fn recorded(name: &'static str, order: u64, exp: u64) -> NamedGroup {
    NamedGroup { name, order, source: Source::Recorded, printed_exponent: Some(exp) }
}

pub const CATALOG: &[NamedGroup] = &[
    named("A5", 60, Source::Alternating(5)),
    named("A6", 360, Source::Alternating(6)),
    named("A7", 2520, Source::Alternating(7)),
    named("A8", 20160, Source::Alternating(8)),
    named("A9", 181440, Source::Alternating(9)),
    named("S6", 720, Source::Symmetric(6)),
    named("S8", 40320, Source::Symmetric(8)),
    named("L2(5)", 60, Source::Classical("psl2:5")),
    named("L2(7)", 168, Source::Classical("psl2:7")),
    named("L2(11)", 660, Source::Classical("psl2:11")),
    named("L2(13)", 1092, Source::Classical("psl2:13")),
    named("L2(25)", 7800, Source::Classical("psl2:25")),
    named("L3(4)", 20160, Source::Classical("psl3:4")),
    named("L5(2)", 9999360, Source::Classical("psl5:2")),
    named("L6(2)", 20158709760, Source::Classical("psl6:2")),
    named("U3(3)", 6048, Source::Unitary { n: 3, q: 3 }),
    named("U3(5)", 126000, Source::Unitary { n: 3, q: 5 }),
    named("U4(2)", 25920, Source::Unitary { n: 4, q: 2 }),
    named("U4(3)", 3265920, Source::Unitary { n: 4, q: 3 }),
    recorded("U5(2)", 13685760, 3960),
    recorded("U6(2)", 9196830720, 27720),
    named("PSp4(7)", 138297600, Source::Classical("psp4:7")),
    named("Sp6(2)", 1451520, Source::Classical("sp6:2")),
    named("O8+(2)", 174182400, Source::Classical("omega8:2+")),
    recorded("G2(3)", 4245696, 6552),
    recorded("2F4(2)'", 17971200, 3120),
    named("M11", 7920, Source::Perm { degree: 11, gens: M11 }),
    named("M12", 95040, Source::Perm { degree: 12, gens: M12 }),
    named("M22", 443520, Source::Perm { degree: 22, gens: M22 }),
    NamedGroup {
        name: "M23",
        order: 10200960,
        source: Source::Perm { degree: 23, gens: M23 },
        printed_exponent: Some(212520),
    },
    NamedGroup {
        name: "M24",
        order: 244823040,
        source: Source::Perm { degree: 24, gens: M24 },
        printed_exponent: Some(212520),
    },
    recorded("HS", 44352000, 9240),
    recorded("McL", 898128000, 27720),
    recorded("Co2", 42305421312000, 1275120),
    recorded("Co3", 495766656000, 637560),
];

pub fn lookup(name: &str) -> Option<&'static NamedGroup> {
    let key = name.trim().to_ascii_lowercase();
    CATALOG.iter().find(|g| g.name.to_ascii_lowercase() == key)
}

fn perm_group(degree: usize, gens: &[&str]) -> Result<GroupHandle> {
    let alg = PermAlgebra::new(degree);
    let elems = gens.iter().map(|g| alg.parse(g)).collect::<Result<Vec<_>>>()?;
    Ok(GroupHandle::new(Arc::new(alg), elems))
}

/// `(1,2,3)` with the long cycle on the points that keep it even.
pub fn alternating_group(n: usize) -> Result<GroupHandle> {
    if n < 3 {
        return perm_group(n.max(1), &[]);
    }
    let long: Vec<String> = (if n % 2 == 1 { 1..=n } else { 2..=n }).map(|i| i.to_string()).collect();
    perm_group(n, &["(1,2,3)", &format!("({})", long.join(","))])
}

pub fn symmetric_group(n: usize) -> Result<GroupHandle> {
    if n < 2 {
        return perm_group(n.max(1), &[]);
    }
    let long: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    perm_group(n, &["(1,2)", &format!("({})", long.join(","))])
}

impl NamedGroup {
    /// Generators, if this group is built here. Unitary transvections are
    /// added until they reach `order`; the others are fixed, and `measure`
    /// compares the enumerated order with `order`.
    pub fn handle(&self) -> Result<Option<GroupHandle>> {
        Ok(Some(match self.source {
            Source::Perm { degree, gens } => perm_group(degree, gens)?,
            Source::Alternating(n) => alternating_group(n)?,
            Source::Symmetric(n) => symmetric_group(n)?,
            Source::Classical(s) => standard_generators_with_budget(&s.parse()?, 0)?.handle,
            Source::Unitary { n, q } => unitary_group(n, q, true, self.order as usize)?,
            Source::Recorded => return Ok(None),
        }))
    }

    /// The exponent from a closed formula, when one covers this group.
    pub fn formula_exponent(&self) -> Option<FactoredInteger> {
        match self.source {
            Source::Alternating(n) => Some(exponent_alternating(n as u64)),
            Source::Symmetric(n) => Some(exponent_symmetric(n as u64)),
            Source::Classical(s) => exponent_formula(&s.parse::<ClassicalSpec>().ok()?).ok(),
            _ => None,
        }
    }

    /// By enumeration within `budget`, else by formula, else as printed.
    pub fn measure(&self, budget: usize) -> Result<Measured> {
        if self.order as u128 <= budget as u128 {
            if let Some(h) = self.handle()? {
                let g = enumerate(&h, budget)?;
                if g.order() as u64 != self.order {
                    return Err(Error::InvalidSpec(format!(
                        "{}: generators give order {}, expected {}",
                        self.name,
                        g.order(),
                        self.order
                    )));
                }
                return Ok(Measured { value: exponent(&g), provenance: Provenance::Enumerated });
            }
        }
        if let Some(value) = self.formula_exponent() {
            return Ok(Measured { value, provenance: Provenance::Formula });
        }
        match self.printed_exponent {
            Some(e) => Ok(Measured { value: FactoredInteger::from_u64(e), provenance: Provenance::Recorded }),
            None => Err(Error::CapExceeded { cap: budget, found: self.order as usize }),
        }
    }
}

/// A pair `(G, M)` with `M` maximal and the same prime set, with the
/// exponents as printed.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PrintedRow {
    pub group: &'static str,
    pub exp_group: u64,
    pub subgroup: &'static str,
    pub exp_subgroup: u64,
}

const fn row(group: &'static str, exp_group: u64, subgroup: &'static str, exp_subgroup: u64) -> PrintedRow {
    PrintedRow { group, exp_group, subgroup, exp_subgroup }
}

/// The exponent table for the explicitly listed pairs.
pub const TABLE3: &[PrintedRow] = &[
    row("A6", 60, "L2(5)", 30),
    row("U3(3)", 168, "L2(7)", 84),
    row("U3(5)", 840, "A7", 420),
    row("U4(2)", 180, "S6", 60),
    row("U4(3)", 2520, "L3(4)", 420),
    row("U4(3)", 2520, "A7", 420),
    row("U5(2)", 3960, "L2(11)", 330),
    row("U6(2)", 27720, "M22", 9240),
    row("PSp4(7)", 4200, "A7", 420),
    row("Sp6(2)", 2520, "S8", 840),
    row("O8+(2)", 2520, "A9", 1260),
    row("G2(3)", 6552, "L2(13)", 546),
    row("2F4(2)'", 3120, "L2(25)", 780),
    row("M11", 1320, "L2(11)", 330),
    row("M12", 1320, "M11", 1320),
    row("M24", 212520, "M23", 212520),
    row("HS", 9240, "M22", 9240),
    row("McL", 27720, "M22", 9240),
    row("Co2", 1275120, "M23", 212520),
    row("Co3", 637560, "M23", 212520),
];

/// One row of the list of simple groups `G` with a maximal subgroup `M` of
/// the same prime set.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Table1Row {
    pub group: &'static str,
    pub subgroups: &'static [&'static str],
    pub remark: &'static str,
}

const fn t1(group: &'static str, subgroups: &'static [&'static str], remark: &'static str) -> Table1Row {
    Table1Row { group, subgroups, remark }
}

pub const TABLE1: &[Table1Row] = &[
    t1("PSp(2m,q)", &["M contains Omega-(2m,q)"], "m, q even"),
    t1("POmega(2m+1,q)", &["M contains Omega-(2m,q)"], "m even, q odd"),
    t1("POmega+(2m,q)", &["M contains Omega(2m-1,q)"], "m even"),
    t1("PSp(4,q)", &["M contains PSp(2,q^2)"], ""),
    t1("A_c", &["A_k <= M <= S_k x S_(c-k)"], ""),
    t1("A6", &["L2(5)"], ""),
    t1("L6(2)", &["P1", "P5"], ""),
    t1("U3(3)", &["L2(7)"], ""),
    t1("U3(5)", &["A7"], ""),
    t1("U4(2)", &["2^4:A5", "S6"], ""),
    t1("U4(3)", &["L3(4)", "A7"], ""),
    t1("U5(2)", &["L2(11)"], ""),
    t1("U6(2)", &["M22"], ""),
    t1("PSp4(7)", &["A7"], ""),
    t1("Sp6(2)", &["S8"], ""),
    t1("O8+(2)", &["P1", "P3", "P4", "A9"], ""),
    t1("G2(3)", &["L2(13)"], ""),
    t1("2F4(2)'", &["L2(25)"], ""),
    t1("M11", &["L2(11)"], ""),
    t1("M12", &["M11", "L2(11)"], ""),
    t1("M24", &["M23"], ""),
    t1("HS", &["M22"], ""),
    t1("McL", &["M22"], ""),
    t1("Co2", &["M23"], ""),
    t1("Co3", &["M23"], ""),
];

/// The groups named in the explicit rows, in table order.
pub fn table1_names() -> Vec<&'static str> {
    TABLE1.iter().skip(5).map(|r| r.group).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::order_factored;
    use crate::grpengine::DEFAULT_BUDGET;

    #[test]
    fn printed_rows_name_catalogued_groups() {
        for r in TABLE3 {
            assert!(lookup(r.group).is_some(), "{}", r.group);
            assert!(lookup(r.subgroup).is_some(), "{}", r.subgroup);
            // the subgroup exponent divides the group exponent
            assert_eq!(r.exp_group % r.exp_subgroup, 0, "{} {}", r.group, r.subgroup);
        }
        for name in table1_names() {
            assert!(lookup(name).is_some(), "{name}");
        }
    }

    #[test]
    fn classical_orders_agree() {
        for g in CATALOG {
            if let Source::Classical(s) = g.source {
                assert_eq!(order_factored(&s.parse().unwrap()).unwrap().to_u64(), Some(g.order), "{}", g.name);
            }
        }
    }

    #[test]
    fn recorded_exponents_divide_orders_and_share_primes() {
        for g in CATALOG {
            if let Some(e) = g.printed_exponent {
                let e = crate::numth::factorize(e);
                let o = crate::numth::factorize(g.order);
                assert!(e.divides(&o), "{}", g.name);
                assert!(o.primes().eq(e.primes()), "{}", g.name);
            }
        }
    }

    #[test]
    fn small_named_groups() {
        for (name, exp) in [("A6", 60), ("S6", 60), ("L2(7)", 84), ("M11", 1320), ("U3(3)", 168)] {
            let m = lookup(name).unwrap().measure(DEFAULT_BUDGET).unwrap();
            assert_eq!(m.provenance, Provenance::Enumerated);
            assert_eq!(m.value.to_u64(), Some(exp), "{name}");
        }
        let m = lookup("PSp4(7)").unwrap().measure(DEFAULT_BUDGET).unwrap();
        assert_eq!((m.value.to_u64(), m.provenance), (Some(4200), Provenance::Formula));
        let m = lookup("HS").unwrap().measure(DEFAULT_BUDGET).unwrap();
        assert_eq!((m.value.to_u64(), m.provenance), (Some(9240), Provenance::Recorded));
        assert_eq!(lookup("a7").unwrap().name, "A7");
    }
}
