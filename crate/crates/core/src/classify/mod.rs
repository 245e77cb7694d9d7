//! Which finite simple groups have a proper subgroup of the same exponent.
//!
//! `classify` answers for the alternating groups, the four classical
//! families where an equal prime set is possible, and the finitely many
//! named pairs; every other simple group has no maximal subgroup with the
//! same prime set, so its answer is NO.

pub mod catalog;
pub mod unitary;
pub mod verify;

use std::fmt;

use serde::Serialize;

use crate::classical::{ClassicalSpec, Family};
use crate::error::{Error, Result};
use crate::numth::{is_fermat_prime, is_prime, prime_power_decomposition, FactoredInteger};

pub use catalog::{lookup, Measured, NamedGroup, Provenance, TABLE1, TABLE3};
pub use verify::{
    formula_grid, measure_spec, parabolic_exclusions, verify_formulas, verify_table3, verify_witness, FormulaRow,
    TableRow, WitnessReport, WitnessStatus,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum SimpleGroupId {
    /// `A_n`, `n >= 5`.
    #[serde(rename = "alt")]
    Alt { n: u64 },
    /// `PSp(4, q)`.
    #[serde(rename = "psp4")]
    PSp4 { q: u64 },
    /// `PSp(2m, q)` with `m` and `q` even.
    #[serde(rename = "psp_even_even")]
    PSpEvenEven { m: u64, q: u64 },
    /// `POmega(2m + 1, q)` with `m >= 4` even and `q` odd.
    #[serde(rename = "pomega_odd")]
    POmegaOdd { m: u64, q: u64 },
    /// `POmega+(2m, q)` with `m >= 4` even.
    #[serde(rename = "pomega_plus")]
    POmegaPlus { m: u64, q: u64 },
    /// A group named in the explicit rows, e.g. `M12`.
    #[serde(rename = "named")]
    SporadicOrSmall { name: String },
    /// Any simple classical group, given by its projective spec.
    #[serde(rename = "classical")]
    Classical { spec: ClassicalSpec },
}

impl fmt::Display for SimpleGroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleGroupId::Alt { n } => write!(f, "A{n}"),
            SimpleGroupId::PSp4 { q } => write!(f, "PSp(4,{q})"),
            SimpleGroupId::PSpEvenEven { m, q } => write!(f, "PSp({},{q})", 2 * m),
            SimpleGroupId::POmegaOdd { m, q } => write!(f, "PΩ({},{q})", 2 * m + 1),
            SimpleGroupId::POmegaPlus { m, q } => write!(f, "PΩ⁺({},{q})", 2 * m),
            SimpleGroupId::SporadicOrSmall { name } => f.write_str(name),
            SimpleGroupId::Classical { spec } => write!(f, "{spec}"),
        }
    }
}

impl Serialize for ClassicalSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn prime_field(q: u64) -> Result<(u64, u32)> {
    prime_power_decomposition(q).ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not a prime power")))
}

impl SimpleGroupId {
    /// Checks the parameters. Groups that are not simple give `NotSimple`;
    /// parameters outside the family give `InvalidArgument`.
    pub fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::InvalidArgument(why));
        match *self {
            SimpleGroupId::Alt { n } if n < 5 => Err(Error::NotSimple(format!("A{n}"))),
            SimpleGroupId::Alt { .. } => Ok(()),
            SimpleGroupId::PSp4 { q } => prime_field(q).map(|_| ()),
            SimpleGroupId::PSpEvenEven { m, q } => {
                let (p, _) = prime_field(q)?;
                if p != 2 || m < 2 || m % 2 == 1 {
                    return bad(format!("PSp(2m,q) needs m >= 2 even and q even, got m = {m}, q = {q}"));
                }
                Ok(())
            }
            SimpleGroupId::POmegaOdd { m, q } => {
                let (p, _) = prime_field(q)?;
                if p == 2 || m < 2 || m % 2 == 1 {
                    return bad(format!("POmega(2m+1,q) needs m even and q odd, got m = {m}, q = {q}"));
                }
                Ok(())
            }
            SimpleGroupId::POmegaPlus { m, q } => {
                prime_field(q)?;
                if m < 4 || m % 2 == 1 {
                    return bad(format!("POmega+(2m,q) needs m >= 4 even, got m = {m}"));
                }
                Ok(())
            }
            SimpleGroupId::SporadicOrSmall { ref name } => match catalog::table1_names()
                .into_iter()
                .any(|g| g.eq_ignore_ascii_case(name.trim()))
            {
                true => Ok(()),
                false => bad(format!("{name} is not a named row of the table of equal prime sets")),
            },
            SimpleGroupId::Classical { spec } => {
                if !spec.family.is_projective() {
                    return bad(format!("{spec}: give the simple group as PSL, PSp or POmega"));
                }
                spec.simple_range().map_err(|_| Error::NotSimple(spec.to_string()))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Yes,
    No,
}

/// Why the answer is NO. Exactly one applies to each NO.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Reason {
    NIsOddPrimePower,
    NEquals10,
    NIsFermatPlusOne,
    QPowerOf3,
    QEquals2,
    DefiningCharGap,
    TableRowUnequal,
    NotInTable1,
}

impl Reason {
    pub const ALL: [Reason; 8] = [
        Reason::NIsOddPrimePower,
        Reason::NEquals10,
        Reason::NIsFermatPlusOne,
        Reason::QPowerOf3,
        Reason::QEquals2,
        Reason::DefiningCharGap,
        Reason::TableRowUnequal,
        Reason::NotInTable1,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Reason::NIsOddPrimePower => "N_IS_ODD_PRIME_POWER",
            Reason::NEquals10 => "N_EQUALS_10",
            Reason::NIsFermatPlusOne => "N_IS_FERMAT_PLUS_ONE",
            Reason::QPowerOf3 => "Q_POWER_OF_3",
            Reason::QEquals2 => "Q_EQUALS_2",
            Reason::DefiningCharGap => "DEFINING_CHAR_GAP",
            Reason::TableRowUnequal => "TABLE_ROW_UNEQUAL",
            Reason::NotInTable1 => "NOT_IN_TABLE1",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    /// The group that was decided, after following isomorphisms.
    pub group: SimpleGroupId,
    pub verdict: Verdict,
    /// A proper subgroup with the same exponent; present iff YES.
    pub witness: Option<String>,
    /// Present iff NO.
    pub reason: Option<Reason>,
    /// The statement the answer rests on.
    pub anchor: &'static str,
    /// Isomorphisms followed to reach `group`.
    pub route: Vec<String>,
}

impl ClassificationResult {
    fn yes(group: SimpleGroupId, witness: String, anchor: &'static str) -> Self {
        ClassificationResult { group, verdict: Verdict::Yes, witness: Some(witness), reason: None, anchor, route: vec![] }
    }

    fn no(group: SimpleGroupId, reason: Reason, anchor: &'static str) -> Self {
        ClassificationResult { group, verdict: Verdict::No, witness: None, reason: Some(reason), anchor, route: vec![] }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }
}

const ANCHOR_ALT: &str = "alternating groups: A_n except n = 10, n an odd prime power, or n a Fermat prime plus one";
const ANCHOR_PSP4: &str = "PSp(4,q) has PSp(2,q^2):2 of the same exponent iff q is not a power of 3 and q != 2";
const ANCHOR_PSP_EVEN: &str = "PSp(2m,q), m and q even: Omega-(2m,q) has the same exponent";
const ANCHOR_OMEGA_ODD: &str = "POmega(2m+1,q), m >= 4 even: Omega-(2m,q) has the same exponent unless 2m-1 is a power of p";
const ANCHOR_OMEGA_PLUS: &str = "POmega+(2m,q), m >= 4 even: Omega(2m-1,q) has the same exponent";
const ANCHOR_NAMED: &str = "explicit pairs: only (HS, M22), (M12, M11), (M24, M23) have equal exponents";
const ANCHOR_NOT_LISTED: &str = "no maximal subgroup has the same prime set, so no proper subgroup has the same exponent";

/// `n = p^r` with `p` odd.
fn is_odd_prime_power(n: u64) -> bool {
    matches!(prime_power_decomposition(n), Some((p, _)) if p != 2)
}

fn alternating(n: u64) -> ClassificationResult {
    let id = SimpleGroupId::Alt { n };
    if is_odd_prime_power(n) {
        return ClassificationResult::no(id, Reason::NIsOddPrimePower, ANCHOR_ALT);
    }
    if n == 10 {
        return ClassificationResult::no(id, Reason::NEquals10, ANCHOR_ALT);
    }
    if is_fermat_prime(n - 1) {
        return ClassificationResult::no(id, Reason::NIsFermatPlusOne, ANCHOR_ALT);
    }
    // a 2^r-cycle in A_n needs two more moved points exactly when n = 2^r + 2
    let witness = if (n - 2).is_power_of_two() {
        format!("(S{}×S2)∩A{n}", n - 2)
    } else {
        format!("A{}", n - 1)
    };
    ClassificationResult::yes(id, witness, ANCHOR_ALT)
}

fn psp4(q: u64) -> ClassificationResult {
    let id = SimpleGroupId::PSp4 { q };
    let (p, _) = prime_power_decomposition(q).expect("validated");
    if q == 2 {
        return ClassificationResult::no(id, Reason::QEquals2, ANCHOR_PSP4);
    }
    if p == 3 {
        return ClassificationResult::no(id, Reason::QPowerOf3, ANCHOR_PSP4);
    }
    ClassificationResult::yes(id, format!("PSp(2,{})⋊C2", q * q), ANCHOR_PSP4)
}

fn named(name: &str) -> Result<ClassificationResult> {
    let canonical = catalog::table1_names()
        .into_iter()
        .find(|g| g.eq_ignore_ascii_case(name.trim()))
        .ok_or_else(|| Error::InvalidArgument(format!("{name} is not a named row")))?;
    let routed = match canonical {
        "A6" => Some(SimpleGroupId::Alt { n: 6 }),
        "PSp4(7)" => Some(SimpleGroupId::PSp4 { q: 7 }),
        "O8+(2)" => Some(SimpleGroupId::POmegaPlus { m: 4, q: 2 }),
        _ => None,
    };
    if let Some(to) = routed {
        let mut r = classify(&to)?;
        r.route.insert(0, format!("{canonical} = {to}"));
        return Ok(r);
    }
    let id = SimpleGroupId::SporadicOrSmall { name: canonical.to_string() };
    let witness = match canonical {
        "M12" => "M11",
        "M24" => "M23",
        "HS" => "M22",
        _ => return Ok(ClassificationResult::no(id, Reason::TableRowUnequal, ANCHOR_NAMED)),
    };
    Ok(ClassificationResult::yes(id, witness.to_string(), ANCHOR_NAMED))
}

/// Where a simple classical group lands, following the small isomorphisms.
fn route_classical(spec: ClassicalSpec) -> Option<SimpleGroupId> {
    let (n, q) = (spec.n as u64, spec.q);
    let m = spec.m() as u64;
    let even_q = q % 2 == 0;
    let name = |s: &str| Some(SimpleGroupId::SporadicOrSmall { name: s.to_string() });
    match spec.family {
        Family::PSL => match (n, q) {
            (2, 4) | (2, 5) => Some(SimpleGroupId::Alt { n: 5 }),
            (2, 9) => Some(SimpleGroupId::Alt { n: 6 }),
            (4, 2) => Some(SimpleGroupId::Alt { n: 8 }),
            (6, 2) => name("L6(2)"),
            _ => None,
        },
        Family::PSp => match m {
            1 => route_classical(ClassicalSpec { family: Family::PSL, n: 2, q, sign: None }),
            2 => Some(SimpleGroupId::PSp4 { q }),
            3 if q == 2 => name("Sp6(2)"),
            _ if m.is_multiple_of(2) && even_q => Some(SimpleGroupId::PSpEvenEven { m, q }),
            _ => None,
        },
        Family::POmegaOdd => match m {
            1 => route_classical(ClassicalSpec { family: Family::PSL, n: 2, q, sign: None }),
            2 => Some(SimpleGroupId::PSp4 { q }),
            _ if m.is_multiple_of(2) => Some(SimpleGroupId::POmegaOdd { m, q }),
            _ => None,
        },
        Family::POmegaEven => match (m, spec.sign) {
            // POmega-(4,q) = PSL(2,q^2)
            (2, Some(-1)) => route_classical(ClassicalSpec { family: Family::PSL, n: 2, q: q * q, sign: None }),
            // POmega+(6,q) = PSL(4,q), POmega-(6,q) = PSU(4,q)
            (3, Some(1)) => route_classical(ClassicalSpec { family: Family::PSL, n: 4, q, sign: None }),
            (3, _) => match q {
                2 => name("U4(2)"),
                3 => name("U4(3)"),
                _ => None,
            },
            (_, Some(1)) if m.is_multiple_of(2) => Some(SimpleGroupId::POmegaPlus { m, q }),
            _ => None,
        },
        _ => None,
    }
}

/// Decides whether the simple group `id` has a proper subgroup of the same
/// exponent, naming one when it does.
pub fn classify(id: &SimpleGroupId) -> Result<ClassificationResult> {
    id.validate()?;
    Ok(match *id {
        SimpleGroupId::Alt { n } => alternating(n),
        SimpleGroupId::PSp4 { q } => psp4(q),
        SimpleGroupId::PSpEvenEven { m: 2, q } => {
            let mut r = psp4(q);
            r.route.push(format!("{id} = PSp(4,{q})"));
            r
        }
        SimpleGroupId::PSpEvenEven { m, q } => ClassificationResult::yes(id.clone(), format!("Ω⁻({},{q})", 2 * m), ANCHOR_PSP_EVEN),
        SimpleGroupId::POmegaOdd { m: 2, q } => {
            let mut r = psp4(q);
            r.route.push(format!("{id} = PSp(4,{q})"));
            r
        }
        SimpleGroupId::POmegaOdd { m, q } => {
            let (p, _) = prime_power_decomposition(q).expect("validated");
            if matches!(prime_power_decomposition(2 * m - 1), Some((r, _)) if r == p) {
                ClassificationResult::no(id.clone(), Reason::DefiningCharGap, ANCHOR_OMEGA_ODD)
            } else {
                ClassificationResult::yes(id.clone(), format!("Ω⁻({},{q})", 2 * m), ANCHOR_OMEGA_ODD)
            }
        }
        SimpleGroupId::POmegaPlus { m, q } => {
            // in characteristic 2, Omega(2m-1,q) is Sp(2m-2,q)
            let w = if q % 2 == 0 { format!("Sp({},{q})", 2 * m - 2) } else { format!("Ω({},{q})", 2 * m - 1) };
            ClassificationResult::yes(id.clone(), w, ANCHOR_OMEGA_PLUS)
        }
        SimpleGroupId::SporadicOrSmall { ref name } => named(name)?,
        SimpleGroupId::Classical { spec } => match route_classical(spec) {
            Some(to) => {
                let mut r = classify(&to)?;
                r.route.insert(0, format!("{spec} = {to}"));
                r
            }
            None => ClassificationResult::no(id.clone(), Reason::NotInTable1, ANCHOR_NOT_LISTED),
        },
    })
}

/// All `5 <= n <= bound` for which `A_n` has no proper subgroup of the same
/// exponent.
pub fn alternating_no_set(bound: u64) -> Result<Vec<u64>> {
    if bound < 5 {
        return Err(Error::InvalidArgument(format!("the bound must be at least 5, got {bound}")));
    }
    Ok((5..=bound).filter(|&n| !alternating(n).is_yes()).collect())
}

/// The `p`-part of `exp(2^k : H)` for odd `p`: a Sylow `p`-subgroup of an
/// extension by a normal 2-group maps injectively to the quotient, so it is
/// the `p`-part of `exp(H)`.
pub fn odd_extension_exponent(exp_h: &FactoredInteger, p: u64) -> Result<FactoredInteger> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    Ok(exp_h.p_part(p))
}
