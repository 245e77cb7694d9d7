//! Closed formulas for `exp_p` of the classical groups in all three
//! characteristic regimes, and for the alternating groups.
//!
//! Each `exp_p` is the exponent of a Sylow `p`-subgroup, so a full exponent
//! is the product of the `exp_p` over the primes dividing the order.

use crate::classical::{order_factored, order_valuation, ClassicalSpec, Family};
use crate::error::{Error, Result};
use crate::numth::{is_prime, mult_order, prime_local_data, primes_up_to, two_local_s, FactoredInteger};

/// What an `exp_p` is asked of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Classical(ClassicalSpec),
    Alternating(u64),
}

/// A single `exp_p` request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpQuery {
    pub target: Target,
    pub p: u64,
}

impl ExpQuery {
    pub fn evaluate(&self) -> Result<FactoredInteger> {
        match &self.target {
            Target::Classical(spec) => exp_p(spec, self.p),
            Target::Alternating(n) => Ok(exp_p_alternating(*n, self.p)),
        }
    }
}

/// `k` with `2^k <= n < 2^(k+1)`.
pub fn top_bit(n: u64) -> u32 {
    63 - n.leading_zeros()
}

/// `a` with `p^a` the least power of `p` exceeding `bound`.
fn least_power_above(p: u64, bound: i64) -> u32 {
    let (mut a, mut x) = (0, 1u64);
    while (x as i64) <= bound {
        x *= p;
        a += 1;
    }
    a
}

/// The largest `v` with `step * p^v <= n`, if any.
fn tower_height(p: u64, step: u64, n: u64) -> Option<u32> {
    if step > n {
        return None;
    }
    let mut v = 0;
    let mut t = step;
    while t * p <= n {
        t *= p;
        v += 1;
    }
    Some(v)
}

/// The Coxeter number used by the defining-characteristic formula.
pub fn coxeter_number(spec: &ClassicalSpec) -> u64 {
    let m = spec.m() as u64;
    match spec.family {
        Family::GL | Family::SL | Family::PSL => spec.n as u64,
        f if f.is_even_orthogonal() => 2 * m - 2,
        _ => 2 * m,
    }
}

fn require_divides(spec: &ClassicalSpec, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if order_valuation(spec, p)? == 0 {
        return Err(Error::PNotDividing { p });
    }
    Ok(())
}

/// `exp_p(GL(n, q)) = p^(r+v)` with `e p^v <= n < e p^(v+1)`.
fn gl_cross(p: u64, q: u64, n: u64) -> Result<FactoredInteger> {
    let data = prime_local_data(p, q)?;
    let v = tower_height(p, data.e, n).ok_or(Error::PNotDividing { p })?;
    Ok(FactoredInteger::prime_power(p, data.r + v))
}

/// `exp_p(Sp(2n, q))`: the `GL(2n, q)` value for even `e`, else
/// `p^(r+v)` with `2 e p^v <= 2n`.
fn sp_cross(p: u64, q: u64, two_n: u64) -> Result<FactoredInteger> {
    let data = prime_local_data(p, q)?;
    if data.e % 2 == 0 {
        return gl_cross(p, q, two_n);
    }
    let v = tower_height(p, 2 * data.e, two_n).ok_or(Error::PNotDividing { p })?;
    Ok(FactoredInteger::prime_power(p, data.r + v))
}

/// `exp_p` for odd `p` not dividing `q`. Projective and spinor-kernel
/// variants agree with the full group, since the quotients have 2-power
/// order. Even-dimensional orthogonal groups reduce to dimension `2m + 1`
/// when `p | q^m - eps` and to `2m - 1` otherwise.
pub fn exp_p_cross_char(spec: &ClassicalSpec, p: u64) -> Result<FactoredInteger> {
    spec.validate()?;
    if p == 2 {
        return Err(Error::InvalidArgument("the cross-characteristic formula is for odd p".into()));
    }
    if spec.q.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!("{p} is the characteristic of {spec}")));
    }
    require_divides(spec, p)?;
    let (q, n, m) = (spec.q, spec.n as u64, spec.m() as u64);
    match spec.family {
        Family::GL => gl_cross(p, q, n),
        Family::SL | Family::PSL => Err(Error::FamilyNotCovered(format!("exp_{p} of {spec}"))),
        Family::Sp | Family::PSp => sp_cross(p, q, n),
        f if f.is_odd_orthogonal() => sp_cross(p, q, 2 * m),
        _ => {
            let eps = spec.sign.unwrap_or(1);
            let e = mult_order(p, q)?;
            // p | q^m - eps: for eps = +1 iff e | m, for eps = -1 iff e is
            // even and m is an odd multiple of e/2
            let divides = if eps > 0 { m % e == 0 } else { e % 2 == 0 && m % (e / 2) == 0 && (m / (e / 2)) % 2 == 1 };
            sp_cross(p, q, if divides { 2 * m } else { 2 * m - 2 })
        }
    }
}

/// `exp_2` for odd `q`, with `2^(s+1) || q^2 - 1` and `2^r_t` the top power
/// of two in the degree.
///
/// Symplectic and odd-dimensional orthogonal groups give `2^(s+r_t-1)`,
/// halved for `PSp(2m, q)`, `Omega(2m+1, q)` when `m` is a power of two.
/// `Omega^eps(2m, q)` follows the same rule for `m > 2` only.
/// `GL(n, q)` gives `2^(s+r_t)` for `n >= 2` (semidihedral or `C_2^s wr C_2`
/// seeds in dimension 2) and the 2-part of `q - 1` for `n = 1`.
/// `GO^eps(2, q)` is dihedral and `SO^eps(2, q)` cyclic of order `2(q - eps)`
/// and `q - eps`, both with 2-exponent the 2-part of `q - eps`.
pub fn exp_2_odd_char(spec: &ClassicalSpec) -> Result<FactoredInteger> {
    spec.validate()?;
    let q = spec.q;
    if q.is_multiple_of(2) {
        return Err(Error::EvenCharacteristic);
    }
    let s = two_local_s(q)?;
    let (n, m) = (spec.n as u64, spec.m() as u64);
    let rt = top_bit(n);
    let m_is_power = m.is_power_of_two();
    let two = |k: u32| FactoredInteger::prime_power(2, k);
    let out = match spec.family {
        Family::GL if n == 1 => two((q - 1).trailing_zeros()),
        Family::GL => two(s + rt),
        Family::SL | Family::PSL => return Err(Error::FamilyNotCovered(format!("exp_2 of {spec}"))),
        Family::Sp | Family::SOodd => two(s + rt - 1),
        Family::PSp | Family::OmegaOdd | Family::POmegaOdd => two(s + rt - 1 - m_is_power as u32),
        Family::OmegaEven | Family::POmegaEven if m > 2 => two(s + rt - 1 - m_is_power as u32),
        Family::GOeven | Family::SOeven if m == 1 => {
            let eps = spec.sign.unwrap_or(1);
            let t = if eps > 0 { q - 1 } else { q + 1 };
            two(t.trailing_zeros())
        }
        _ => return Err(Error::OutOfRange(format!("no 2-part formula for {spec}"))),
    };
    Ok(out)
}

/// `exp_p` for `p` the characteristic: the least power of `p` above
/// `c - 1`, `c` the Coxeter number. Covers every family whose index over
/// the derived group is prime to `p`.
pub fn exp_p_defining_char(spec: &ClassicalSpec) -> Result<FactoredInteger> {
    spec.validate()?;
    let p = spec.characteristic();
    if p == 2 && matches!(spec.family, Family::GOeven | Family::SOeven) {
        return Err(Error::OutOfRange(format!("{spec} has index 2 over Omega in characteristic 2")));
    }
    require_divides(spec, p)?;
    let c = coxeter_number(spec) as i64;
    Ok(FactoredInteger::prime_power(p, least_power_above(p, c - 1)))
}

/// `exp_p` in whichever regime `p` falls.
pub fn exp_p(spec: &ClassicalSpec, p: u64) -> Result<FactoredInteger> {
    if p == spec.characteristic() {
        exp_p_defining_char(spec)
    } else if p == 2 {
        require_divides(spec, 2)?;
        exp_2_odd_char(spec)
    } else {
        exp_p_cross_char(spec, p)
    }
}

/// The exponent as the product of `exp_p` over the primes of the order.
pub fn exponent_formula(spec: &ClassicalSpec) -> Result<FactoredInteger> {
    let order = order_factored(spec)?;
    let mut out = FactoredInteger::one();
    for p in order.primes() {
        out = out.mul(&exp_p(spec, p)?);
    }
    Ok(out)
}

/// `exp_p(A_n)`: the largest `p^t <= n` for odd `p`; for `p = 2` the largest
/// `2^t` with `2^t + 2 <= n`, since a `2^t`-cycle needs a second even cycle.
pub fn exp_p_alternating(n: u64, p: u64) -> FactoredInteger {
    let room = if p == 2 { n.saturating_sub(2) } else { n };
    let mut t = 0;
    let mut x = p;
    while x <= room {
        t += 1;
        x *= p;
    }
    FactoredInteger::prime_power(p, t)
}

pub fn exponent_alternating(n: u64) -> FactoredInteger {
    primes_up_to(n).into_iter().fold(FactoredInteger::one(), |acc, p| acc.mul(&exp_p_alternating(n, p)))
}

/// `lcm(1, ..., n)`.
pub fn exponent_symmetric(n: u64) -> FactoredInteger {
    primes_up_to(n).into_iter().fold(FactoredInteger::one(), |acc, p| {
        let mut t = 0;
        let mut x = p;
        while x <= n {
            t += 1;
            x *= p;
        }
        acc.mul(&FactoredInteger::prime_power(p, t))
    })
}

/// Exponent of `(S_k x S_(n-k)) & A_n` for `n/2 <= k < n`.
///
/// Per prime: `p^a` occurs iff a `p^a`-cycle fits in one of the two blocks,
/// and for `p = 2` a disjoint transposition fits beside it to restore
/// parity.
pub fn exponent_alternating_intersection(n: u64, k: u64) -> Result<FactoredInteger> {
    if 2 * k < n || k >= n {
        return Err(Error::OutOfRange(format!("need n/2 <= k < n, got n = {n}, k = {k}")));
    }
    let l = n - k;
    let fits = |c: u64| -> bool {
        let odd = c % 2 == 1;
        let in_k = c <= k && (odd || k - c >= 2 || l >= 2);
        let in_l = c <= l && (odd || l - c >= 2 || k >= 2);
        in_k || in_l
    };
    let mut out = FactoredInteger::one();
    for p in primes_up_to(k) {
        let mut a = 0;
        let mut c = p;
        while fits(c) {
            a += 1;
            c *= p;
        }
        out = out.mul(&FactoredInteger::prime_power(p, a));
    }
    Ok(out)
}
