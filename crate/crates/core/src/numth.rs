//! Exact integer number theory: factored integers, multiplicative orders,
//! valuations and 64-bit factorization.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A positive integer kept as a map from prime to multiplicity.
///
/// The empty map is `1`. Group orders are assembled term by term in this
/// form, so nothing here ever needs a big-integer type.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u32>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    /// `p^k`; `k = 0` gives one.
    pub fn prime_power(p: u64, k: u32) -> Self {
        let mut out = Self::one();
        if k > 0 {
            out.factors.insert(p, k);
        }
        out
    }

    pub fn from_u64(n: u64) -> Self {
        factorize(n)
    }

    /// Builds from `(prime, multiplicity)` pairs without checking primality.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u32)>>(pairs: I) -> Self {
        let mut out = Self::one();
        for (p, k) in pairs {
            if k > 0 {
                *out.factors.entry(p).or_insert(0) += k;
            }
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn multiplicity(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    /// The `p`-part `p^v` of the integer.
    pub fn p_part(&self, p: u64) -> Self {
        Self::prime_power(p, self.multiplicity(p))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&p, &k)| (p, k))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, k) in other.iter() {
            *out.factors.entry(p).or_insert(0) += k;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = self.clone();
        out.factors.retain(|_, k| {
            *k *= e;
            *k > 0
        });
        out
    }

    /// Exact division; `None` if `other` does not divide `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for (p, k) in other.iter() {
            let have = out.multiplicity(p);
            if have < k {
                return None;
            }
            if have == k {
                out.factors.remove(&p);
            } else {
                out.factors.insert(p, have - k);
            }
        }
        Some(out)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, k) in other.iter() {
            let e = out.factors.entry(p).or_insert(0);
            *e = (*e).max(k);
        }
        out
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Self::from_pairs(
            self.iter()
                .map(|(p, k)| (p, k.min(other.multiplicity(p))))
                .filter(|&(_, k)| k > 0),
        )
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.iter().all(|(p, k)| other.multiplicity(p) >= k)
    }

    /// Expanded value, if it fits in 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        let v = self.to_u128()?;
        u64::try_from(v).ok()
    }

    pub fn to_u128(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for (p, k) in self.iter() {
            for _ in 0..k {
                acc = acc.checked_mul(p as u128)?;
            }
        }
        Some(acc)
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, k) in self.iter() {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{k}")?;
            }
        }
        Ok(())
    }
}

/// Seed data for the cross-characteristic formulas: `q^e - 1 = p^r * x`
/// with `e` the multiplicative order of `q` modulo `p` and `p` coprime to `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeLocalData {
    pub p: u64,
    pub q: u64,
    pub e: u64,
    pub r: u32,
    pub x: u64,
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact below 2^64.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `Some((p, k))` when `n = p^k` with `p` prime and `k >= 1`.
pub fn prime_power_decomposition(n: u64) -> Option<(u64, u32)> {
    let f = factorize(n);
    let mut it = f.iter();
    match (it.next(), it.next()) {
        (Some((p, k)), None) => Some((p, k)),
        _ => None,
    }
}

pub fn is_prime_power(n: u64) -> bool {
    prime_power_decomposition(n).is_some()
}

/// Least `e >= 1` with `q^e = 1 (mod p)`.
pub fn mult_order(p: u64, q: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if q.is_multiple_of(p) {
        return Err(Error::NotCoprime { a: p, b: q });
    }
    // The order divides p - 1: strip prime factors while the power stays 1.
    let mut e = p - 1;
    for (l, _) in factorize(p - 1).iter() {
        while e.is_multiple_of(l) && pow_mod(q, e / l, p) == 1 {
            e /= l;
        }
    }
    Ok(e)
}

/// The exponent `v` with `p^v || n`.
pub fn padic_valuation(p: u64, n: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("valuation of zero".into()));
    }
    let mut n = n;
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    Ok(v)
}

/// Valuation of `q^e - 1` via powers modulo `p^k`, plus the cofactor when
/// `q^e` fits in 128 bits (`0` otherwise).
fn valuation_of_power_minus_one(p: u64, q: u64, e: u64) -> (u32, u64) {
    let mut v = 0u32;
    let mut modulus: u128 = p as u128;
    loop {
        if modulus > u64::MAX as u128 {
            break;
        }
        let m = modulus as u64;
        if pow_mod(q, e, m) != 1 % m {
            break;
        }
        v += 1;
        modulus *= p as u128;
    }
    let mut acc: u128 = 1;
    let mut fits = true;
    for _ in 0..e {
        match acc.checked_mul(q as u128) {
            Some(a) => acc = a,
            None => {
                fits = false;
                break;
            }
        }
    }
    let x = if fits {
        let mut rest = acc - 1;
        for _ in 0..v {
            rest /= p as u128;
        }
        u64::try_from(rest).unwrap_or(0)
    } else {
        0
    };
    (v, x)
}

/// `(e, r, x)` with `q^e - 1 = p^r x`. `x` is reported as `0` when the
/// cofactor does not fit in 64 bits; `r` is always exact.
pub fn prime_local_data(p: u64, q: u64) -> Result<PrimeLocalData> {
    if p == 2 {
        return Err(Error::InvalidArgument("prime_local_data needs an odd prime".into()));
    }
    let e = mult_order(p, q)?;
    let (r, x) = valuation_of_power_minus_one(p, q, e);
    Ok(PrimeLocalData { p, q, e, r, x })
}

/// The `s` with `2^(s+1) || q^2 - 1`, for odd `q`.
pub fn two_local_s(q: u64) -> Result<u32> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenInput(q));
    }
    // q^2 - 1 = (q - 1)(q + 1), both even.
    let v = (q - 1).trailing_zeros() + (q + 1).trailing_zeros();
    Ok(v - 1)
}

fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let m = 128u64;
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
        if r > 1 << 24 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split_large(n: u64, out: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let mut c = 1;
    let d = loop {
        if let Some(d) = pollard_brent(n, c) {
            break d;
        }
        c += 1;
    };
    split_large(d, out);
    split_large(n / d, out);
}

const TRIAL_BOUND: u64 = 1_000_000;

/// Prime factorization of a 64-bit integer: trial division below 10^6,
/// Pollard-Brent above.
pub fn factorize(n: u64) -> FactoredInteger {
    let mut out = BTreeMap::new();
    if n <= 1 {
        return FactoredInteger { factors: out };
    }
    let mut n = n;
    for p in [2u64, 3, 5] {
        while n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
    }
    // wheel mod 30
    const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p < TRIAL_BOUND && p * p <= n {
        while n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += STEPS[i];
        i = (i + 1) % 8;
    }
    if n > 1 {
        if p * p > n {
            *out.entry(n).or_insert(0) += 1;
        } else {
            split_large(n, &mut out);
        }
    }
    FactoredInteger { factors: out }
}

/// True iff `n` is prime and of the form `2^(2^k) + 1`.
pub fn is_fermat_prime(n: u64) -> bool {
    if n < 3 {
        return false;
    }
    let m = n - 1;
    if !m.is_power_of_two() {
        return false;
    }
    let exp = m.trailing_zeros();
    exp.is_power_of_two() && is_prime(n)
}

/// Primes up to `n` inclusive.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// `v_p(q^k - 1)` for any `k >= 1`, by lifting the exponent: for odd `p`
/// it is `v_p(q^e - 1) + v_p(k / e)` when `e = ord_p(q)` divides `k`; for
/// `p = 2` and odd `k` it is `v_2(q - 1)`, for even `k` it is
/// `v_2(q^2 - 1) + v_2(k) - 1`.
pub fn valuation_power_minus_one(p: u64, q: u64, k: u64) -> u32 {
    if q.is_multiple_of(p) {
        return 0;
    }
    if p == 2 {
        let (a, b) = ((q - 1).trailing_zeros(), (q + 1).trailing_zeros());
        return if k % 2 == 1 { a } else { a + b + k.trailing_zeros() - 1 };
    }
    let e = mult_order(p, q).expect("p is prime to q");
    if !k.is_multiple_of(e) {
        return 0;
    }
    let (r, _) = valuation_of_power_minus_one(p, q, e);
    let mut t = k / e;
    let mut extra = 0;
    while t.is_multiple_of(p) {
        t /= p;
        extra += 1;
    }
    r + extra
}

/// `q^k - 1` in factored form. Exact for `q^k < 2^64`; larger values are
/// split through cyclotomic-style repeated factoring of `q^d - 1` pieces.
pub fn factored_power_minus_one(q: u64, k: u32) -> FactoredInteger {
    if let Some(v) = q.checked_pow(k) {
        return factorize(v - 1);
    }
    // q^k - 1 = (q^(k/2) - 1)(q^(k/2) + 1) for even k.
    if k.is_multiple_of(2) {
        let half = factored_power_minus_one(q, k / 2);
        return half.mul(&factored_power_plus_one(q, k / 2));
    }
    panic!("q^k - 1 out of range for q={q}, k={k}");
}

/// `q^k + 1` in factored form.
pub fn factored_power_plus_one(q: u64, k: u32) -> FactoredInteger {
    match q.checked_pow(k).and_then(|v| v.checked_add(1)) {
        Some(v) => factorize(v),
        None => panic!("q^k + 1 out of range for q={q}, k={k}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(mut n: u64) -> BTreeMap<u64, u32> {
        let mut out = BTreeMap::new();
        let mut d = 2;
        while d * d <= n {
            while n.is_multiple_of(d) {
                *out.entry(d).or_insert(0) += 1;
                n /= d;
            }
            d += 1;
        }
        if n > 1 {
            *out.entry(n).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(3, 4).unwrap(), 1);
        assert_eq!(mult_order(5, 2).unwrap(), 4);
        assert_eq!(mult_order(7, 2).unwrap(), 3);
        assert!(matches!(mult_order(9, 2), Err(Error::NonPrime(9))));
        assert!(matches!(mult_order(5, 10), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn mult_order_is_minimal() {
        for p in primes_up_to(200).into_iter().skip(1) {
            for q in 2..60u64 {
                if q % p == 0 {
                    continue;
                }
                let e = mult_order(p, q).unwrap();
                assert_eq!(pow_mod(q, e, p), 1);
                assert!((1..e).all(|k| pow_mod(q, k, p) != 1));
                assert_eq!((p - 1) % e, 0);
            }
        }
    }

    #[test]
    fn valuations_of_powers_minus_one() {
        for p in [2u64, 3, 5, 7, 13] {
            for q in 2..30u64 {
                for k in 1..=12u32 {
                    let Some(v) = q.checked_pow(k) else { continue };
                    let direct = factorize(v - 1).multiplicity(p);
                    assert_eq!(valuation_power_minus_one(p, q, k as u64), direct, "{p} {q} {k}");
                }
            }
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(2, 48).unwrap(), 4);
        assert_eq!(padic_valuation(3, 2400).unwrap(), 1);
        assert_eq!(padic_valuation(5, 2400).unwrap(), 2);
        assert!(padic_valuation(4, 16).is_err());
    }

    #[test]
    fn local_data_examples() {
        let d = prime_local_data(3, 2).unwrap();
        assert_eq!((d.e, d.r, d.x), (2, 1, 1));
        let d = prime_local_data(5, 7).unwrap();
        assert_eq!((d.e, d.r, d.x), (4, 2, 96));
        let d = prime_local_data(3, 4).unwrap();
        assert_eq!((d.e, d.r, d.x), (1, 1, 1));
        assert!(prime_local_data(3, 9).is_err());
    }

    #[test]
    fn local_data_consistent_with_valuation() {
        for p in [3u64, 5, 7, 11, 13] {
            for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27] {
                if q % p == 0 {
                    continue;
                }
                let d = prime_local_data(p, q).unwrap();
                let v = q.pow(d.e as u32) - 1;
                assert_eq!(padic_valuation(p, v).unwrap(), d.r);
                assert_eq!(p.pow(d.r) * d.x, v);
                assert_ne!(d.x % p, 0);
            }
        }
    }

    #[test]
    fn two_local_s_examples_and_sweep() {
        assert_eq!(two_local_s(3).unwrap(), 2);
        assert_eq!(two_local_s(5).unwrap(), 2);
        assert_eq!(two_local_s(7).unwrap(), 3);
        assert!(matches!(two_local_s(4), Err(Error::EvenInput(4))));
        for q in (3..=10_000u64).step_by(2) {
            let s = two_local_s(q).unwrap();
            assert_eq!(s, padic_valuation(2, q * q - 1).unwrap() - 1);
            assert!(s >= 2);
        }
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).is_one());
        assert_eq!(factorize(51840), FactoredInteger::from_pairs([(2, 7), (3, 4), (5, 1)]));
        assert_eq!(factorize(2400), FactoredInteger::from_pairs([(2, 5), (3, 1), (5, 2)]));
    }

    #[test]
    fn factorize_matches_trial_division_exhaustively() {
        for n in 1..=1_000_000u64 {
            let f = factorize(n);
            assert_eq!(f.to_u64(), Some(n));
            if n % 997 == 0 {
                let oracle = trial_division(n);
                assert_eq!(f.iter().collect::<BTreeMap<_, _>>(), oracle);
            }
        }
    }

    #[test]
    fn factorize_large_semiprimes() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let q = 4_294_967_279u64;
        let f = factorize(p * q);
        assert_eq!(f, FactoredInteger::from_pairs([(q, 1), (p, 1)]));
        let n = 1_000_003u64 * 1_000_033 * 17;
        assert_eq!(factorize(n).to_u64(), Some(n));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn fermat_primes() {
        assert!(is_fermat_prime(17));
        assert!(!is_fermat_prime(15));
        assert!(is_fermat_prime(257));
        assert!(is_fermat_prime(3) && is_fermat_prime(5) && is_fermat_prime(65537));
        assert!(!is_fermat_prime(9));
        assert!(!is_fermat_prime((1u64 << 32) + 1)); // 641 * 6700417
        assert!(!is_fermat_prime(2));
    }

    #[test]
    fn factored_arithmetic() {
        let a = factorize(360);
        let b = factorize(84);
        assert_eq!(a.lcm(&b).to_u64(), Some(2520));
        assert_eq!(a.gcd(&b).to_u64(), Some(12));
        assert_eq!(a.mul(&b).to_u64(), Some(360 * 84));
        assert!(factorize(12).divides(&a));
        assert_eq!(a.checked_div(&factorize(8)).unwrap().to_u64(), Some(45));
        assert!(a.checked_div(&factorize(16)).is_none());
        assert_eq!(a.to_string(), "2^3 * 3^2 * 5");
        let big = factored_power_minus_one(7, 40);
        // 2-adic lifting: v2(7^40 - 1) = v2(6) + v2(8) + v2(40) - 1
        assert_eq!(big.multiplicity(2), 6);
    }

    proptest::proptest! {
        #[test]
        fn factor_product_roundtrip(a in 1u64..1_000_000_000, b in 1u64..1_000_000_000) {
            let n = a * b;
            proptest::prop_assert_eq!(factorize(n).to_u64(), Some(n));
            proptest::prop_assert_eq!(factorize(a).mul(&factorize(b)), factorize(n));
        }
    }
}
