//! Finite fields `GF(p^k)` with a canonical modulus.
//!
//! Elements are integers in `[0, p^k)`: the coefficient vector
//! `(c_0, .., c_{k-1})` of `c_0 + c_1 x + ...` read as base-`p` digits.
//! Comparing these integers is the coefficient-lex order (leading
//! coefficient most significant) used for every deterministic choice.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numth::{factorize, is_prime, prime_power_decomposition};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;
const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u32);

#[derive(Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low degree first, length `k + 1`.
    modulus: Vec<u32>,
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl FiniteField {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let mut v = x.0;
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        FieldElement(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        if self.k == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        if !self.log.is_empty() {
            let s = self.log[a.0 as usize] + self.log[b.0 as usize];
            return FieldElement(self.exp[s as usize]);
        }
        self.mul_poly(a, b)
    }

    fn mul_poly(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as u64;
        let k = self.k as usize;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate().take(k) {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
            prod[d] = 0;
        }
        let c: Vec<u32> = prod[..k].iter().map(|&v| v as u32).collect();
        self.from_coeffs(&c)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    pub fn is_square(&self, a: FieldElement) -> bool {
        if a.0 == 0 || self.p == 2 {
            return true;
        }
        self.pow(a, (self.q as u64 - 1) / 2) == self.one()
    }

    /// Least `n >= 1` with `a^n = 1`.
    pub fn elem_mult_order(&self, a: FieldElement) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        let group = self.q as u64 - 1;
        let mut n = group;
        for (l, _) in factorize(group).iter() {
            while n.is_multiple_of(l) && self.pow(a, n / l) == self.one() {
                n /= l;
            }
        }
        Ok(n)
    }

    /// The index-least element of exact multiplicative order `n`.
    pub fn root_of_unity(&self, n: u64) -> Result<FieldElement> {
        let group = self.q as u64 - 1;
        if n == 0 || !group.is_multiple_of(n) {
            return Err(Error::NoSuchRoot { q: self.q as u64, n });
        }
        self.elements()
            .skip(1)
            .find(|&x| self.elem_mult_order(x) == Ok(n))
            .ok_or(Error::NoSuchRoot { q: self.q as u64, n })
    }

    /// Index-least generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.root_of_unity(self.q as u64 - 1).expect("multiplicative group is cyclic")
    }
}

fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    // den monic
    let p = p as u64;
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * c as u64) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut v = low;
            for _ in 0..d {
                div.push((v % p as u64) as u32);
                v /= p as u64;
            }
            div.push(1);
            if poly_rem(poly, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible of degree `k` over `GF(p)`.
pub fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(k);
    for low in 0..count {
        let mut poly = Vec::with_capacity(k as usize + 1);
        let mut v = low;
        for _ in 0..k {
            poly.push((v % p as u64) as u32);
            v /= p as u64;
        }
        poly.push(1);
        if poly[0] != 0 && is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// `GF(p^k)` with its canonical modulus.
pub fn make_field(p: u64, k: u32) -> Result<FiniteField> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
    }
    let q = p.checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER).ok_or(Error::TooLarge(p.saturating_pow(k)))?;
    let mut field = FiniteField {
        p: p as u32,
        k,
        q: q as u32,
        modulus: canonical_modulus(p as u32, k),
        log: Vec::new(),
        exp: Vec::new(),
    };
    if k > 1 && q <= TABLE_LIMIT {
        let g = field.primitive_element();
        let n = q as usize - 1;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; q as usize];
        let mut x = field.one();
        for i in 0..n {
            exp[i] = x.0;
            exp[i + n] = x.0;
            log[x.0 as usize] = i as u32;
            x = field.mul_poly(x, g);
        }
        field.exp = exp;
        field.log = log;
    }
    Ok(field)
}

/// The field of order `q` (a prime power).
pub fn field_of_order(q: u64) -> Result<FiniteField> {
    let (p, k) = prime_power_decomposition(q).ok_or_else(|| Error::InvalidSpec(format!("{q} is not a prime power")))?;
    make_field(p, k)
}

pub fn shared_field(q: u64) -> Result<Arc<FiniteField>> {
    field_of_order(q).map(Arc::new)
}

/// Embedding of `small` into `big`, as a table indexed by `small`'s elements.
/// Fixed by sending the generator `x` of `small` to the index-least root of
/// its modulus in `big`.
pub fn subfield_embedding(small: &FiniteField, big: &FiniteField) -> Result<Vec<FieldElement>> {
    if small.p != big.p || !big.k.is_multiple_of(small.k) {
        return Err(Error::InvalidArgument(format!(
            "GF({}) is not a subfield of GF({})",
            small.q, big.q
        )));
    }
    let eval = |root: FieldElement, coeffs: &[u32]| {
        coeffs.iter().rev().fold(big.zero(), |acc, &c| big.add(big.mul(acc, root), big.from_int(c as i64)))
    };
    let root = if small.k == 1 {
        big.zero()
    } else {
        big.elements()
            .find(|&y| eval(y, &small.modulus) == big.zero())
            .expect("subfield modulus splits in the extension")
    };
    Ok(small
        .elements()
        .map(|x| {
            let c = small.coeffs(x);
            if small.k == 1 {
                big.from_int(c[0] as i64)
            } else {
                eval(root, &c)
            }
        })
        .collect())
}

/// `(a, b)` in `GF(q)` with `a + b*i` of exact order `2^s` in `GF(q)[i]`,
/// `i^2 = -1`; the lex-least pair `(a, b)` is returned.
pub fn split_root_pair(field: &FiniteField, s: u32) -> Result<(FieldElement, FieldElement)> {
    let q = field.order() as u64;
    if q % 4 != 3 {
        return Err(Error::BadResidue(q));
    }
    let target = 1u64 << s;
    if !(q * q - 1).is_multiple_of(target) {
        return Err(Error::NoSuchRoot { q: q * q, n: target });
    }
    let mul = |(a, b): (FieldElement, FieldElement), (c, d): (FieldElement, FieldElement)| {
        (
            field.sub(field.mul(a, c), field.mul(b, d)),
            field.add(field.mul(a, d), field.mul(b, c)),
        )
    };
    let one = (field.one(), field.zero());
    for a in field.elements() {
        for b in field.elements() {
            if a.0 == 0 && b.0 == 0 {
                continue;
            }
            // square s - 1 times, then once more
            let mut x = (a, b);
            for _ in 0..s.saturating_sub(1) {
                x = mul(x, x);
            }
            if s > 0 && x == one {
                continue;
            }
            let y = if s == 0 { x } else { mul(x, x) };
            if y == one {
                return Ok((a, b));
            }
        }
    }
    Err(Error::NoSuchRoot { q: q * q, n: target })
}
