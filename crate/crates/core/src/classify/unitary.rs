//! `SU(n, q)` and `PSU(n, q)` as matrix groups over `GF(q^2)`, generated by
//! unitary transvections.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{shared_field, FieldElement, FiniteField};
use crate::grpengine::{enumerate, GroupHandle, MatrixAlgebra};
use crate::numth::{gcd, FactoredInteger};

/// `|SU(n, q)| = q^(n(n-1)/2) prod_{i=2..n} (q^i - (-1)^i)`, divided by
/// `gcd(n, q + 1)` for the projective group.
pub fn unitary_order(n: u32, q: u64, projective: bool) -> Result<FactoredInteger> {
    let mut order = FactoredInteger::from_u64(q).pow(n * (n - 1) / 2);
    for i in 2..=n {
        let t = q.checked_pow(i).ok_or_else(|| Error::OutOfRange(format!("SU({n}, {q}) order")))?;
        order = order.mul(&FactoredInteger::from_u64(if i % 2 == 0 { t - 1 } else { t + 1 }));
    }
    if projective {
        let d = gcd(n as u64, q + 1);
        order = order.checked_div(&FactoredInteger::from_u64(d)).expect("centre order divides");
    }
    Ok(order)
}

/// The hermitian form `h(x, y) = sum x_i y_(n-1-i)^q`.
fn hermitian(f: &FiniteField, q: u64, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
    let n = x.len();
    (0..n).fold(f.zero(), |acc, i| f.add(acc, f.mul(x[i], f.pow(y[n - 1 - i], q))))
}

/// `x -> x + a h(x, v) v` for isotropic `v` and `a + a^q = 0`.
fn transvection(f: &FiniteField, q: u64, v: &[FieldElement], a: FieldElement) -> Vec<Vec<FieldElement>> {
    let n = v.len();
    (0..n)
        .map(|i| {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            let c = f.mul(a, hermitian(f, q, &e, v));
            (0..n).map(|j| f.add(e[j], f.mul(c, v[j]))).collect()
        })
        .collect()
}

/// Nonzero isotropic vectors with first nonzero coordinate one.
fn isotropic_vectors(f: &FiniteField, q: u64, n: usize) -> Vec<Vec<FieldElement>> {
    let elems: Vec<FieldElement> = f.elements().collect();
    let mut out = Vec::new();
    let mut v = vec![0usize; n];
    loop {
        let x: Vec<FieldElement> = v.iter().map(|&i| elems[i]).collect();
        let lead = x.iter().find(|c| **c != f.zero());
        if lead == Some(&f.one()) && hermitian(f, q, &x, &x) == f.zero() {
            out.push(x);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            v[i] += 1;
            if v[i] < elems.len() {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

/// Generators of `SU(n, q)` (or `PSU(n, q)` in the projective algebra),
/// checked by enumeration against `unitary_order` when the order is within
/// `budget`; beyond it the generators are returned unchecked.
pub fn unitary_group(n: usize, q: u64, projective: bool, budget: usize) -> Result<GroupHandle> {
    if n < 2 {
        return Err(Error::InvalidArgument("unitary groups need n >= 2".into()));
    }
    let f = shared_field(q * q)?;
    let alg = Arc::new(MatrixAlgebra::new(f.clone(), n, projective)?);
    let traceless: Vec<FieldElement> =
        f.elements().filter(|&a| a != f.zero() && f.add(a, f.pow(a, q)) == f.zero()).collect();
    let mut cands: Vec<(Vec<FieldElement>, FieldElement)> = isotropic_vectors(&f, q, n)
        .into_iter()
        .flat_map(|v| traceless.iter().map(move |&a| (v.clone(), a)))
        .collect();
    cands.shuffle(&mut ChaCha8Rng::seed_from_u64(0x7375_6e69));
    let handle = |k: usize| -> Result<GroupHandle> {
        let gens = cands[..k]
            .iter()
            .map(|(v, a)| alg.from_rows(&transvection(&f, q, v, *a)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupHandle::new(alg.clone(), gens))
    };
    let target = unitary_order(n as u32, q, projective)?.to_u64().filter(|&o| o as u128 <= budget as u128);
    let Some(target) = target else { return handle(4.min(cands.len())) };
    let mut k = 4.min(cands.len());
    loop {
        let h = handle(k)?;
        if enumerate(&h, target as usize)?.order() as u64 == target {
            return Ok(h);
        }
        if k == cands.len() {
            return Err(Error::InvalidSpec(format!("transvections do not generate SU({n}, {q})")));
        }
        k = (2 * k).min(cands.len());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpengine::{exponent, DEFAULT_BUDGET};

    #[test]
    fn transvections_are_unitary() {
        for (n, q) in [(3, 3), (4, 2), (3, 5)] {
            let f = shared_field(q * q).unwrap();
            let vs = isotropic_vectors(&f, q, n);
            assert!(!vs.is_empty());
            let a = f.elements().find(|&a| a != f.zero() && f.add(a, f.pow(a, q)) == f.zero()).unwrap();
            for v in vs.iter().take(20) {
                let t = transvection(&f, q, v, a);
                for x in vs.iter().take(10) {
                    for y in vs.iter().take(10) {
                        let tx: Vec<_> = (0..n).map(|j| (0..n).fold(f.zero(), |s, i| f.add(s, f.mul(x[i], t[i][j])))).collect();
                        let ty: Vec<_> = (0..n).map(|j| (0..n).fold(f.zero(), |s, i| f.add(s, f.mul(y[i], t[i][j])))).collect();
                        assert_eq!(hermitian(&f, q, &tx, &ty), hermitian(&f, q, x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn small_unitary_groups() {
        assert_eq!(unitary_order(3, 3, true).unwrap().to_u64(), Some(6048));
        assert_eq!(unitary_order(4, 2, false).unwrap().to_u64(), Some(25920));
        assert_eq!(unitary_order(3, 5, true).unwrap().to_u64(), Some(126000));
        assert_eq!(unitary_order(4, 3, true).unwrap().to_u64(), Some(3265920));
        let u33 = enumerate(&unitary_group(3, 3, false, DEFAULT_BUDGET).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(u33.order(), 6048);
        assert_eq!(exponent(&u33).to_u64(), Some(168));
        let u42 = enumerate(&unitary_group(4, 2, false, DEFAULT_BUDGET).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(exponent(&u42).to_u64(), Some(180));
    }
}
