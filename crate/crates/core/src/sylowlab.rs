//! Explicit Sylow subgroups of classical groups.
//!
//! Cross characteristic, `p` odd: the cyclic seed inside `GL(e, q)` and the
//! towers `G_{i+1} = G_i wr C_p`. Odd `q`, `p = 2`: the dihedral bases `W`,
//! `W'`, `W''` given by explicit matrices, and the towers over them.
//!
//! Towers live in an ambient tree of wreath algebras over the base matrices:
//! at every level an element is `((x, y); s)` with `s` in `S_2`, which is the
//! block monomial matrix `diag(x, y) P_s`. So `((x, 1); id)` is the block
//! embedding and conjugation by `((e, e); id)` is `(x, y) -> (x^e, y^e)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{shared_field, split_root_pair, subfield_embedding, FieldElement};
use crate::grpengine::{
    direct_product, element_order, enumerate, exponent, exponent_projective, wreath_product, Algebra, Element,
    GroupHandle, MatrixAlgebra, WreathAlgebra,
};
use crate::numth::{factorize, is_prime, mult_order, prime_local_data, prime_power_decomposition, two_local_s, FactoredInteger};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// `prod G_i^{a_i}` for `GL(n, q)`, `p` odd.
    GLtower,
    /// The same for `Sp(n, q)`, `p` odd.
    SpTower,
    /// `W = <X, Y>` inside `Sp(2, q)`.
    W2sp,
    /// `W = <u, w>` inside `GO(2, q)`.
    W2orth,
    /// `W_r = W wr C_2 wr .. wr C_2` over the symplectic base.
    Wr,
    /// `W'_r`, kernel of the spinor norm.
    WprimeR,
    /// `W''_r`, `Omega`.
    WdoubleR,
}

/// What to build. `n` is the matrix degree for the `p`-odd towers and the
/// level `r` for the 2-towers; `projective` only affects `WdoubleR`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SylowModelSpec {
    pub kind: ModelKind,
    pub p: u64,
    pub q: u64,
    pub level: usize,
    pub projective: bool,
}

/// A constructed model with the order and exponent the construction
/// predicts.
#[derive(Clone, Debug)]
pub struct SylowModel {
    pub spec: SylowModelSpec,
    pub handle: GroupHandle,
    pub expected_order: FactoredInteger,
    pub expected_exponent: FactoredInteger,
    /// Central elements to factor out (empty for none): the model is
    /// `<handle> / <centre>`.
    pub centre: Vec<Element>,
}

impl SylowModel {
    /// Order and exponent by enumeration, modulo the centre if any.
    pub fn measure(&self, budget: usize) -> Result<(FactoredInteger, FactoredInteger)> {
        let g = enumerate(&self.handle, budget)?;
        if self.centre.is_empty() {
            return Ok((g.order_factored(), exponent(&g)));
        }
        let mut z = vec![self.handle.identity()];
        z.extend(self.centre.iter().cloned());
        let order = factorize((g.order() / z.len()) as u64);
        Ok((order, exponent_projective(&g, &z)?))
    }
}

fn two(k: u64) -> FactoredInteger {
    FactoredInteger::prime_power(2, k as u32)
}

pub fn build(spec: &SylowModelSpec) -> Result<SylowModel> {
    let (q, r) = (spec.q, spec.level);
    let odd_q = || -> Result<u64> {
        if q % 2 == 0 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(two_local_s(q)? as u64)
    };
    let mut centre = Vec::new();
    let (handle, order, exp) = match spec.kind {
        ModelKind::GLtower | ModelKind::SpTower => {
            let (handle, order, exp) = if spec.kind == ModelKind::GLtower {
                gl_sylow_tower_with_data(spec.p, q, r)?
            } else {
                sp_sylow_tower_with_data(spec.p, q, r)?
            };
            (handle, order, exp)
        }
        ModelKind::W2sp => {
            let s = odd_q()?;
            (w_base(q)?, two(s + 1), two(s))
        }
        ModelKind::W2orth => {
            let s = odd_q()?;
            (w_orth_base(q)?.handle(), two(s + 1), two(s))
        }
        ModelKind::Wr => {
            let s = odd_q()?;
            if r == 0 {
                return Err(Error::OutOfRange("W_r needs r >= 1".into()));
            }
            let half = 1u64 << (r - 1);
            (w_tower(q, r)?, two((s + 1) * half + half - 1), two(s + r as u64 - 1))
        }
        ModelKind::WprimeR => {
            let s = odd_q()?;
            let mut log = s;
            for _ in 0..r {
                log = 2 * log + 2;
            }
            (w_prime_tower(q, r)?, two(log), two(r as u64 + s - 1))
        }
        ModelKind::WdoubleR => {
            let s = odd_q()?;
            if r == 0 {
                return Err(Error::OutOfRange("W''_r needs r >= 1".into()));
            }
            let mut log = 2 * s + 1;
            for _ in 1..r {
                log = 2 * log + 3;
            }
            let tower = w_double_tower_levels(q, r)?;
            if spec.projective {
                centre.push(tower.centre.clone());
                log -= 1;
            }
            let e = if spec.projective && r == 1 { s - 1 } else { r as u64 + s - 1 };
            (tower.top().clone(), two(log), two(e))
        }
    };
    Ok(SylowModel { spec: *spec, handle, expected_order: order, expected_exponent: exp, centre })
}

fn matrix(alg: &MatrixAlgebra, rows: &[&[FieldElement]]) -> Element {
    alg.from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).expect("square rows")
}

fn check_odd_p(p: u64, q: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if p == 2 {
        return Err(Error::InvalidArgument("the towers G_i are for odd p".into()));
    }
    if prime_power_decomposition(q).is_none() {
        return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
    }
    if q.is_multiple_of(p) {
        return Err(Error::NotCoprime { a: p, b: q });
    }
    Ok(())
}

/// The Sylow `p`-subgroup of `GL(e, q)`, `e = ord_p(q)`: multiplication by an
/// element of order `p^r` of `GF(q^e)`, written in the basis `1, b, .., b^(e-1)`
/// for a primitive element `b`.
pub fn cyclic_seed(p: u64, q: u64) -> Result<GroupHandle> {
    check_odd_p(p, q)?;
    let data = prime_local_data(p, q)?;
    let small = shared_field(q)?;
    let e = data.e as usize;
    let pr = p.pow(data.r);
    let alg = Arc::new(MatrixAlgebra::new(small.clone(), e, false)?);
    if e == 1 {
        let z = small.root_of_unity(pr)?;
        return Ok(GroupHandle::new(alg.clone(), vec![matrix(&alg, &[&[z]])]));
    }
    let qe = q.checked_pow(e as u32).ok_or(Error::TooLarge(q))?;
    let big = shared_field(qe)?;
    let emb = subfield_embedding(&small, &big)?;
    let back: HashMap<FieldElement, FieldElement> =
        emb.iter().enumerate().map(|(i, &b)| (b, FieldElement(i as u32))).collect();
    let beta = big.primitive_element();
    // minimal polynomial of beta over GF(q): prod (x - beta^(q^i)), low degree first
    let mut poly = vec![big.one()];
    let mut conj = beta;
    for _ in 0..e {
        let mut next = vec![big.zero(); poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] = big.add(next[i + 1], c);
            next[i] = big.sub(next[i], big.mul(c, conj));
        }
        poly = next;
        conj = big.pow(conj, q);
    }
    let mut rows = vec![vec![small.zero(); e]; e];
    for (i, row) in rows.iter_mut().enumerate().take(e - 1) {
        row[i + 1] = small.one();
    }
    for j in 0..e {
        let c = back.get(&poly[j]).ok_or_else(|| Error::InvalidArgument("minimal polynomial not over GF(q)".into()))?;
        rows[e - 1][j] = small.neg(*c);
    }
    let companion = alg.from_rows(&rows)?;
    let h = GroupHandle::new(alg.clone(), vec![]);
    let zeta = h.pow(&companion, (qe - 1) / pr);
    Ok(h.with_generators(vec![zeta]))
}

/// Base-`p` digits, least significant first.
fn digits(mut a: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while a > 0 {
        out.push(a % p);
        a /= p;
    }
    out
}

/// `prod_i G_i^{digit_i}` for the given digits and seed `G_0`.
fn tower_product(seed: GroupHandle, p: u64, r: u32, a: u64) -> (GroupHandle, FactoredInteger, FactoredInteger) {
    let mut factors = Vec::new();
    let mut level = seed;
    let mut log_order = r as u64;
    let mut order = FactoredInteger::one();
    let ds = digits(a, p);
    for (i, &d) in ds.iter().enumerate() {
        for _ in 0..d {
            factors.push(level.clone());
            order = order.mul(&FactoredInteger::prime_power(p, log_order as u32));
        }
        if i + 1 < ds.len() {
            level = wreath_product(&level, p as usize);
            log_order = p * log_order + 1;
        }
    }
    let v = ds.len().saturating_sub(1) as u32;
    let exp = if factors.is_empty() { FactoredInteger::one() } else { FactoredInteger::prime_power(p, r + v) };
    let handle = if factors.len() == 1 { factors.pop().unwrap() } else { direct_product(&factors) };
    (handle, order, exp)
}

/// A Sylow `p`-subgroup of `GL(n, q)`: write `n = c + e a` and take
/// `prod G_i^{a_i}` over the base-`p` digits of `a`.
pub fn gl_sylow_tower(p: u64, q: u64, n: usize) -> Result<GroupHandle> {
    Ok(gl_sylow_tower_with_data(p, q, n)?.0)
}

fn gl_sylow_tower_with_data(p: u64, q: u64, n: usize) -> Result<(GroupHandle, FactoredInteger, FactoredInteger)> {
    check_odd_p(p, q)?;
    let data = prime_local_data(p, q)?;
    let a = n as u64 / data.e;
    Ok(tower_product(cyclic_seed(p, q)?, p, data.r, a))
}

/// A Sylow `p`-subgroup of `Sp(n, q)`. For even `e` it is the one of
/// `GL(n, q)`; for odd `e` the seed is `diag(A, A^-T)` inside `Sp(2e, q)` and
/// the digits are those of `b` in `n = d + 2 b e`.
pub fn sp_sylow_tower(p: u64, q: u64, n: usize) -> Result<GroupHandle> {
    Ok(sp_sylow_tower_with_data(p, q, n)?.0)
}

fn sp_sylow_tower_with_data(p: u64, q: u64, n: usize) -> Result<(GroupHandle, FactoredInteger, FactoredInteger)> {
    check_odd_p(p, q)?;
    if n % 2 == 1 {
        return Err(Error::InvalidArgument("symplectic degree must be even".into()));
    }
    let e = mult_order(p, q)?;
    if e % 2 == 0 {
        return gl_sylow_tower_with_data(p, q, n);
    }
    let data = prime_local_data(p, q)?;
    let seed = cyclic_seed(p, q)?;
    let small = shared_field(q)?;
    let e = e as usize;
    let alg = Arc::new(MatrixAlgebra::new(small.clone(), 2 * e, false)?);
    let a = &seed.generators[0];
    let inv_t = {
        let ainv = seed.algebra.inverse(a);
        let sa = MatrixAlgebra::new(small, e, false)?;
        sa.transpose(&ainv)
    };
    let mut m = vec![0u8; 4 * e * e];
    for i in 0..e {
        for j in 0..e {
            m[i * 2 * e + j] = a[i * e + j];
            m[(e + i) * 2 * e + e + j] = inv_t[i * e + j];
        }
    }
    let sp_seed = GroupHandle::new(alg, vec![m]);
    Ok(tower_product(sp_seed, p, data.r, n as u64 / (2 * e as u64)))
}

/// `W = <X, Y>`, a Sylow 2-subgroup of `Sp(2, q)`: `X = diag(eps, eps^-1)` for
/// `q = 1 mod 4`; `X = [[0,1],[1,eps+eps^q]]^2` with `eps` of order `2^(s+1)`
/// in `GF(q^2)` for `q = 3 mod 4`; `Y = [[0,1],[-1,0]]`.
pub fn w_base(q: u64) -> Result<GroupHandle> {
    let s = two_local_s(q)?;
    let f = shared_field(q)?;
    let alg = Arc::new(MatrixAlgebra::new(f.clone(), 2, false)?);
    let (one, zero) = (f.one(), f.zero());
    let x = if q % 4 == 1 {
        let eps = f.root_of_unity(1 << s)?;
        matrix(&alg, &[&[eps, zero], &[zero, f.inv(eps)?]])
    } else {
        let big = shared_field(q * q)?;
        let eps = big.root_of_unity(1 << (s + 1))?;
        let trace = big.add(eps, big.pow(eps, q));
        let emb = subfield_embedding(&f, &big)?;
        let t = FieldElement(emb.iter().position(|&b| b == trace).expect("trace lies in GF(q)") as u32);
        let m = matrix(&alg, &[&[zero, one], &[one, t]]);
        alg.mul(&m, &m)
    };
    let y = matrix(&alg, &[&[zero, one], &[f.neg(one), zero]]);
    Ok(GroupHandle::new(alg, vec![x, y]))
}

/// The 2x2 matrices `u`, `w` generating a Sylow 2-subgroup of `GO(2, q)`, and
/// the derived `v = u^2`, `e = uw`.
#[derive(Clone, Debug)]
pub struct OrthogonalBase {
    pub algebra: Arc<MatrixAlgebra>,
    pub u: Element,
    pub w: Element,
    pub v: Element,
    pub e: Element,
    pub s: u32,
}

impl OrthogonalBase {
    pub fn handle(&self) -> GroupHandle {
        GroupHandle::new(self.algebra.clone(), vec![self.u.clone(), self.w.clone()])
    }
}

/// `u = diag(eps, eps^-1)`, `w = [[0,1],[1,0]]` on the plus plane `2 x1 x2`
/// when `q = 1 mod 4`; `u = [[a,b],[-b,a]]`, `w = diag(-1, 1)` on the minus
/// plane `x1^2 + x2^2` when `q = 3 mod 4`, with `a + b i` of order `2^s`.
pub fn w_orth_base(q: u64) -> Result<OrthogonalBase> {
    let s = two_local_s(q)?;
    let f = shared_field(q)?;
    let alg = Arc::new(MatrixAlgebra::new(f.clone(), 2, false)?);
    let (one, zero) = (f.one(), f.zero());
    let (u, w) = if q % 4 == 1 {
        let eps = f.root_of_unity(1 << s)?;
        (matrix(&alg, &[&[eps, zero], &[zero, f.inv(eps)?]]), matrix(&alg, &[&[zero, one], &[one, zero]]))
    } else {
        let (a, b) = split_root_pair(&f, s)?;
        (matrix(&alg, &[&[a, b], &[f.neg(b), a]]), matrix(&alg, &[&[f.neg(one), zero], &[zero, one]]))
    };
    let v = alg.mul(&u, &u);
    let e = alg.mul(&u, &w);
    Ok(OrthogonalBase { algebra: alg, u, w, v, e, s })
}

/// `W' = <v, w>`, dihedral of order `2^s`.
pub fn w_prime_base(q: u64) -> Result<GroupHandle> {
    let b = w_orth_base(q)?;
    Ok(GroupHandle::new(b.algebra.clone(), vec![b.v, b.w]))
}

/// `W_r = W wr C_2 wr .. wr C_2` with `r - 1` wreath layers.
pub fn w_tower(q: u64, r: usize) -> Result<GroupHandle> {
    if r == 0 {
        return Err(Error::OutOfRange("W_r needs r >= 1".into()));
    }
    let mut g = w_base(q)?;
    for _ in 1..r {
        g = wreath_product(&g, 2);
    }
    Ok(g)
}

/// One level up the ambient tree: `((x, 1); id)`.
fn lift(next: &WreathAlgebra, x: &[u8]) -> Element {
    next.in_coordinate(0, x)
}

/// `((x, x); id)`.
fn diagonal(next: &WreathAlgebra, x: &[u8]) -> Element {
    next.compose(&[x, x], &next.identity_top())
}

fn swap(next: &WreathAlgebra) -> Element {
    next.top_element(&[1, 0])
}

/// A twisted tower: the group, its generators by level, and the lifted
/// acting elements at the top level.
#[derive(Clone, Debug)]
pub struct TwistedTower {
    pub levels: Vec<GroupHandle>,
    /// The acting elements (`e` for `W'`; `e`, `f` for `W''`) at each level.
    pub actors: Vec<Vec<Element>>,
    /// The ambient algebra of each level above the base.
    pub wreaths: Vec<Arc<WreathAlgebra>>,
    /// `-1` at the top level (`((z, z); id)` and so on up from the base
    /// centre); the identity when the base has no such element.
    pub centre: Element,
}

impl TwistedTower {
    pub fn top(&self) -> &GroupHandle {
        self.levels.last().unwrap()
    }
}

fn twisted_tower(base: GroupHandle, actors: Vec<Element>, centre: Element, layers: usize) -> TwistedTower {
    let mut centre = centre;
    let mut levels = vec![base];
    let mut acts = vec![actors];
    let mut wreaths = Vec::new();
    for _ in 0..layers {
        let prev = levels.last().unwrap();
        let cur = acts.last().unwrap();
        let next = Arc::new(WreathAlgebra::new(prev.algebra.clone(), 2));
        let mut gens: Vec<Element> = prev.generators.iter().map(|x| lift(&next, x)).collect();
        gens.extend(cur.iter().map(|a| diagonal(&next, a)));
        gens.push(swap(&next));
        let lifted = cur.iter().map(|a| lift(&next, a)).collect();
        levels.push(GroupHandle::new(next.clone(), gens));
        acts.push(lifted);
        centre = diagonal(&next, &centre);
        wreaths.push(next);
    }
    TwistedTower { levels, actors: acts, wreaths, centre }
}

/// `W'_r = W' twr V twr .. twr V` (`r` layers), `V = <a, b>` acting on
/// pairs by `(x, y)^a = (x^e, y^e)`, `(x, y)^b = (y, x)`.
pub fn w_prime_tower_levels(q: u64, r: usize) -> Result<TwistedTower> {
    let b = w_orth_base(q)?;
    let base = GroupHandle::new(b.algebra.clone(), vec![b.v.clone(), b.w.clone()]);
    let minus = b.algebra.scalar(b.algebra.field().neg(b.algebra.field().one()));
    Ok(twisted_tower(base, vec![b.e], minus, r))
}

pub fn w_prime_tower(q: u64, r: usize) -> Result<GroupHandle> {
    Ok(w_prime_tower_levels(q, r)?.top().clone())
}

/// The 4x4 matrices of `W''` and of the acting group `F = <e, f>`.
#[derive(Clone, Debug)]
pub struct DoubleBase {
    pub algebra: Arc<MatrixAlgebra>,
    pub d: Element,
    pub g: Element,
    pub h: Element,
    pub k: Element,
    pub e: Element,
    pub f: Element,
    pub z: Element,
    pub s: u32,
}

impl DoubleBase {
    pub fn handle(&self) -> GroupHandle {
        GroupHandle::new(self.algebra.clone(), vec![self.d.clone(), self.g.clone(), self.h.clone(), self.k.clone()])
    }
}

fn blocks(tl: &[u8], tr: &[u8], bl: &[u8], br: &[u8]) -> Element {
    let mut m = vec![0u8; 16];
    for (block, (r0, c0)) in [(tl, (0, 0)), (tr, (0, 2)), (bl, (2, 0)), (br, (2, 2))] {
        for i in 0..2 {
            for j in 0..2 {
                m[(r0 + i) * 4 + c0 + j] = block[i * 2 + j];
            }
        }
    }
    m
}

/// `d = diag(u, u^-1)`, `g = diag(u, u)`, `h = [[0,1],[1,0]]`,
/// `k = [[0,w],[w,0]]` in 2x2 blocks; `e = diag(uw, 1)`, `f = diag(1, w)`.
pub fn w_double_base(q: u64) -> Result<DoubleBase> {
    let b = w_orth_base(q)?;
    let field = b.algebra.field().clone();
    let alg = Arc::new(MatrixAlgebra::new(field.clone(), 4, false)?);
    let a2 = &b.algebra;
    let one = a2.identity();
    let zero = vec![0u8; 4];
    let uinv = a2.inverse(&b.u);
    let mk = |tl: &[u8], tr: &[u8], bl: &[u8], br: &[u8]| blocks(tl, tr, bl, br);
    let minus = a2.scalar(field.neg(field.one()));
    Ok(DoubleBase {
        d: mk(&b.u, &zero, &zero, &uinv),
        g: mk(&b.u, &zero, &zero, &b.u),
        h: mk(&zero, &one, &one, &zero),
        k: mk(&zero, &b.w, &b.w, &zero),
        e: mk(&b.e, &zero, &zero, &one),
        f: mk(&one, &zero, &zero, &b.w),
        z: mk(&minus, &zero, &zero, &minus),
        s: b.s,
        algebra: alg,
    })
}

/// `W''_r = W'' twr V twr .. twr V` (`r - 1` layers), `V = <a, b, c>` acting
/// by `(x, y)^a = (x^e, y^e)`, `(x, y)^b = (x^f, y^f)`, `(x, y)^c = (y, x)`.
///
/// The Sylow 2-subgroup of the projective group is the quotient by the
/// single central `-1` (the tower's `centre`). Replacing `W''` by `W''/<z>`
/// in every block would instead factor out `<z>^(2^(r-1))`, which is too much
/// for `r >= 2` and lowers the exponent.
pub fn w_double_tower_levels(q: u64, r: usize) -> Result<TwistedTower> {
    if r == 0 {
        return Err(Error::OutOfRange("W''_r needs r >= 1".into()));
    }
    let b = w_double_base(q)?;
    Ok(twisted_tower(b.handle(), vec![b.e.clone(), b.f.clone()], b.z.clone(), r - 1))
}

pub fn w_double_tower(q: u64, r: usize) -> Result<GroupHandle> {
    Ok(w_double_tower_levels(q, r)?.top().clone())
}

/// Orders of the doubling witnesses up a twisted tower: starting from an
/// element `x_0` of the base, `x_{i+1} = ((x_i, 1); swap)`, whose square is
/// `((x_i, x_i); id)`. Each step doubles the order, which certifies
/// `exp(W_{i+1}) >= 2 exp(W_i)` without enumerating the level.
pub fn doubling_witness_orders(tower: &TwistedTower, x0: &[u8]) -> Vec<u64> {
    let mut x = x0.to_vec();
    let mut out = vec![element_order(tower.levels[0].algebra.as_ref(), &x)];
    for next in &tower.wreaths {
        let id = next.base().identity();
        x = next.compose(&[&x, &id], &[1, 0]);
        out.push(element_order(next.as_ref(), &x));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{omega_membership, preserves_form, spinor_norm, standard_form, FormType, QuadraticFormSpec, SquareClass};
    use crate::grpengine::{semidirect_product, DEFAULT_BUDGET};
    use crate::numth::factorize;

    fn order_exp(h: &GroupHandle) -> (u64, u64) {
        let e = enumerate(h, DEFAULT_BUDGET).unwrap();
        (e.order() as u64, exponent(&e).to_u64().unwrap())
    }

    #[test]
    fn cyclic_seeds() {
        let g = cyclic_seed(3, 2).unwrap();
        assert_eq!(order_exp(&g), (3, 3));
        let g = cyclic_seed(5, 7).unwrap();
        assert_eq!(g.algebra.width(), 16);
        assert_eq!(order_exp(&g), (25, 25));
        let g = cyclic_seed(3, 4).unwrap();
        assert_eq!(g.algebra.width(), 1);
        assert_eq!(order_exp(&g), (3, 3));
        assert!(matches!(cyclic_seed(3, 9), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn gl_towers() {
        assert_eq!(order_exp(&gl_sylow_tower(3, 4, 3).unwrap()), (81, 9));
        assert_eq!(order_exp(&gl_sylow_tower(3, 4, 2).unwrap()), (9, 3));
        assert_eq!(order_exp(&gl_sylow_tower(5, 2, 4).unwrap()), (5, 5));
        // orders against the p-part of |GL(n, q)|, exponents against p^(r+v)
        for (p, q, n) in [(3, 2, 6), (3, 4, 4), (3, 7, 3), (5, 4, 5), (3, 5, 4), (7, 2, 6), (3, 2, 5), (5, 11, 5)] {
            let model = build(&SylowModelSpec { kind: ModelKind::GLtower, p, q, level: n, projective: false }).unwrap();
            let (o, e) = order_exp(&model.handle);
            let spec = crate::classical::ClassicalSpec::gl(n, q).unwrap();
            let full = crate::classical::order_factored(&spec).unwrap();
            assert_eq!(o, full.p_part(p).to_u64().unwrap(), "{p} {q} {n}");
            assert_eq!(factorize(o), model.expected_order);
            assert_eq!(factorize(e), model.expected_exponent, "{p} {q} {n}");
        }
    }

    #[test]
    fn sp_towers() {
        for (p, q, n) in [(3, 2, 4), (3, 7, 2), (3, 7, 6), (5, 4, 4), (3, 4, 6), (5, 11, 4)] {
            let model = build(&SylowModelSpec { kind: ModelKind::SpTower, p, q, level: n, projective: false }).unwrap();
            let (o, e) = order_exp(&model.handle);
            let full = crate::classical::order_factored(&crate::classical::ClassicalSpec::sp(n, q).unwrap()).unwrap();
            assert_eq!(o, full.p_part(p).to_u64().unwrap(), "{p} {q} {n}");
            assert_eq!(factorize(e), model.expected_exponent, "{p} {q} {n}");
        }
    }

    #[test]
    fn symplectic_bases() {
        assert_eq!(order_exp(&w_base(5).unwrap()), (8, 4));
        assert_eq!(order_exp(&w_base(7).unwrap()), (16, 8));
        assert_eq!(order_exp(&w_base(3).unwrap()), (8, 4));
        for q in [3, 5, 7, 9, 11, 13, 17, 23, 25, 27, 31] {
            let g = w_base(q).unwrap();
            let s = two_local_s(q).unwrap();
            assert_eq!(order_exp(&g), (1 << (s + 1), 1 << s), "{q}");
            let f = shared_field(q).unwrap();
            let j = crate::classical::symplectic_form(&f, 2);
            for x in &g.generators {
                assert!(crate::classical::preserves_alternating(x, &f, &j).unwrap());
            }
        }
    }

    #[test]
    fn wreath_towers() {
        assert_eq!(order_exp(&w_tower(5, 1).unwrap()).1, 4);
        assert_eq!(order_exp(&w_tower(5, 2).unwrap()), (128, 8));
        assert_eq!(order_exp(&w_tower(5, 3).unwrap()).1, 16);
        for q in [3, 5, 7] {
            for r in 1..=3 {
                let model = build(&SylowModelSpec { kind: ModelKind::Wr, p: 2, q, level: r, projective: false }).unwrap();
                let (o, e) = order_exp(&model.handle);
                let sp = crate::classical::ClassicalSpec::sp(1 << r, q).unwrap();
                let two_part = crate::classical::order_factored(&sp).unwrap().p_part(2);
                assert_eq!(factorize(o), two_part, "{q} {r}");
                assert_eq!(factorize(o), model.expected_order);
                assert_eq!(factorize(e), model.expected_exponent, "{q} {r}");
            }
        }
    }

    /// The Sylow 2-subgroup `W_2` of `Sp(4, q)` as block matrices, and
    /// `W_2 x W_1` inside `Sp(6, q)`: the central `-1` halves the exponent
    /// only in the first, where the degree is a power of two.
    #[test]
    fn projective_collapse_in_symplectic_groups() {
        for q in [3, 5] {
            let f = shared_field(q).unwrap();
            let w = w_base(q).unwrap();
            let embed = |n: usize, at: usize, x: &[u8]| -> Element {
                let mut m = MatrixAlgebra::new(f.clone(), n, false).unwrap().identity();
                for i in 0..2 {
                    for j in 0..2 {
                        m[(at + i) * n + at + j] = x[i * 2 + j];
                    }
                }
                m
            };
            let mut swap4 = vec![0u8; 16];
            for i in 0..2 {
                swap4[i * 4 + i + 2] = 1;
                swap4[(i + 2) * 4 + i] = 1;
            }
            let alg4 = Arc::new(MatrixAlgebra::new(f.clone(), 4, false).unwrap());
            let mut gens: Vec<Element> = w.generators.iter().map(|x| embed(4, 0, x)).collect();
            gens.push(swap4.clone());
            let w2 = GroupHandle::new(alg4.clone(), gens.clone());
            let e = enumerate(&w2, DEFAULT_BUDGET).unwrap();
            let sp4 = crate::classical::order_factored(&crate::classical::ClassicalSpec::sp(4, q).unwrap()).unwrap();
            assert_eq!(factorize(e.order() as u64), sp4.p_part(2));
            let j = crate::classical::symplectic_form(&f, 4);
            assert!(e.elements().all(|x| crate::classical::preserves_alternating(x, &f, &j).unwrap()));
            let minus = alg4.scalar(f.neg(f.one()));
            let z = vec![alg4.identity(), minus];
            let full = exponent(&e).to_u64().unwrap();
            assert_eq!(exponent_projective(&e, &z).unwrap().to_u64().unwrap() * 2, full, "{q}");

            // Sp(6): W_2 on the first four coordinates, W on the last two
            let alg6 = Arc::new(MatrixAlgebra::new(f.clone(), 6, false).unwrap());
            let lift6 = |m4: &[u8]| -> Element {
                let mut m = alg6.identity();
                for i in 0..4 {
                    for k in 0..4 {
                        m[i * 6 + k] = m4[i * 4 + k];
                    }
                }
                m
            };
            let mut gens6: Vec<Element> = gens.iter().map(|x| lift6(x)).collect();
            gens6.extend(w.generators.iter().map(|x| embed(6, 4, x)));
            let e6 = enumerate(&GroupHandle::new(alg6.clone(), gens6), DEFAULT_BUDGET).unwrap();
            let z6 = vec![alg6.identity(), alg6.scalar(f.neg(f.one()))];
            assert_eq!(exponent_projective(&e6, &z6).unwrap(), exponent(&e6), "{q}");
        }
    }

    fn conj(h: &GroupHandle, x: &[u8], y: &[u8]) -> Element {
        h.conj(x, y)
    }

    /// The plane as printed: `2 x1 x2` or `x1^2 + x2^2`.
    fn plane_form(q: u64) -> QuadraticFormSpec {
        standard_form(if q % 4 == 1 { FormType::Plus } else { FormType::Minus }, 2, q).unwrap()
    }

    /// The plus plane normalized to `x1 x2`, under which the membership
    /// claims for `K` hold for every odd `q`.
    fn normalized_plane(q: u64) -> QuadraticFormSpec {
        let form = plane_form(q);
        if q % 4 == 1 {
            let f = form.field().clone();
            form.scaled(f.inv(f.from_int(2)).unwrap())
        } else {
            form
        }
    }

    #[test]
    fn kernel_bases_and_relations() {
        assert_eq!(order_exp(&w_prime_base(7).unwrap()), (8, 4));
        assert_eq!(order_exp(&w_prime_base(5).unwrap()), (4, 2));
        for q in [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31] {
            let b = w_orth_base(q).unwrap();
            let h = b.handle();
            let s = b.s;
            assert_eq!(order_exp(&h), (1 << (s + 1), 1 << s), "{q}");
            let inv = |x: &[u8]| h.inverse(x);
            // (kgen)
            assert!(h.is_identity(&h.pow(&b.v, 1 << (s - 1))));
            assert!(h.is_identity(&h.mul(&b.w, &b.w)));
            assert_eq!(conj(&h, &b.v, &b.w), inv(&b.v));
            // (krel)
            assert_eq!(conj(&h, &b.v, &b.e), inv(&b.v));
            assert_eq!(conj(&h, &b.w, &b.e), h.mul(&b.v, &b.w));
            assert!(h.is_identity(&h.mul(&b.e, &b.e)));
            // u^w = u^-1
            assert_eq!(conj(&h, &b.u, &b.w), inv(&b.u));

            let form = plane_form(q);
            for x in [&b.u, &b.w, &b.v, &b.e] {
                assert!(preserves_form(x, &form).unwrap(), "{q}");
            }
            assert!(!omega_membership(&b.e, &form).unwrap());
            // with Q = 2 x1 x2 the swap w is the reflection in e1 - e2, Q = -2:
            // in K exactly when -2 is a square
            let f = form.field();
            let w_in_k = spinor_norm(&b.w, &form).unwrap() == SquareClass::Trivial;
            let expected = q % 4 == 3 || f.is_square(f.from_int(-2));
            assert_eq!(w_in_k, expected, "{q}");

            // W' = <v, w> inside K and e outside it, for the normalized plane
            let norm = normalized_plane(q);
            for x in [&b.v, &b.w] {
                assert_eq!(spinor_norm(x, &norm).unwrap(), SquareClass::Trivial, "{q}");
            }
            assert_eq!(spinor_norm(&b.e, &norm).unwrap(), SquareClass::Nonsquare, "{q}");
        }
    }

    #[test]
    fn kernel_towers() {
        let exp_of = |q, r| order_exp(&w_prime_tower(q, r).unwrap()).1;
        assert_eq!(exp_of(7, 0), 4);
        assert_eq!(exp_of(7, 1), 8);
        assert_eq!(exp_of(5, 2), 8);
        for (q, rmax) in [(3, 2), (5, 2), (7, 2), (9, 1), (17, 1)] {
            for r in 0..=rmax {
                let model =
                    build(&SylowModelSpec { kind: ModelKind::WprimeR, p: 2, q, level: r, projective: false }).unwrap();
                let (o, e) = order_exp(&model.handle);
                assert_eq!(factorize(o), model.expected_order, "{q} {r}");
                assert_eq!(factorize(e), model.expected_exponent, "{q} {r}");
            }
        }
    }

    /// Each twisted level again as `N : V` with `N = W'_i x W'_i` and `V`
    /// acting by the explicit formulas, through the semidirect engine.
    #[test]
    fn kernel_towers_match_semidirect_products() {
        for q in [5, 7] {
            let tower = w_prime_tower_levels(q, 2).unwrap();
            for i in 0..2 {
                let prev = &tower.levels[i];
                let e = &tower.actors[i][0];
                let pair = direct_product(&[prev.clone(), prev.clone()]);
                let v = {
                    let a = crate::grpengine::PermAlgebra::new(4);
                    GroupHandle::new(Arc::new(a.clone()), vec![a.parse("(1,2)").unwrap(), a.parse("(3,4)").unwrap()])
                };
                let width = prev.algebra.width();
                let palg = prev.algebra.clone();
                let einv = palg.inverse(e);
                let act = |x: &[u8], t: &[u8]| -> Element {
                    let (a, b) = x.split_at(width);
                    if t[0] == 1 {
                        // a: conjugate both coordinates by e
                        let c = |y: &[u8]| palg.mul(&palg.mul(&einv, y), e);
                        [c(a), c(b)].concat()
                    } else {
                        [b, a].concat()
                    }
                };
                let sd = semidirect_product(&pair, &v, act, DEFAULT_BUDGET).unwrap();
                let (o1, e1) = order_exp(&sd);
                let (o2, e2) = order_exp(&tower.levels[i + 1]);
                assert_eq!((o1, e1), (o2, e2), "{q} level {}", i + 1);
            }
        }
    }

    fn double_form(q: u64) -> QuadraticFormSpec {
        let plane = normalized_plane(q);
        let f = plane.field().clone();
        let c = plane.coefficients();
        let mut coef = vec![f.zero(); 16];
        for blk in [0, 2] {
            for i in 0..2 {
                for j in 0..2 {
                    coef[(blk + i) * 4 + blk + j] = c[i * 2 + j];
                }
            }
        }
        QuadraticFormSpec::from_coefficients(f, 4, coef, FormType::Plus)
    }

    #[test]
    fn omega_base_relations() {
        for q in [3, 5, 7, 9, 11, 13, 17, 25] {
            let b = w_double_base(q).unwrap();
            let h = b.handle();
            let s = b.s;
            let t = 1u64 << (s - 1);
            let inv = |x: &[u8]| h.inverse(x);
            let one = h.identity();
            // (omgen)
            assert_eq!(h.pow(&b.d, t), b.z);
            assert_eq!(h.pow(&b.g, t), b.z);
            for x in [&b.z, &b.h, &b.k] {
                assert_eq!(h.mul(x, x), one);
            }
            assert_eq!(conj(&h, &b.d, &b.h), inv(&b.d));
            assert_eq!(conj(&h, &b.g, &b.k), inv(&b.g));
            for (x, y) in [(&b.d, &b.g), (&b.d, &b.k), (&b.h, &b.g), (&b.h, &b.k)] {
                assert_eq!(h.commutator(x, y), one);
            }
            // (omrel)
            assert_eq!(conj(&h, &b.d, &b.e), inv(&b.g));
            assert_eq!(conj(&h, &b.g, &b.e), inv(&b.d));
            assert_eq!(conj(&h, &b.h, &b.e), h.mul(&b.g, &b.k));
            assert_eq!(conj(&h, &b.k, &b.e), h.mul(&b.d, &b.h));
            assert_eq!(conj(&h, &b.d, &b.f), b.g);
            assert_eq!(conj(&h, &b.g, &b.f), b.d);
            assert_eq!(conj(&h, &b.h, &b.f), b.k);
            assert_eq!(conj(&h, &b.k, &b.f), b.h);

            let en = enumerate(&h, DEFAULT_BUDGET).unwrap();
            assert_eq!(en.order() as u64, 1 << (2 * s + 1), "{q}");
            assert_eq!(exponent(&en).to_u64(), Some(1 << s), "{q}");
            let centre: Vec<&[u8]> = en
                .elements()
                .filter(|x| h.generators.iter().all(|g| h.mul(x, g) == h.mul(g, x)))
                .collect();
            assert_eq!(centre, vec![&one[..], &b.z[..]]);

            let form = double_form(q);
            for x in en.elements() {
                assert!(omega_membership(x, &form).unwrap(), "{q}");
            }
            assert!(!omega_membership(&b.e, &form).unwrap());
            assert_eq!(spinor_norm(&b.e, &form).unwrap(), SquareClass::Nonsquare);
            assert!(!omega_membership(&b.f, &form).unwrap());
        }
    }

    #[test]
    fn omega_towers() {
        for q in [3, 5, 7] {
            let s = two_local_s(q).unwrap() as u64;
            for projective in [false, true] {
                for r in 1..=2 {
                    let model =
                        build(&SylowModelSpec { kind: ModelKind::WdoubleR, p: 2, q, level: r, projective }).unwrap();
                    let (o, e) = model.measure(DEFAULT_BUDGET).unwrap();
                    assert_eq!(o, model.expected_order, "{q} {r} {projective}");
                    assert_eq!(e, model.expected_exponent, "{q} {r} {projective}");
                }
            }
            // W''_2 has exponent 2^(s+1) = 2^(r+s-1), and so has its quotient
            // by -1
            let tower = w_double_tower_levels(q, 2).unwrap();
            let e = enumerate(tower.top(), DEFAULT_BUDGET).unwrap();
            let full = exponent(&e);
            assert_eq!(full, FactoredInteger::prime_power(2, s as u32 + 1));
            let z = vec![tower.top().identity(), tower.centre.clone()];
            assert_eq!(exponent_projective(&e, &z).unwrap(), full);
        }
    }

    /// `x = ((d, 1), ac)` in `W''_2` has `x^2 = ((d, g^-1), 1)` and
    /// `x^(2^s) = -1`, so order `2^s` modulo the centre.
    #[test]
    fn worked_element_in_level_two() {
        for q in [3, 5, 7] {
            let tower = w_double_tower_levels(q, 2).unwrap();
            let base = w_double_base(q).unwrap();
            let next = &tower.wreaths[0];
            let top = tower.top();
            let d1 = next.in_coordinate(0, &base.d);
            let a = next.compose(&[&base.e, &base.e], &next.identity_top());
            let c = next.top_element(&[1, 0]);
            let x = top.mul(&d1, &top.mul(&a, &c));
            let g_inv = base.algebra.inverse(&base.g);
            assert_eq!(top.mul(&x, &x), next.compose(&[&base.d, &g_inv], &next.identity_top()));
            assert_eq!(top.pow(&x, 1 << base.s), tower.centre, "{q}");
            let z = vec![top.identity(), tower.centre.clone()];
            assert_eq!(crate::grpengine::projective_order(top, &x, &z).unwrap(), 1 << base.s);
        }
    }

    #[test]
    fn doubling_witnesses_beyond_the_cap() {
        for q in [3, 5, 7, 9] {
            let s = two_local_s(q).unwrap();
            let kernel = w_prime_tower_levels(q, 6).unwrap();
            let b = w_orth_base(q).unwrap();
            let orders = doubling_witness_orders(&kernel, &b.v);
            let expected: Vec<u64> = (0..=6).map(|i| 1u64 << (s - 1 + i)).collect();
            assert_eq!(orders, expected, "{q}");
            let omega = w_double_tower_levels(q, 6).unwrap();
            let d = w_double_base(q).unwrap().d;
            let orders = doubling_witness_orders(&omega, &d);
            let expected: Vec<u64> = (0..6).map(|i| 1u64 << (s + i)).collect();
            assert_eq!(orders, expected, "{q}");
        }
    }
}

