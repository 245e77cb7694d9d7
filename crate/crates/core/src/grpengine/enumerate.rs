use std::hash::BuildHasher;
use std::sync::Arc;

use hashbrown::{DefaultHashBuilder, HashTable};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numth::{factorize, lcm, FactoredInteger};

use super::{Algebra, Element, GroupHandle};

/// Default element budget; overridable per call.
pub const DEFAULT_BUDGET: usize = 5_000_000;

const BLOCK: usize = 1 << 16;
const CHUNK: usize = 512;

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub cap: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Keep a spanning tree: for every element, its BFS parent and the
    /// generator that reached it.
    pub record_tree: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { cap: DEFAULT_BUDGET, threads: None, record_tree: false }
    }
}

impl EnumOptions {
    pub fn with_cap(cap: usize) -> Self {
        EnumOptions { cap, ..Default::default() }
    }
}

/// All elements of a finite group, in breadth-first discovery order.
pub struct EnumeratedGroup {
    handle: GroupHandle,
    width: usize,
    arena: Vec<u8>,
    table: HashTable<u32>,
    hasher: DefaultHashBuilder,
    tree: Option<Vec<(u32, u16)>>,
}

impl std::fmt::Debug for EnumeratedGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EnumeratedGroup")
            .field("algebra", &self.handle.algebra.describe())
            .field("order", &self.order())
            .finish()
    }
}

impl EnumeratedGroup {
    pub fn order(&self) -> usize {
        self.arena.len() / self.width
    }

    pub fn handle(&self) -> &GroupHandle {
        &self.handle
    }

    pub fn algebra(&self) -> &Arc<dyn Algebra> {
        &self.handle.algebra
    }

    pub fn element(&self, i: usize) -> &[u8] {
        &self.arena[i * self.width..(i + 1) * self.width]
    }

    pub fn elements(&self) -> impl Iterator<Item = &[u8]> {
        self.arena.chunks_exact(self.width)
    }

    pub fn index_of(&self, x: &[u8]) -> Option<usize> {
        let h = self.hasher.hash_one(x);
        self.table.find(h, |&i| self.element(i as usize) == x).map(|&i| i as usize)
    }

    pub fn contains(&self, x: &[u8]) -> bool {
        self.index_of(x).is_some()
    }

    /// BFS parent and generator index of element `i` (`None` for the
    /// identity or when no tree was recorded).
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        let tree = self.tree.as_ref()?;
        if i == 0 {
            return None;
        }
        let (p, g) = tree[i];
        Some((p as usize, g as usize))
    }

    pub fn has_tree(&self) -> bool {
        self.tree.is_some()
    }

    /// `|elements|` as a factored integer.
    pub fn order_factored(&self) -> FactoredInteger {
        factorize(self.order() as u64)
    }

    fn insert(&mut self, hash: u64, x: &[u8]) -> bool {
        let width = self.width;
        let arena = &self.arena;
        if self.table.find(hash, |&i| &arena[i as usize * width..(i as usize + 1) * width] == x).is_some() {
            return false;
        }
        let idx = self.order() as u32;
        self.arena.extend_from_slice(x);
        let arena = &self.arena;
        let hasher = &self.hasher;
        self.table
            .insert_unique(hash, idx, |&i| hasher.hash_one(&arena[i as usize * width..(i as usize + 1) * width]));
        true
    }
}

/// Breadth-first closure of the generators with the default options.
pub fn enumerate(handle: &GroupHandle, cap: usize) -> Result<EnumeratedGroup> {
    enumerate_with(handle, EnumOptions::with_cap(cap))
}

pub fn enumerate_with(handle: &GroupHandle, opts: EnumOptions) -> Result<EnumeratedGroup> {
    match opts.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            pool.install(|| closure(handle, opts))
        }
        None => closure(handle, opts),
    }
}

fn closure(handle: &GroupHandle, opts: EnumOptions) -> Result<EnumeratedGroup> {
    if opts.cap == 0 {
        return Err(Error::InvalidArgument("element budget must be at least 1".into()));
    }
    let alg = handle.algebra.clone();
    let width = alg.width();
    let gens: Vec<Element> = handle.generators.clone();
    let mut g = EnumeratedGroup {
        handle: handle.clone(),
        width,
        arena: Vec::new(),
        table: HashTable::new(),
        hasher: DefaultHashBuilder::default(),
        tree: opts.record_tree.then(Vec::new),
    };
    let id = alg.identity();
    let h = g.hasher.hash_one(&id);
    g.insert(h, &id);
    if let Some(t) = g.tree.as_mut() {
        t.push((0, 0));
    }
    let k = gens.len();
    let mut lo = 0;
    while lo < g.order() {
        let hi = g.order().min(lo + BLOCK);
        let idxs: Vec<usize> = (lo..hi).collect();
        let products: Vec<(Vec<u8>, Vec<u64>)> = {
            let g = &g;
            idxs.par_chunks(CHUNK)
                .map(|chunk| {
                    let mut buf = vec![0u8; chunk.len() * k * width];
                    let mut hashes = Vec::with_capacity(chunk.len() * k);
                    for (n, &i) in chunk.iter().enumerate() {
                        let x = g.element(i);
                        for (j, s) in gens.iter().enumerate() {
                            let off = (n * k + j) * width;
                            let out = &mut buf[off..off + width];
                            alg.mul_into(x, s, out);
                            hashes.push(g.hasher.hash_one(&*out));
                        }
                    }
                    (buf, hashes)
                })
                .collect()
        };
        let mut parent = lo;
        for (buf, hashes) in products {
            for (m, (x, &hash)) in buf.chunks_exact(width).zip(&hashes).enumerate() {
                if g.insert(hash, x) {
                    if g.order() > opts.cap {
                        return Err(Error::CapExceeded { cap: opts.cap, found: g.order() });
                    }
                    if let Some(t) = g.tree.as_mut() {
                        t.push(((parent + m / k) as u32, (m % k) as u16));
                    }
                }
            }
            parent += buf.len() / (k * width);
        }
        lo = hi;
    }
    Ok(g)
}

/// Least `n >= 1` with `x^n = 1`, by iterated multiplication.
pub fn element_order(alg: &dyn Algebra, x: &[u8]) -> u64 {
    let id = alg.identity();
    let mut y = x.to_vec();
    let mut tmp = vec![0u8; y.len()];
    let mut n = 1;
    while y != id {
        alg.mul_into(&y, x, &mut tmp);
        std::mem::swap(&mut y, &mut tmp);
        n += 1;
    }
    n
}

fn pow(alg: &dyn Algebra, x: &[u8], mut e: u64) -> Element {
    let mut base = x.to_vec();
    let mut acc = alg.identity();
    while e > 0 {
        if e & 1 == 1 {
            acc = alg.mul(&acc, &base);
        }
        base = alg.mul(&base, &base);
        e >>= 1;
    }
    acc
}

/// Order of `x` given a known multiple `n` of it (e.g. the group order),
/// by stripping primes from `n` with square-and-multiply.
pub fn element_order_dividing(alg: &dyn Algebra, x: &[u8], n: &FactoredInteger) -> Result<u64> {
    let mut order = n.to_u64().ok_or_else(|| Error::OutOfRange(format!("{n} exceeds 64 bits")))?;
    if !alg.is_identity(&pow(alg, x, order)) {
        return Err(Error::InvalidArgument(format!("element order does not divide {n}")));
    }
    for p in n.primes() {
        while order % p == 0 && alg.is_identity(&pow(alg, x, order / p)) {
            order /= p;
        }
    }
    Ok(order)
}

fn check_central(handle: &GroupHandle, z: &[Element]) -> Result<()> {
    for c in z {
        for g in &handle.generators {
            if handle.mul(c, g) != handle.mul(g, c) {
                return Err(Error::NotCentral(format!("{c:?} does not commute with generator {g:?}")));
            }
        }
    }
    Ok(())
}

/// Least `k >= 1` with `x^k` in the central subgroup `z`.
pub fn projective_order(handle: &GroupHandle, x: &[u8], z: &[Element]) -> Result<u64> {
    check_central(handle, z)?;
    Ok(projective_order_unchecked(handle.algebra.as_ref(), x, z))
}

fn projective_order_unchecked(alg: &dyn Algebra, x: &[u8], z: &[Element]) -> u64 {
    let id = alg.identity();
    let mut y = x.to_vec();
    let mut tmp = vec![0u8; y.len()];
    let mut n = 1;
    while y != id && !z.contains(&y) {
        alg.mul_into(&y, x, &mut tmp);
        std::mem::swap(&mut y, &mut tmp);
        n += 1;
    }
    n
}

fn lcm_over(g: &EnumeratedGroup, order: impl Fn(&[u8]) -> u64 + Sync) -> FactoredInteger {
    let idxs: Vec<usize> = (0..g.order()).collect();
    let l = idxs
        .par_chunks(4096)
        .map(|chunk| chunk.iter().fold(1u64, |acc, &i| lcm(acc, order(g.element(i)))))
        .reduce(|| 1, lcm);
    factorize(l)
}

/// Least common multiple of all element orders.
pub fn exponent(g: &EnumeratedGroup) -> FactoredInteger {
    let alg = g.algebra().clone();
    lcm_over(g, |x| element_order(alg.as_ref(), x))
}

/// Exponent of `G / Z` for a central subgroup `Z` given as its element list.
pub fn exponent_projective(g: &EnumeratedGroup, z: &[Element]) -> Result<FactoredInteger> {
    check_central(g.handle(), z)?;
    let alg = g.algebra().clone();
    Ok(lcm_over(g, |x| projective_order_unchecked(alg.as_ref(), x, z)))
}
