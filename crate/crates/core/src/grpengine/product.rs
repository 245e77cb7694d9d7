use std::sync::Arc;

use super::{Algebra, Element, GroupHandle};

/// `B wr S` for a permutation group `S` of degree `t`: an element is
/// `t` coordinates in `B` followed by the `t`-byte image array of the top
/// permutation. With right actions,
/// `(f; s)(g; u) = (i -> f_i * g_{s(i)}; s then u)`.
#[derive(Debug)]
pub struct WreathAlgebra {
    base: Arc<dyn Algebra>,
    t: usize,
    bw: usize,
}

impl WreathAlgebra {
    pub fn new(base: Arc<dyn Algebra>, t: usize) -> Self {
        assert!((1..=255).contains(&t));
        let bw = base.width();
        WreathAlgebra { base, t, bw }
    }

    pub fn base(&self) -> &Arc<dyn Algebra> {
        &self.base
    }

    pub fn copies(&self) -> usize {
        self.t
    }

    pub fn coordinate<'a>(&self, x: &'a [u8], i: usize) -> &'a [u8] {
        &x[i * self.bw..(i + 1) * self.bw]
    }

    pub fn top<'a>(&self, x: &'a [u8]) -> &'a [u8] {
        &x[self.t * self.bw..]
    }

    /// Assemble from coordinates and a top image array.
    pub fn compose(&self, coords: &[&[u8]], top: &[u8]) -> Element {
        assert_eq!(coords.len(), self.t);
        let mut out = Vec::with_capacity(self.width());
        for c in coords {
            out.extend_from_slice(c);
        }
        out.extend_from_slice(top);
        out
    }

    pub fn identity_top(&self) -> Vec<u8> {
        (0..self.t as u8).collect()
    }

    /// `(b, 1, .., 1; id)`.
    pub fn in_coordinate(&self, i: usize, b: &[u8]) -> Element {
        let id = self.base.identity();
        let coords: Vec<&[u8]> = (0..self.t).map(|j| if j == i { b } else { id.as_slice() }).collect();
        self.compose(&coords, &self.identity_top())
    }

    /// `(1, .., 1; s)`.
    pub fn top_element(&self, images: &[u8]) -> Element {
        let id = self.base.identity();
        let coords: Vec<&[u8]> = (0..self.t).map(|_| id.as_slice()).collect();
        self.compose(&coords, images)
    }

    /// `(1, .., 1; i -> i + 1 mod t)`.
    pub fn top_cycle(&self) -> Element {
        let images: Vec<u8> = (0..self.t).map(|i| ((i + 1) % self.t) as u8).collect();
        self.top_element(&images)
    }
}

impl Algebra for WreathAlgebra {
    fn width(&self) -> usize {
        self.t * self.bw + self.t
    }

    fn identity(&self) -> Element {
        self.top_element(&self.identity_top())
    }

    fn mul_into(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        let (t, bw) = (self.t, self.bw);
        let ta = &a[t * bw..];
        let tb = &b[t * bw..];
        for i in 0..t {
            let j = ta[i] as usize;
            self.base.mul_into(&a[i * bw..(i + 1) * bw], &b[j * bw..(j + 1) * bw], &mut out[i * bw..(i + 1) * bw]);
        }
        for i in 0..t {
            out[t * bw + i] = tb[ta[i] as usize];
        }
    }

    fn inverse(&self, a: &[u8]) -> Element {
        let (t, bw) = (self.t, self.bw);
        let ta = &a[t * bw..];
        let mut inv_top = vec![0u8; t];
        for (i, &j) in ta.iter().enumerate() {
            inv_top[j as usize] = i as u8;
        }
        let mut out = vec![0u8; self.width()];
        // h_j = (f_{s^-1(j)})^-1
        for j in 0..t {
            let src = inv_top[j] as usize;
            let inv = self.base.inverse(&a[src * bw..(src + 1) * bw]);
            out[j * bw..(j + 1) * bw].copy_from_slice(&inv);
        }
        out[t * bw..].copy_from_slice(&inv_top);
        out
    }

    fn describe(&self) -> String {
        format!("({}) wr {}", self.base.describe(), self.t)
    }
}

/// Direct product; elements are concatenations.
#[derive(Debug)]
pub struct DirectProductAlgebra {
    factors: Vec<Arc<dyn Algebra>>,
    offsets: Vec<usize>,
}

impl DirectProductAlgebra {
    pub fn new(factors: Vec<Arc<dyn Algebra>>) -> Self {
        let mut offsets = vec![0];
        for f in &factors {
            offsets.push(offsets.last().unwrap() + f.width());
        }
        DirectProductAlgebra { factors, offsets }
    }

    pub fn factors(&self) -> &[Arc<dyn Algebra>] {
        &self.factors
    }

    pub fn component<'a>(&self, x: &'a [u8], i: usize) -> &'a [u8] {
        &x[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn compose(&self, parts: &[&[u8]]) -> Element {
        parts.concat()
    }

    /// `x` in factor `i`, identity elsewhere.
    pub fn inject(&self, i: usize, x: &[u8]) -> Element {
        let mut out = self.identity();
        out[self.offsets[i]..self.offsets[i + 1]].copy_from_slice(x);
        out
    }
}

impl Algebra for DirectProductAlgebra {
    fn width(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn identity(&self) -> Element {
        self.factors.iter().flat_map(|f| f.identity()).collect()
    }

    fn mul_into(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        for (i, f) in self.factors.iter().enumerate() {
            let r = self.offsets[i]..self.offsets[i + 1];
            f.mul_into(&a[r.clone()], &b[r.clone()], &mut out[r]);
        }
    }

    fn inverse(&self, a: &[u8]) -> Element {
        self.factors
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.inverse(&a[self.offsets[i]..self.offsets[i + 1]]))
            .collect()
    }

    fn describe(&self) -> String {
        self.factors.iter().map(|f| format!("({})", f.describe())).collect::<Vec<_>>().join(" x ")
    }
}

/// `G wr C_t`: base generators in the first coordinate plus the top `t`-cycle.
pub fn wreath_product(g: &GroupHandle, t: usize) -> GroupHandle {
    let alg = Arc::new(WreathAlgebra::new(g.algebra.clone(), t));
    let mut gens: Vec<Element> = g.generators.iter().map(|x| alg.in_coordinate(0, x)).collect();
    gens.push(alg.top_cycle());
    GroupHandle::new(alg, gens)
}

/// Direct product of the given groups.
pub fn direct_product(parts: &[GroupHandle]) -> GroupHandle {
    let alg = Arc::new(DirectProductAlgebra::new(parts.iter().map(|p| p.algebra.clone()).collect()));
    let gens = parts
        .iter()
        .enumerate()
        .flat_map(|(i, p)| p.generators.iter().map(|x| alg.inject(i, x)).collect::<Vec<_>>())
        .collect();
    GroupHandle::new(alg, gens)
}
