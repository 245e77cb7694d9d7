use std::sync::Arc;

use crate::error::{Error, Result};

use super::{enumerate_with, Algebra, Element, EnumOptions, EnumeratedGroup, GroupHandle};

/// `N : H` with `H` acting on the right of `N` by a table of automorphisms.
/// An element is the pair `(n, h)` of enumeration indices, four bytes each,
/// standing for the product `n h`, so
/// `(n1, h1)(n2, h2) = (n1 * n2^(h1^-1), h1 h2)`.
#[derive(Debug)]
pub struct SemidirectAlgebra {
    n: Arc<EnumeratedGroup>,
    h: Arc<EnumeratedGroup>,
    /// `act[h * |N| + i]` is the index of `N[i]^H[h]`.
    act: Vec<u32>,
    h_inv: Vec<u32>,
}

fn pack(n: usize, h: usize) -> Element {
    let mut out = Vec::with_capacity(8);
    out.extend_from_slice(&(n as u32).to_le_bytes());
    out.extend_from_slice(&(h as u32).to_le_bytes());
    out
}

fn unpack(x: &[u8]) -> (usize, usize) {
    let n = u32::from_le_bytes(x[..4].try_into().unwrap()) as usize;
    let h = u32::from_le_bytes(x[4..8].try_into().unwrap()) as usize;
    (n, h)
}

impl SemidirectAlgebra {
    pub fn normal(&self) -> &EnumeratedGroup {
        &self.n
    }

    pub fn complement(&self) -> &EnumeratedGroup {
        &self.h
    }

    /// Element `n h`; both must lie in the respective enumerated groups.
    pub fn from_parts(&self, n: &[u8], h: &[u8]) -> Result<Element> {
        let ni = self.n.index_of(n).ok_or_else(|| Error::InvalidArgument("not an element of N".into()))?;
        let hi = self.h.index_of(h).ok_or_else(|| Error::InvalidArgument("not an element of H".into()))?;
        Ok(pack(ni, hi))
    }

    pub fn parts(&self, x: &[u8]) -> (Element, Element) {
        let (n, h) = unpack(x);
        (self.n.element(n).to_vec(), self.h.element(h).to_vec())
    }

    fn act(&self, n: usize, h: usize) -> usize {
        self.act[h * self.n.order() + n] as usize
    }

    fn n_mul(&self, a: usize, b: usize) -> usize {
        let p = self.n.algebra().mul(self.n.element(a), self.n.element(b));
        self.n.index_of(&p).expect("N is closed")
    }

    fn h_mul(&self, a: usize, b: usize) -> usize {
        let p = self.h.algebra().mul(self.h.element(a), self.h.element(b));
        self.h.index_of(&p).expect("H is closed")
    }
}

impl Algebra for SemidirectAlgebra {
    fn width(&self) -> usize {
        8
    }

    fn identity(&self) -> Element {
        pack(0, 0)
    }

    fn mul_into(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        let (n1, h1) = unpack(a);
        let (n2, h2) = unpack(b);
        let moved = self.act(n2, self.h_inv[h1] as usize);
        out.copy_from_slice(&pack(self.n_mul(n1, moved), self.h_mul(h1, h2)));
    }

    fn inverse(&self, a: &[u8]) -> Element {
        // (n h)^-1 = h^-1 n^-1 = (n^-1)^h h^-1
        let (n, h) = unpack(a);
        let ninv = self.n.index_of(&self.n.algebra().inverse(self.n.element(n))).expect("N is closed");
        pack(self.act(ninv, h), self.h_inv[h] as usize)
    }

    fn describe(&self) -> String {
        format!("({}) : ({})", self.n.algebra().describe(), self.h.algebra().describe())
    }
}

/// Build `N : H` from generators of both and the right action `n^t` of each
/// generator `t` of `H` on elements of `N`.
///
/// Both groups are enumerated (within `cap` each). Every generator action
/// is checked to be an automorphism of `N`, and the induced action of `H` is
/// checked along every Cayley edge of `H`, so an action that does not define
/// a homomorphism `H -> Aut(N)` is rejected.
pub fn semidirect_product(
    n: &GroupHandle,
    h: &GroupHandle,
    action: impl Fn(&[u8], &[u8]) -> Element,
    cap: usize,
) -> Result<GroupHandle> {
    let opts = EnumOptions { cap, record_tree: true, ..Default::default() };
    let ng = enumerate_with(n, opts)?;
    let hg = enumerate_with(h, opts)?;
    let size = ng.order();
    let nalg = ng.algebra().clone();

    let mut gen_acts: Vec<Vec<u32>> = Vec::new();
    for (j, t) in h.generators.iter().enumerate() {
        let mut table = Vec::with_capacity(size);
        for x in ng.elements() {
            let y = action(x, t);
            let i = ng
                .index_of(&y)
                .ok_or_else(|| Error::ActionNotHomomorphic(format!("generator {j} of H moves an element out of N")))?;
            table.push(i as u32);
        }
        let mut seen = vec![false; size];
        for &i in &table {
            if std::mem::replace(&mut seen[i as usize], true) {
                return Err(Error::ActionNotHomomorphic(format!("generator {j} of H is not injective on N")));
            }
        }
        for (i, x) in ng.elements().enumerate() {
            for s in &n.generators {
                let xs = ng.index_of(&nalg.mul(x, s)).expect("N is closed");
                let lhs = table[xs] as usize;
                let rhs = nalg.mul(ng.element(table[i] as usize), ng.element(table[ng.index_of(s).unwrap()] as usize));
                if ng.element(lhs) != rhs.as_slice() {
                    return Err(Error::ActionNotHomomorphic(format!(
                        "generator {j} of H does not act as an automorphism of N"
                    )));
                }
            }
        }
        gen_acts.push(table);
    }

    // act[h] along the spanning tree: n^(p t) = (n^p)^t
    let mut act = vec![0u32; size * hg.order()];
    for (i, a) in act[..size].iter_mut().enumerate() {
        *a = i as u32;
    }
    for k in 1..hg.order() {
        let (p, j) = hg.parent(k).expect("tree recorded");
        for i in 0..size {
            act[k * size + i] = gen_acts[j][act[p * size + i] as usize];
        }
    }
    let halg = hg.algebra().clone();
    for k in 0..hg.order() {
        for (j, t) in h.generators.iter().enumerate() {
            let kt = hg.index_of(&halg.mul(hg.element(k), t)).expect("H is closed");
            for i in 0..size {
                if act[kt * size + i] != gen_acts[j][act[k * size + i] as usize] {
                    return Err(Error::ActionNotHomomorphic(
                        "the generator actions violate a relation of H".into(),
                    ));
                }
            }
        }
    }
    let h_inv = (0..hg.order())
        .map(|k| hg.index_of(&halg.inverse(hg.element(k))).expect("H is closed") as u32)
        .collect();

    let alg = Arc::new(SemidirectAlgebra { n: Arc::new(ng), h: Arc::new(hg), act, h_inv });
    let mut gens = Vec::new();
    for s in &n.generators {
        gens.push(pack(alg.n.index_of(s).unwrap(), 0));
    }
    for t in &h.generators {
        gens.push(pack(0, alg.h.index_of(t).unwrap()));
    }
    Ok(GroupHandle::new(alg, gens))
}
