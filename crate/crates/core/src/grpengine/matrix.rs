use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField};

use super::{Algebra, Element};

/// `n x n` matrices over a field of order at most 256, one byte per entry,
/// row-major. Row vectors, so `v * (AB) = (v * A) * B`.
///
/// With `projective` set every product is scaled to make its first nonzero
/// entry one, which identifies matrices differing by a scalar.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    field: Arc<FiniteField>,
    n: usize,
    q: usize,
    projective: bool,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl MatrixAlgebra {
    pub fn new(field: Arc<FiniteField>, n: usize, projective: bool) -> Result<Self> {
        let q = field.order() as usize;
        if q > 256 {
            return Err(Error::TooLarge(q as u64));
        }
        if n == 0 || n > 16 {
            return Err(Error::InvalidArgument(format!("matrix dimension {n} out of range")));
        }
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let (x, y) = (FieldElement(a as u32), FieldElement(b as u32));
                add[a * q + b] = field.add(x, y).0 as u8;
                mul[a * q + b] = field.mul(x, y).0 as u8;
            }
        }
        let neg = (0..q).map(|a| field.neg(FieldElement(a as u32)).0 as u8).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { field.inv(FieldElement(a as u32)).unwrap().0 as u8 })
            .collect();
        Ok(MatrixAlgebra { field, n, q, projective, add, mul, neg, inv })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    /// The same matrices without (or with) scalar normalization.
    pub fn with_projective(&self, projective: bool) -> Self {
        MatrixAlgebra { projective, ..self.clone() }
    }

    #[inline]
    fn fadd(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    fn fmul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn normalize(&self, m: &mut [u8]) {
        if let Some(&lead) = m.iter().find(|&&x| x != 0) {
            if lead != 1 {
                let s = self.inv[lead as usize];
                for x in m.iter_mut() {
                    *x = self.fmul(*x, s);
                }
            }
        }
    }

    pub fn from_rows(&self, rows: &[Vec<FieldElement>]) -> Result<Element> {
        if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::DimensionMismatch { expected: self.n, got: rows.len() });
        }
        let mut m: Element = rows.iter().flatten().map(|x| x.0 as u8).collect();
        if self.projective {
            self.normalize(&mut m);
        }
        Ok(m)
    }

    /// Entries given as small integers mapped into the prime field.
    pub fn from_ints(&self, rows: &[&[i64]]) -> Result<Element> {
        let rows: Vec<Vec<FieldElement>> =
            rows.iter().map(|r| r.iter().map(|&x| self.field.from_int(x)).collect()).collect();
        self.from_rows(&rows)
    }

    pub fn entry(&self, m: &[u8], i: usize, j: usize) -> FieldElement {
        FieldElement(m[i * self.n + j] as u32)
    }

    pub fn rows(&self, m: &[u8]) -> Vec<Vec<FieldElement>> {
        m.chunks(self.n).map(|r| r.iter().map(|&x| FieldElement(x as u32)).collect()).collect()
    }

    pub fn scalar(&self, c: FieldElement) -> Element {
        let mut m = vec![0u8; self.n * self.n];
        for i in 0..self.n {
            m[i * self.n + i] = c.0 as u8;
        }
        m
    }

    pub fn transpose(&self, m: &[u8]) -> Element {
        let n = self.n;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = m[i * n + j];
            }
        }
        out
    }

    pub fn map_entries(&self, m: &[u8], f: impl Fn(FieldElement) -> FieldElement) -> Element {
        let mut out: Element = m.iter().map(|&x| f(FieldElement(x as u32)).0 as u8).collect();
        if self.projective {
            self.normalize(&mut out);
        }
        out
    }

    /// Raw product without normalization.
    pub fn mul_raw(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        let n = self.n;
        out.fill(0);
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                let mrow = &self.mul[x as usize * self.q..(x as usize + 1) * self.q];
                let brow = &b[k * n..(k + 1) * n];
                for (o, &y) in row.iter_mut().zip(brow) {
                    *o = self.add[*o as usize * self.q + mrow[y as usize] as usize];
                }
            }
        }
    }

    /// Row reduction; returns (rank, determinant) of a square matrix.
    fn eliminate(&self, m: &[u8], rhs: Option<&mut Vec<u8>>) -> (usize, u8) {
        let n = self.n;
        let mut a = m.to_vec();
        let mut rhs = rhs;
        let mut det = 1u8;
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    a.swap(piv * n + j, rank * n + j);
                }
                if let Some(r) = rhs.as_deref_mut() {
                    for j in 0..n {
                        r.swap(piv * n + j, rank * n + j);
                    }
                }
                det = self.neg[det as usize];
            }
            let p = a[rank * n + col];
            det = self.fmul(det, p);
            let pinv = self.inv[p as usize];
            for j in 0..n {
                a[rank * n + j] = self.fmul(a[rank * n + j], pinv);
            }
            if let Some(r) = rhs.as_deref_mut() {
                for j in 0..n {
                    r[rank * n + j] = self.fmul(r[rank * n + j], pinv);
                }
            }
            for i in 0..n {
                if i == rank {
                    continue;
                }
                let f = a[i * n + col];
                if f == 0 {
                    continue;
                }
                let nf = self.neg[f as usize];
                for j in 0..n {
                    a[i * n + j] = self.fadd(a[i * n + j], self.fmul(nf, a[rank * n + j]));
                }
                if let Some(r) = rhs.as_deref_mut() {
                    for j in 0..n {
                        let t = self.fmul(nf, r[rank * n + j]);
                        r[i * n + j] = self.fadd(r[i * n + j], t);
                    }
                }
            }
            rank += 1;
        }
        (rank, if rank == n { det } else { 0 })
    }

    pub fn det(&self, m: &[u8]) -> FieldElement {
        FieldElement(self.eliminate(m, None).1 as u32)
    }

    pub fn rank(&self, m: &[u8]) -> usize {
        self.eliminate(m, None).0
    }

    /// `m - I` (not normalized).
    pub fn minus_identity(&self, m: &[u8]) -> Element {
        let n = self.n;
        let mut out = m.to_vec();
        for i in 0..n {
            out[i * n + i] = self.fadd(out[i * n + i], self.neg[1]);
        }
        out
    }

    pub fn is_invertible(&self, m: &[u8]) -> bool {
        self.eliminate(m, None).0 == self.n
    }

    /// Raw identity-scaled check: is `m` a scalar matrix?
    pub fn is_scalar(&self, m: &[u8]) -> bool {
        let n = self.n;
        let d = m[0];
        d != 0 && (0..n).all(|i| (0..n).all(|j| m[i * n + j] == if i == j { d } else { 0 }))
    }
}

impl Algebra for MatrixAlgebra {
    fn width(&self) -> usize {
        self.n * self.n
    }

    fn identity(&self) -> Element {
        self.scalar(self.field.one())
    }

    fn mul_into(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        self.mul_raw(a, b, out);
        if self.projective {
            self.normalize(out);
        }
    }

    fn inverse(&self, a: &[u8]) -> Element {
        let mut r = self.identity();
        let (rank, _) = self.eliminate(a, Some(&mut r));
        assert_eq!(rank, self.n, "inverse of a singular matrix");
        if self.projective {
            self.normalize(&mut r);
        }
        r
    }

    fn describe(&self) -> String {
        format!(
            "mat {} {} {}{}",
            self.n,
            self.field.p(),
            self.field.k(),
            if self.projective { " projective" } else { "" }
        )
    }
}
