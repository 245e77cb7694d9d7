//! Brute-force group machinery: element algebras, breadth-first
//! enumeration, element orders and exponents, wreath and semidirect
//! products.
//!
//! Every element is a fixed-width byte string whose meaning is given by an
//! [`Algebra`]. Products are always returned in canonical form, so byte
//! equality is group equality; a projective matrix algebra, for instance,
//! scales every product so that its first nonzero entry is one.

use std::fmt;
use std::sync::Arc;

mod enumerate;
mod matrix;
mod perm;
mod product;
mod semidirect;
mod textio;

pub use enumerate::{
    element_order, element_order_dividing, enumerate, enumerate_with, exponent, exponent_projective,
    projective_order, EnumOptions, EnumeratedGroup, DEFAULT_BUDGET,
};
pub use matrix::MatrixAlgebra;
pub use perm::{parse_cycles, PermAlgebra};
pub use product::{direct_product, wreath_product, DirectProductAlgebra, WreathAlgebra};
pub use semidirect::{semidirect_product, SemidirectAlgebra};
pub use textio::read_generators;

/// A group element in the byte encoding of its algebra.
pub type Element = Vec<u8>;

/// The multiplication rule for one family of byte-encoded elements.
pub trait Algebra: Send + Sync + fmt::Debug {
    /// Bytes per element.
    fn width(&self) -> usize;
    fn identity(&self) -> Element;
    /// `out = a * b`, canonical.
    fn mul_into(&self, a: &[u8], b: &[u8], out: &mut [u8]);
    fn inverse(&self, a: &[u8]) -> Element;
    fn describe(&self) -> String;

    fn mul(&self, a: &[u8], b: &[u8]) -> Element {
        let mut out = vec![0; self.width()];
        self.mul_into(a, b, &mut out);
        out
    }

    fn is_identity(&self, a: &[u8]) -> bool {
        a == self.identity().as_slice()
    }
}

/// Generators together with the algebra they live in.
#[derive(Clone, Debug)]
pub struct GroupHandle {
    pub algebra: Arc<dyn Algebra>,
    pub generators: Vec<Element>,
}

impl GroupHandle {
    pub fn new(algebra: Arc<dyn Algebra>, generators: Vec<Element>) -> Self {
        let generators = if generators.is_empty() { vec![algebra.identity()] } else { generators };
        debug_assert!(generators.iter().all(|g| g.len() == algebra.width()));
        GroupHandle { algebra, generators }
    }

    pub fn identity(&self) -> Element {
        self.algebra.identity()
    }

    pub fn mul(&self, a: &[u8], b: &[u8]) -> Element {
        self.algebra.mul(a, b)
    }

    pub fn inverse(&self, a: &[u8]) -> Element {
        self.algebra.inverse(a)
    }

    pub fn pow(&self, a: &[u8], mut e: u64) -> Element {
        let mut base = a.to_vec();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `x^y = y^-1 x y`.
    pub fn conj(&self, x: &[u8], y: &[u8]) -> Element {
        self.mul(&self.mul(&self.inverse(y), x), y)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(&self, x: &[u8], y: &[u8]) -> Element {
        self.mul(&self.mul(&self.inverse(x), &self.inverse(y)), &self.mul(x, y))
    }

    pub fn is_identity(&self, a: &[u8]) -> bool {
        self.algebra.is_identity(a)
    }

    pub fn order_of(&self, a: &[u8]) -> u64 {
        element_order(self.algebra.as_ref(), a)
    }

    /// Same algebra, different generators.
    pub fn with_generators(&self, generators: Vec<Element>) -> Self {
        GroupHandle::new(self.algebra.clone(), generators)
    }
}
