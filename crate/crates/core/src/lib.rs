//! Exponents of finite simple groups.
//!
//! Closed-form `p`-parts of the exponents of symplectic, orthogonal, linear
//! and alternating groups; explicit Sylow constructions (wreath towers and
//! twisted wreath towers); a decision procedure for which finite simple
//! groups have a proper subgroup of the same exponent; and a brute-force
//! enumeration engine that checks all of it on groups of desk-top size.

pub mod classical;
pub mod classify;
pub mod error;
pub mod expfml;
pub mod gf;
pub mod grpengine;
pub mod numth;
pub mod sylowlab;

pub use error::{Error, Result};
pub use numth::FactoredInteger;
