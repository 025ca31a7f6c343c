//! Computational toolkit for matrix factorizations over truncated
//! hypersurface rings: stable Hom, decomposition, and finitely presented
//! functors on small windows of indecomposables.

pub mod catalog;
pub mod decomp;
pub mod error;
pub mod field;
pub mod funcat;
pub mod homology;
pub mod poly;
pub mod linalg;
pub mod matfac;
pub mod ring;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use poly::{Monomial, Poly};
pub use ring::{make_ring, Hypersurface, RingElem, RingRef, TruncRing};
