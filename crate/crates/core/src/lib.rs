//! A Clifford-algebra computer-algebra kernel over pluggable coefficient
//! rings: exact rationals, multivariate rational functions with constrained
//! symbols, and binary64 floats.
//!
//! The algebra layer works in Cl(B) for an arbitrary (possibly degenerate,
//! possibly non-symmetric) bilinear form B, on top of which sit the
//! deformation check relating Cl(B) to Cl(g), Hecke-algebra q-Young
//! operators, spinor-representation SVD, and Pin/Spin/rigid-motion geometry.

pub mod algebra;
pub mod error;
pub mod groups;
pub mod hecke;
pub mod helmstetter;
pub mod json;
pub mod linalg;
pub mod scalar;
pub mod solve;
pub mod spinor;
pub mod svd;

pub use error::{Error, Result};
