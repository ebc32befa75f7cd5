//! Exact computations for the hit problem of the polynomial algebra
//! `P_k = F2[x_1, ..., x_k]` as a module over the mod-2 Steenrod algebra.

pub mod cache;
pub mod certificate;
pub mod criteria;
pub mod error;
pub mod genset;
pub mod kameko;
pub mod linalg;
pub mod monomial;
pub mod quotient;
pub mod steenrod;
pub mod tables;
pub mod weight;

pub use error::{Error, Result};
pub use monomial::{LinearSubstitution, Monomial, Polynomial};
pub use weight::WeightVector;
