//! Exact and certified computations in the eight Norton–Sakuma algebras.

pub mod algebra;
pub mod assoc;
pub mod automorphism;
pub mod catalog;
pub mod error;
pub mod expr;
pub mod idempotent;
pub mod linalg;
pub mod poly;
pub mod reference;
pub mod report;
pub mod scalar;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
