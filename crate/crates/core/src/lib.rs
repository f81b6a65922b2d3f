//! Cup-i products and Steenrod squares of finite simplicial sets.
//!
//! The higher diagonal `D_n = AW (t SHI)^n Δ` is available two ways: as the
//! literal composition of Eilenberg–Zilber operators ([`diagonal::h_slow`]),
//! and as a closed formula using face operators only ([`diagonal::h_fast`]).
//! The first serves as an oracle for the second. Steenrod squares, cup-i
//! products and their action on mod-2 cohomology are built on the fast route.

pub mod bench;
pub mod chains;
pub mod cohomology;
pub mod contraction;
pub mod diagonal;
pub mod error;
pub mod ez;
pub mod io;
pub mod library;
pub mod reduced;
pub mod simplicial;
pub mod suite;

pub use chains::{Chain, Coefficient, Cochain, ProductChain, ProductSimplex, Tensor, TensorChain, Z2};
pub use error::{Error, Result};
pub use simplicial::{Counting, OperatorWord, SimplexRef, SimplicialObject, SimplicialSet, StandardSimplex};
