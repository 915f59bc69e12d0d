//! Graded Specht modules of cyclotomic quiver Hecke algebras of type A, the
//! Carter-Payne homomorphisms between them, and a brute-force intertwiner oracle.

pub mod carterpayne;
pub mod combinat;
pub mod error;
pub mod field;
pub mod homoracle;
pub mod int;
pub mod klr;
pub mod specht;

pub use combinat::{Multipartition, Node, ResidueData, RowIndex, Tableau};
pub use error::{Error, Result};
pub use int::Int;
pub use klr::{Gen, GeneratorWord, Perm};
pub use specht::{SpechtModule, Vector};
