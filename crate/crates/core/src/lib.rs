//! Finite lattices, posets and torsion classes of finite-dimensional
//! algebras over prime fields, with the Catalan families that connect them.

pub mod algebra;
pub mod bits;
pub mod catalan;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod poset;
pub mod torsion;

pub use bits::BitSet;
pub use error::{Error, Result};
pub use lattice::FinLattice;
pub use linalg::{Fp, Matrix, Subspace};
pub use poset::Poset;
