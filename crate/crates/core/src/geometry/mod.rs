//! Exact lattice geometry in dimension three.

pub mod complex;
pub mod fm;
pub mod lattice;
pub mod polyhedron;

pub use complex::{ReducedBetti, SimplicialComplex};
pub use lattice::{LatticeVector, RatPoint};
pub use polyhedron::{HalfSpace, RationalPolyhedron};
