//! Exact computations on complete simplicial toric threefolds: lattice
//! polytopes, sheaf cohomology of torus-invariant divisors, positivity, the
//! hypothesis checks for maximal-codimension Noether-Lefschetz components,
//! weighted projective spaces, and determinantal curves over prime fields.

pub mod catalog;
pub mod cohomology;
pub mod detcurve;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod nl;
pub mod scalar;
pub mod toric;
pub mod wps;

pub use error::{Error, Result};
pub use scalar::{Field, Fp};

/// Exact rationals used for volumes, intersection numbers and homology ranks.
pub type Rational = num_rational::BigRational;
/// Small-coefficient rationals, enough for local 3x3 solves.
pub type SmallRational = num_rational::Ratio<i64>;
/// Lattice coordinates and divisor coefficients.
pub type Int = i64;
