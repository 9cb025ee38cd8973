//! Determinantal curves: degeneracy loci of random `k x (k-1)` matrices of
//! sections of `O(H)`, checked over a prime field.
//!
//! Only avoidance of the singular locus at sampled points is verified.
//! Smoothness and irreducibility of the curve are not.

pub mod avoidance;
pub mod basis;
pub mod invariants;
pub mod matrix;

pub use avoidance::{adversarial_detected, check_avoidance, AvoidanceVerdict, FailPoint, StratumRecord};
pub use basis::{section_basis, SectionBasis};
pub use invariants::{curve_invariants, determinantal_check, preset_parameters, CurveInvariants, Preset};
pub use matrix::{laplace_consistent, minor_values, SectionMatrix};
