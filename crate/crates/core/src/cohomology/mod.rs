//! Cohomology, positivity and intersection numbers of torus-invariant divisors.

pub mod cache;
pub mod chamber;
pub mod intersection;
pub mod support;

pub use cache::CohomologyCache;
pub use chamber::{cohomology, euler_char, h0, CohomologyTable};
pub use intersection::triple_intersection;
pub use support::{
    is_ample, is_globally_generated, is_nef, section_polytope, sheaf_generated_by_sections, very_ampleness,
    SupportFunctionCertificate, VeryAmpleness,
};
