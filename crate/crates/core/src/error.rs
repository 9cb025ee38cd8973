use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("polyhedron unbounded")]
    Unbounded,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("facet {facet} references unknown vertex {vertex}")]
    UnknownVertex { facet: usize, vertex: usize },

    #[error("ray {index} {ray:?} is not primitive; use {suggestion:?} instead")]
    NonPrimitiveRay { index: usize, ray: [i64; 3], suggestion: [i64; 3] },
    #[error("rays {0} and {1} coincide")]
    DuplicateRay(usize, usize),
    #[error("cone {cone} references unknown ray {ray}")]
    UnknownRay { cone: usize, ray: usize },
    #[error("not simplicial: cone {cone} {rays:?} is not spanned by three independent rays")]
    NotSimplicial { cone: usize, rays: Vec<usize> },
    #[error("not complete: {detail}")]
    NotComplete { detail: String, cones: Vec<usize> },
    #[error("cones overlap badly: cones {0} and {1} do not meet in a common face")]
    BadOverlap(usize, usize),

    #[error("divisor has {got} coefficients but the fan has {expected} rays")]
    DivisorLength { expected: usize, got: usize },
    #[error("not Q-Cartier: {0}")]
    NotQCartier(String),
    #[error("not nef Cartier: {0}")]
    NotNefCartier(String),
    #[error("unbounded contributing chamber for negative ray set {0:?}")]
    UnboundedChamber(Vec<usize>),

    #[error("weights {weights:?} are not well-formed: gcd of {triple:?} is {gcd}")]
    NotWellFormed { weights: [i64; 4], triple: [i64; 3], gcd: i64 },
    #[error("weights must be positive, got {0:?}")]
    NonPositiveWeight([i64; 4]),
    #[error("unknown variety {0:?}")]
    UnknownVariety(String),
    #[error("max_weight must be at least 1")]
    EmptyScan,

    #[error("theorem1 check requires d >= 2, got {0}")]
    DegreeTooSmall(i64),
    #[error("d must be non-negative, got {0}")]
    NegativeDegree(i64),
    #[error("k >= 2 required, got {0}")]
    KTooSmall(i64),
    #[error("no sections: h^0 of {0:?} is zero")]
    NoSections(Vec<i64>),
    #[error("field size {0} must be a prime of at least 1000")]
    BadPrime(u64),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("stratum {0:?} has no free Cox coordinates to sample")]
    DegenerateStratum(Vec<usize>),

    #[error("cache I/O: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
