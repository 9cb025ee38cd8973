//! Fans, toric threefolds and torus-invariant divisors.

pub mod fan;
pub mod variety;

pub use fan::Fan;
pub use variety::{validate_fan, DivisorClass, ToricThreefold, Verdict, WeilDivisor};
