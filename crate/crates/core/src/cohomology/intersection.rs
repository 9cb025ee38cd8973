use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::support::{is_nef, section_polytope, SupportFunctionCertificate};
use crate::error::{Error, Result};
use crate::toric::{ToricThreefold, WeilDivisor};

/// `D1 . D2 . D3` for nef Cartier divisors, as the mixed volume of their
/// section polytopes:
/// `6 MV = sum over nonempty S of (-1)^(3-|S|) vol_norm(sum_{i in S} P_i)`.
pub fn triple_intersection(
    x: &ToricThreefold,
    d1: &WeilDivisor,
    d2: &WeilDivisor,
    d3: &WeilDivisor,
) -> Result<BigRational> {
    let ds = [d1, d2, d3];
    for (i, d) in ds.iter().enumerate() {
        let cert = SupportFunctionCertificate::new(x, d)?;
        if !cert.is_cartier() {
            return Err(Error::NotNefCartier(format!("argument {} {:?} is not Cartier", i + 1, d)));
        }
        let nef = is_nef(x, d)?;
        if !nef.holds {
            return Err(Error::NotNefCartier(format!("argument {} {:?} is not nef: {}", i + 1, d, nef.detail)));
        }
    }
    let mut total = BigRational::zero();
    for mask in 1u8..8 {
        let mut sum = WeilDivisor::zero(x.ray_count());
        for (i, d) in ds.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum = &sum + d;
            }
        }
        // support functions of nef divisors add, so P_{sum} is the Minkowski sum
        let vol = section_polytope(x, &sum)?.normalized_volume()?;
        let sign = if (3 - mask.count_ones()) % 2 == 0 { 1 } else { -1 };
        total += vol * BigRational::from_integer(BigInt::from(sign));
    }
    Ok(total / BigRational::from_integer(BigInt::from(6)))
}
