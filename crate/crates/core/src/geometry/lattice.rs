use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vector of the rank-3 lattice `N` or of its dual `M`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub [i64; 3]);

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector([0, 0, 0]);

    pub fn new(x: i64, y: i64, z: i64) -> Self {
        LatticeVector([x, y, z])
    }

    pub fn coords(&self) -> [i64; 3] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn dot(&self, other: &LatticeVector) -> i64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn cross(&self, other: &LatticeVector) -> LatticeVector {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        LatticeVector([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn scale(&self, k: i64) -> LatticeVector {
        LatticeVector(self.0.map(|c| c * k))
    }

    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// The primitive vector on the ray through `self`.
    pub fn primitive(&self) -> Result<LatticeVector> {
        let g = self.content();
        if g == 0 {
            return Err(Error::ZeroVector);
        }
        Ok(LatticeVector(self.0.map(|c| c / g)))
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: Self) -> Self {
        LatticeVector([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: Self) -> Self {
        LatticeVector([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> Self {
        LatticeVector(self.0.map(|c| -c))
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl From<[i64; 3]> for LatticeVector {
    fn from(c: [i64; 3]) -> Self {
        LatticeVector(c)
    }
}

/// A point of `Q^3` stored as a common denominator over integer numerators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatPoint {
    num: [i128; 3],
    den: i128,
}

impl RatPoint {
    pub fn new(num: [i128; 3], den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = num.iter().fold(den.abs(), |g, &c| g.gcd(&c));
        RatPoint { num: num.map(|c| sign * c / g), den: den.abs() / g }
    }

    pub fn integral(v: LatticeVector) -> Self {
        RatPoint { num: v.0.map(i128::from), den: 1 }
    }

    pub fn numerators(&self) -> [i128; 3] {
        self.num
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn to_lattice(&self) -> Option<LatticeVector> {
        if self.den != 1 {
            return None;
        }
        let c: Vec<i64> = self.num.iter().map(|&x| i64::try_from(x).ok()).collect::<Option<_>>()?;
        Some(LatticeVector([c[0], c[1], c[2]]))
    }

    /// `den * <self, v>`, i.e. the numerator of the pairing over the point's denominator.
    pub fn scaled_dot(&self, v: &LatticeVector) -> i128 {
        self.num.iter().zip(v.0.iter()).map(|(a, &b)| a * i128::from(b)).sum()
    }

    pub fn floor(&self, axis: usize) -> i64 {
        Integer::div_floor(&self.num[axis], &self.den) as i64
    }

    pub fn ceil(&self, axis: usize) -> i64 {
        (-Integer::div_floor(&(-self.num[axis]), &self.den)) as i64
    }

    pub fn to_big(&self) -> [BigRational; 3] {
        self.num.map(|n| BigRational::new(BigInt::from(n), BigInt::from(self.den)))
    }
}

impl fmt::Debug for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "({}, {}, {})", self.num[0], self.num[1], self.num[2])
        } else {
            write!(f, "({}, {}, {})/{}", self.num[0], self.num[1], self.num[2], self.den)
        }
    }
}

/// Intersection of the three planes `<m, n_i> = c_i`, if they meet in a point.
pub fn intersect_planes(normals: [LatticeVector; 3], values: [i64; 3]) -> Option<RatPoint> {
    let [a, b, c] = normals;
    let det = i128::from(a.dot(&b.cross(&c)));
    if det == 0 {
        return None;
    }
    // m = (c1 (b x c) + c2 (c x a) + c3 (a x b)) / det
    let bc = b.cross(&c);
    let ca = c.cross(&a);
    let ab = a.cross(&b);
    let [v1, v2, v3] = values.map(i128::from);
    let mut num = [0i128; 3];
    for (k, slot) in num.iter_mut().enumerate() {
        *slot = v1 * i128::from(bc.0[k]) + v2 * i128::from(ca.0[k]) + v3 * i128::from(ab.0[k]);
    }
    Some(RatPoint::new(num, det))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_examples() {
        assert_eq!(LatticeVector::new(2, 4, 6).primitive().unwrap(), LatticeVector::new(1, 2, 3));
        assert_eq!(LatticeVector::new(0, 0, 5).primitive().unwrap(), LatticeVector::new(0, 0, 1));
        assert_eq!(LatticeVector::new(-2, 0, 2).primitive().unwrap(), LatticeVector::new(-1, 0, 1));
        assert_eq!(LatticeVector::ZERO.primitive(), Err(Error::ZeroVector));
        assert_eq!(Error::ZeroVector.to_string(), "zero vector has no primitive representative");
    }

    #[test]
    fn plane_intersection() {
        let p = intersect_planes(
            [LatticeVector::new(1, 0, 0), LatticeVector::new(0, 2, 0), LatticeVector::new(1, 1, 1)],
            [1, 1, 3],
        )
        .unwrap();
        assert_eq!(p, RatPoint::new([2, 1, 3], 2));
        assert_eq!(p.floor(1), 0);
        assert_eq!(p.ceil(1), 1);
        assert_eq!(p.ceil(0), 1);
    }
}
