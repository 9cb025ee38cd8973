//! Scalar abstractions shared by the exact linear algebra.
//!
//! Everything that eliminates (determinants, ranks, 3x3 solves) is written
//! once against [`Field`] and instantiated for the rationals (homology ranks,
//! vertex coordinates, volumes) and for prime fields (section matrices).

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// An exact field: every nonzero element is invertible and equality is exact.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Field for Ratio<T> where T: Clone + Debug + Integer + Neg<Output = T> {}

/// Element of the prime field `Z/pZ`.
///
/// The modulus travels with the value so that the prime can be chosen at run
/// time. `Fp::zero()` and `Fp::one()` carry modulus 0, meaning "not yet bound";
/// they adopt the modulus of whatever they are combined with.
#[derive(Clone, Copy)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus > 1, "field modulus must exceed 1");
        Fp { value: value % modulus, modulus }
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        assert!(modulus > 1, "field modulus must exceed 1");
        let m = modulus as i128;
        Fp { value: (value as i128).rem_euclid(m) as u64, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn join(a: u64, b: u64) -> u64 {
        match (a, b) {
            (0, m) | (m, 0) => m,
            (m, n) => {
                assert_eq!(m, n, "mixing elements of different prime fields");
                m
            }
        }
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Fp { value: 1, modulus: self.modulus };
        if self.modulus == 0 {
            // unbound 0 or 1
            return if exp == 0 { acc } else { self };
        }
        acc.value %= self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        if self.modulus == 0 {
            return Some(self);
        }
        Some(self.pow(self.modulus - 2))
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        Fp::join(self.modulus, other.modulus);
        self.value == other.value
    }
}

impl Eq for Fp {}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.modulus, rhs.modulus);
        if m == 0 {
            // only reachable for unbound constants 0/1; 1 + 1 has no home
            assert!(self.value + rhs.value <= 1, "unbound Fp arithmetic");
            return Fp { value: self.value + rhs.value, modulus: 0 };
        }
        let v = (self.value as u128 + rhs.value as u128) % m as u128;
        Fp { value: v as u64, modulus: m }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.modulus, rhs.modulus);
        if m == 0 {
            assert!(self.value >= rhs.value, "unbound Fp arithmetic");
            return Fp { value: self.value - rhs.value, modulus: 0 };
        }
        let v = (self.value as u128 + m as u128 - rhs.value as u128) % m as u128;
        Fp { value: v as u64, modulus: m }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.value == 0 {
            return self;
        }
        assert!(self.modulus != 0, "unbound Fp arithmetic");
        Fp { value: self.modulus - self.value, modulus: self.modulus }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.modulus, rhs.modulus);
        if m == 0 {
            return Fp { value: self.value * rhs.value, modulus: 0 };
        }
        let v = (self.value as u128 * rhs.value as u128) % m as u128;
        Fp { value: v as u64, modulus: m }
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp) -> Fp {
        let inv = rhs.inverse().expect("division by zero in Fp");
        self * inv
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { value: 0, modulus: 0 }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { value: 1, modulus: 0 }
    }
}

impl Field for Fp {}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small_prime() {
        let p = 101;
        for a in 1..p {
            let x = Fp::new(a, p);
            assert_eq!(x * x.inverse().unwrap(), Fp::new(1, p));
            assert_eq!(x - x, Fp::new(0, p));
        }
    }

    #[test]
    fn unbound_constants_adopt_modulus() {
        let x = Fp::new(5, 7);
        assert_eq!(Fp::one() * x, x);
        assert_eq!(Fp::zero() + x, x);
        assert_eq!((x - Fp::one()).value(), 4);
        assert_eq!(Fp::from_i64(-1, 7).value(), 6);
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(10007));
        assert!(!is_prime(10001));
        assert!(is_prime(1_000_000_007));
    }
}
