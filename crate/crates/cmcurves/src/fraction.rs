//! Reduced non-negative fractions, used for Newton-polygon slopes.

use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

use crate::arith::gcd;

/// A fraction num/den in lowest terms with den ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "fraction with zero denominator");
        let g = gcd(num, den);
        if g == 0 {
            return Fraction { num: 0, den: 1 };
        }
        Fraction {
            num: num / g,
            den: den / g,
        }
    }

    pub fn zero() -> Self {
        Fraction { num: 0, den: 1 }
    }

    pub fn one() -> Self {
        Fraction { num: 1, den: 1 }
    }

    pub fn half() -> Self {
        Fraction { num: 1, den: 2 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// 1 − self; only valid for fractions in [0, 1].
    pub fn complement(&self) -> Fraction {
        assert!(self.num <= self.den);
        Fraction::new(self.den - self.num, self.den)
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        ((self.num as u128) * (other.den as u128)).cmp(&((other.num as u128) * (self.den as u128)))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_order() {
        assert_eq!(Fraction::new(2, 4), Fraction::half());
        assert!(Fraction::zero() < Fraction::half());
        assert!(Fraction::half() < Fraction::one());
        assert_eq!(Fraction::new(3, 6).complement(), Fraction::half());
        assert_eq!(Fraction::new(1, 3).complement(), Fraction::new(2, 3));
    }
}
