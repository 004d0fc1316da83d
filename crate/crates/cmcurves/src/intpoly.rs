//! Dense integer polynomials with exact i128 coefficients.
//!
//! Coefficients are stored least-significant first. Everything that could
//! overflow uses checked arithmetic and panics with a message rather than
//! wrapping; the polynomials here (curve equations, Weil polynomials up to
//! genus 7) stay comfortably inside i128.

use serde::{Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<i128>,
}

impl Serialize for IntPoly {
    /// Serialized as the coefficient list, least-significant first.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl IntPoly {
    /// Build from least-significant-first coefficients, trimming high zeros.
    pub fn new(coeffs: Vec<i128>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn constant(c: i128) -> Self {
        IntPoly::new(vec![c])
    }

    /// The monomial c·x^n.
    pub fn monomial(c: i128, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c;
        IntPoly::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn leading(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                self.coeff(i)
                    .checked_add(other.coeff(i))
                    .expect("IntPoly add overflow")
            })
            .collect();
        IntPoly::new(coeffs)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                self.coeff(i)
                    .checked_sub(other.coeff(i))
                    .expect("IntPoly sub overflow")
            })
            .collect();
        IntPoly::new(coeffs)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let prod = a.checked_mul(b).expect("IntPoly mul overflow");
                coeffs[i + j] = coeffs[i + j]
                    .checked_add(prod)
                    .expect("IntPoly mul overflow");
            }
        }
        IntPoly::new(coeffs)
    }

    pub fn scale(&self, c: i128) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|&a| a.checked_mul(c).expect("IntPoly scale overflow"))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::constant(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &a)| a.checked_mul((i + 1) as i128).expect("derivative overflow"))
                .collect(),
        )
    }

    /// Exact division; returns None when the remainder is nonzero or the
    /// division of a leading coefficient is inexact.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = divisor.degree().unwrap();
        let nd = self.degree().unwrap();
        if nd < dd {
            return None;
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i128; nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = rem[i + dd];
            if top % lead != 0 {
                return None;
            }
            let q = top / lead;
            quot[i] = q;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j]
                    .checked_sub(q.checked_mul(dc)?)
                    .expect("IntPoly div overflow");
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(IntPoly::new(quot))
    }
}

impl fmt::Display for IntPoly {
    /// Human form in the variable t, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.unsigned_abs();
            match i {
                0 => write!(f, "{a}")?,
                1 => {
                    if a == 1 {
                        write!(f, "t")?
                    } else {
                        write!(f, "{a}*t")?
                    }
                }
                _ => {
                    if a == 1 {
                        write!(f, "t^{i}")?
                    } else {
                        write!(f, "{a}*t^{i}")?
                    }
                }
            }
        }
        Ok(())
    }
}
