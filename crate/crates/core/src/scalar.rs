//! Numeric fields used at evaluation points: exact rationals and
//! double-precision complex numbers.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Tolerance under which a complex value counts as zero.
pub const COMPLEX_EPS: f64 = 1e-12;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &BigRational) -> Self;
    fn conj(&self) -> Self;
    fn modulus(&self) -> f64;
    /// Exactly zero for rationals, below [`COMPLEX_EPS`] for floats.
    fn is_negligible(&self) -> bool;
    fn to_complex(&self) -> Complex64;
    /// `true` for exact fields.
    fn is_exact() -> bool;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn powi(&self, k: i64) -> Self {
        let base = if k < 0 { Self::one() / self.clone() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b.clone();
            }
            b = b.clone() * b;
            e >>= 1;
        }
        acc
    }

    /// Inverse, or `None` at zero.
    fn checked_inv(&self) -> Option<Self> {
        if self.is_negligible() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

impl Scalar for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn modulus(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for Complex64 {
    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn is_negligible(&self) -> bool {
        self.norm() < COMPLEX_EPS
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn is_exact() -> bool {
        false
    }
}

/// Parse `"p/q"`, `"p"` or a decimal like `"0.25"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches('-'), frac);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(n, d);
        return Some(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

/// Exact square root of a non-negative rational, if it is a square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers() {
        let two = rat(2, 1);
        assert_eq!(two.powi(-3), rat(1, 8));
        assert_eq!(two.powi(0), rat(1, 1));
        let z = Complex64::new(0.0, 1.0);
        assert!((z.powi(4) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-0.25"), Some(rat(-1, 4)));
        assert_eq!(parse_rational("7"), Some(rat(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
    }
}
