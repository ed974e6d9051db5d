//! Rational numbers modulo 1, the value group of quadratic forms on finite
//! abelian groups.

use alloc::string::ToString;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// An element of `Q/Z`, stored as the canonical representative in `[0, 1)`.
///
/// The reduced representative makes equality, ordering, and use as a map key
/// structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct QmodZ {
    frac: BigRational,
}

impl QmodZ {
    pub fn zero() -> Self {
        QmodZ {
            frac: BigRational::zero(),
        }
    }

    /// Builds `num/den mod 1`. Returns `None` when `den == 0`.
    pub fn new(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Some(Self::from_rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    /// Reduces an arbitrary rational modulo 1.
    pub fn from_rational(r: BigRational) -> Self {
        let f = r.floor();
        QmodZ { frac: r - f }
    }

    pub fn is_zero(&self) -> bool {
        self.frac.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_rational(&self.frac + &other.frac)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_rational(&self.frac - &other.frac)
    }

    pub fn neg(&self) -> Self {
        Self::from_rational(-self.frac.clone())
    }

    /// Integer multiple `k * self`.
    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_rational(&self.frac * BigRational::from(k.clone()))
    }

    pub fn scale_u64(&self, k: u64) -> Self {
        self.scale(&BigInt::from(k))
    }

    /// The representative in `[0, 1)` as an exact rational.
    pub fn representative(&self) -> &BigRational {
        &self.frac
    }

    pub fn to_f64(&self) -> f64 {
        // Denominators stay desk-sized, so the conversion is faithful well
        // below the tolerances in `tolerances`.
        self.frac.to_f64().expect("finite rational")
    }

    /// Smallest `n >= 1` with `n * self == 0`, i.e. the denominator of the
    /// reduced representative.
    pub fn additive_order(&self) -> BigInt {
        self.frac.denom().abs()
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.frac.is_zero() {
            write!(f, "0")
        } else if self.frac.denom() == &BigInt::from(1) {
            write!(f, "{}", self.frac.numer())
        } else {
            write!(f, "{}/{}", self.frac.numer(), self.frac.denom())
        }
    }
}

impl From<QmodZ> for BigRational {
    fn from(v: QmodZ) -> BigRational {
        v.frac
    }
}

/// Formats a rational as `p/q` (or a bare integer). Shared by charge and
/// report rendering.
pub fn format_rational(r: &BigRational) -> alloc::string::String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_range() {
        let v = QmodZ::new(9, 8).unwrap();
        assert_eq!(v.to_string(), "1/8");
        let w = QmodZ::new(-1, 4).unwrap();
        assert_eq!(w.to_string(), "3/4");
        assert!(QmodZ::new(1, 0).is_none());
    }

    #[test]
    fn arithmetic_wraps() {
        let a = QmodZ::new(3, 4).unwrap();
        let b = QmodZ::new(1, 2).unwrap();
        assert_eq!(a.add(&b).to_string(), "1/4");
        assert_eq!(a.neg().to_string(), "1/4");
        assert_eq!(a.scale_u64(4).to_string(), "0");
        assert_eq!(a.additive_order(), BigInt::from(4));
    }
}
