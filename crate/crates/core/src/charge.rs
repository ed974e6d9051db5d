//! Gauss sums of pre-metric groups and the central charge in `Q/8Z`.
//!
//! For a metric group the normalised Gauss sum
//! `sum_x exp(2 pi i q(x)) / sqrt(|A|)` is an 8th root of unity
//! `exp(2 pi i c / 8)`; the exponent `c` is the *additive charge*. The sum is
//! evaluated in `f64` and snapped back to exact data, with the tolerances
//! pinned in [`crate::tolerances`]; everything downstream of the snap is
//! exact rational arithmetic modulo 8.

use core::f64::consts::PI;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::qform::PreMetricGroup;
use crate::rational::format_rational;
use crate::tolerances::{EIGHTH_ROOT_TOL, GAUSS_MODULUS_TOL};

/// Minimal complex number for Gauss sums (keeps the crate `no_std`).
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Complex64 {
    pub re: f64,
    pub im: f64,
}

impl Complex64 {
    pub fn new(re: f64, im: f64) -> Self {
        Complex64 { re, im }
    }

    pub fn zero() -> Self {
        Complex64 { re: 0.0, im: 0.0 }
    }

    /// `exp(2 pi i t)` for `t` measured in turns.
    pub fn from_turns(t: f64) -> Self {
        let angle = 2.0 * PI * t;
        Complex64 {
            re: libm::cos(angle),
            im: libm::sin(angle),
        }
    }

    pub fn scale(self, s: f64) -> Complex64 {
        Complex64::new(self.re * s, self.im * s)
    }

    pub fn modulus(self) -> f64 {
        libm::hypot(self.re, self.im)
    }
}

impl core::ops::Add for Complex64 {
    type Output = Complex64;

    fn add(self, other: Complex64) -> Complex64 {
        Complex64::new(self.re + other.re, self.im + other.im)
    }
}

impl core::ops::Sub for Complex64 {
    type Output = Complex64;

    fn sub(self, other: Complex64) -> Complex64 {
        Complex64::new(self.re - other.re, self.im - other.im)
    }
}

/// Errors from charge evaluation.
#[derive(Clone, PartialEq, Debug)]
pub enum ChargeError {
    /// `|Gauss sum|` differs from `sqrt(|A|)`, which certifies degeneracy.
    Degenerate { modulus: f64, expected: f64 },
    /// The normalised Gauss sum is not close to any 8th root of unity.
    NotEighthRoot { re: f64, im: f64 },
}

impl fmt::Display for ChargeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChargeError::Degenerate { modulus, expected } => write!(
                f,
                "Gauss sum modulus {modulus} differs from sqrt(|A|) = {expected}: form is degenerate"
            ),
            ChargeError::NotEighthRoot { re, im } => write!(
                f,
                "normalised Gauss sum {re} + {im}i is not an 8th root of unity"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ChargeError {}

/// The unnormalised Gauss sum `sum_x exp(2 pi i q(x))`.
pub fn gauss_sum(pm: &PreMetricGroup) -> Complex64 {
    pm.q_values()
        .iter()
        .map(|q| Complex64::from_turns(q.to_f64()))
        .fold(Complex64::zero(), |acc, term| acc + term)
}

/// The multiplicative charge `gauss_sum / sqrt(|A|)`, certified to have
/// modulus one within [`GAUSS_MODULUS_TOL`] (relative); otherwise the form is
/// degenerate and an error is returned.
pub fn multiplicative_charge(pm: &PreMetricGroup) -> Result<Complex64, ChargeError> {
    let order = pm
        .group()
        .order()
        .to_f64()
        .expect("group order converts to f64");
    let expected = libm::sqrt(order);
    let sum = gauss_sum(pm);
    let modulus = sum.modulus();
    if (modulus - expected).abs() > GAUSS_MODULUS_TOL * expected {
        return Err(ChargeError::Degenerate { modulus, expected });
    }
    Ok(sum.scale(1.0 / expected))
}

/// The additive charge: the exponent `c` with
/// `multiplicative_charge = exp(2 pi i c / 8)`, recognised within
/// [`EIGHTH_ROOT_TOL`] (the 8th roots are more than 0.76 apart, so the snap
/// is unambiguous).
pub fn additive_charge(pm: &PreMetricGroup) -> Result<CentralCharge, ChargeError> {
    let xi = multiplicative_charge(pm)?;
    for k in 0..8 {
        let root = Complex64::from_turns(k as f64 / 8.0);
        if (xi - root).modulus() <= EIGHTH_ROOT_TOL {
            return Ok(CentralCharge::from_integer(k));
        }
    }
    Err(ChargeError::NotEighthRoot { re: xi.re, im: xi.im })
}

/// An element of `Q/8Z`, stored canonically in `[0, 8)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CentralCharge {
    value: BigRational,
}

impl CentralCharge {
    pub fn new(value: BigRational) -> Self {
        let eight = BigRational::from(BigInt::from(8));
        let reduced = &value - (&value / &eight).floor() * &eight;
        CentralCharge { value: reduced }
    }

    pub fn zero() -> Self {
        CentralCharge {
            value: BigRational::zero(),
        }
    }

    pub fn from_integer(k: i64) -> Self {
        CentralCharge::new(BigRational::from(BigInt::from(k)))
    }

    pub fn from_fraction(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Some(CentralCharge::new(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    /// Canonical representative in `[0, 8)`.
    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &CentralCharge) -> CentralCharge {
        CentralCharge::new(&self.value + &other.value)
    }

    pub fn sub(&self, other: &CentralCharge) -> CentralCharge {
        CentralCharge::new(&self.value - &other.value)
    }

    pub fn neg(&self) -> CentralCharge {
        CentralCharge::new(-self.value.clone())
    }

    pub fn scale(&self, k: i64) -> CentralCharge {
        CentralCharge::new(&self.value * BigRational::from(BigInt::from(k)))
    }

    /// Additive order in `Q/8Z`: the least `m >= 1` with `m * c = 0`, which
    /// for `c = n/d` in lowest terms is `8d / gcd(n, 8d)`.
    pub fn additive_order(&self) -> BigInt {
        use num_integer::Integer;
        let n = self.value.numer();
        let d = self.value.denom();
        let eight_d = d * 8;
        &eight_d / n.gcd(&eight_d)
    }
}

impl fmt::Display for CentralCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FiniteAbelianGroup;
    use crate::rational::QmodZ;

    fn cyclic_form(n: u64, num: i64, den: i64) -> PreMetricGroup {
        let g = FiniteAbelianGroup::new(&[n]).unwrap();
        PreMetricGroup::from_gram(g, &[QmodZ::new(num, den).unwrap()], &[]).unwrap()
    }

    #[test]
    fn small_cyclic_charges() {
        assert_eq!(additive_charge(&cyclic_form(2, 1, 4)).unwrap().to_string(), "1");
        assert_eq!(additive_charge(&cyclic_form(3, 1, 3)).unwrap().to_string(), "2");
        assert_eq!(additive_charge(&cyclic_form(4, 3, 8)).unwrap().to_string(), "3");
        assert_eq!(additive_charge(&cyclic_form(5, 1, 5)).unwrap().to_string(), "0");
        assert_eq!(additive_charge(&cyclic_form(5, 2, 5)).unwrap().to_string(), "4");
    }

    #[test]
    fn charge_is_additive_and_reverses() {
        let a = cyclic_form(2, 1, 4);
        let b = cyclic_form(3, 1, 3);
        let sum_charge = additive_charge(&a.direct_sum(&b)).unwrap();
        let want = additive_charge(&a)
            .unwrap()
            .add(&additive_charge(&b).unwrap());
        assert_eq!(sum_charge, want);
        let rev = additive_charge(&a.reverse()).unwrap();
        assert_eq!(rev, additive_charge(&a).unwrap().neg());
        assert_eq!(rev.to_string(), "7");
    }

    #[test]
    fn degenerate_form_is_rejected() {
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        let flat = PreMetricGroup::from_gram(g, &[QmodZ::zero()], &[]).unwrap();
        assert!(matches!(
            additive_charge(&flat),
            Err(ChargeError::Degenerate { .. })
        ));
    }

    #[test]
    fn charge_arithmetic_mod_eight() {
        let c = CentralCharge::from_fraction(3, 2).unwrap();
        assert_eq!(c.scale(7).to_string(), "5/2");
        assert_eq!(c.scale(16), CentralCharge::zero());
        assert_eq!(CentralCharge::from_integer(-1).to_string(), "7");
        // order of 3/2 in Q/8Z: 8*2/gcd(3,16) = 16
        assert_eq!(c.additive_order(), BigInt::from(16));
        assert_eq!(CentralCharge::from_integer(2).additive_order(), BigInt::from(4));
        assert_eq!(CentralCharge::zero().additive_order(), BigInt::from(1));
        let c_sl2_12 = CentralCharge::from_fraction(18, 7).unwrap();
        assert_eq!(c_sl2_12.additive_order(), BigInt::from(28));
    }
}
