//! Exact rational scalars.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// A rational number in lowest terms with positive denominator.
///
/// Thin wrapper over [`BigRational`], which already maintains the canonical
/// form `gcd(|numerator|, denominator) = 1`, `denominator >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(pub BigRational);

impl ExactRational {
    pub fn new(numerator: BigInt, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::domain("rational with zero denominator"));
        }
        Ok(ExactRational(BigRational::new(numerator, denominator)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn neg(&self) -> Self {
        ExactRational(-self.0.clone())
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("reciprocal of zero"));
        }
        Ok(ExactRational(self.0.recip()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        ExactRational(&self.0 + &rhs.0)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        ExactRational(&self.0 - &rhs.0)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        ExactRational(&self.0 * &rhs.0)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(ExactRational(&self.0 / &rhs.0))
    }

    /// p-adic valuation: `v_p(num) - v_p(den)`. Errors on zero.
    pub fn valuation(&self, p: &BigUint) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::domain("p-adic valuation of zero"));
        }
        Ok(int_valuation(self.numer(), p) - int_valuation(self.denom(), p))
    }

    /// `log |self|` in f64, for display and numeric assembly.
    pub fn log_abs(&self) -> f64 {
        // ln(num) - ln(den) via bit-length-safe conversion.
        big_ln_abs(self.numer()) - big_ln_abs(self.denom())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

/// Multiplicity of the prime `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: &BigUint) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p.clone());
    let mut n = n.abs();
    let mut v = 0i64;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// `ln |n|` accurate for integers too large for f64.
pub fn big_ln_abs(n: &BigInt) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (_, digits) = n.to_u64_digits();
    let bits = n.bits();
    if bits <= 52 {
        return (n.abs().to_f64().unwrap()).ln();
    }
    // take the top 128 bits as a float and add the discarded exponent
    let top = digits.last().copied().unwrap_or(0);
    let second = if digits.len() >= 2 {
        digits[digits.len() - 2]
    } else {
        0
    };
    let mantissa = top as f64 * 2f64.powi(64) + second as f64;
    let shift = (digits.len().saturating_sub(2)) as f64 * 64.0;
    mantissa.ln() + shift * std::f64::consts::LN_2
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_int(n)
    }
}

impl From<Sign> for ExactRational {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Minus => ExactRational::from_int(-1),
            Sign::NoSign => ExactRational::zero(),
            Sign::Plus => ExactRational::one(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let q = ExactRational::new(BigInt::from(4), BigInt::from(-6)).unwrap();
        assert_eq!(q.numer(), &BigInt::from(-2));
        assert_eq!(q.denom(), &BigInt::from(3));
    }

    #[test]
    fn valuation_of_rational() {
        let q = ExactRational::new(BigInt::from(12), BigInt::from(25)).unwrap();
        assert_eq!(q.valuation(&BigUint::from(2u32)).unwrap(), 2);
        assert_eq!(q.valuation(&BigUint::from(5u32)).unwrap(), -2);
        assert_eq!(q.valuation(&BigUint::from(7u32)).unwrap(), 0);
    }

    #[test]
    fn big_log_matches_f64_for_small() {
        let n = BigInt::from(12345);
        assert!((big_ln_abs(&n) - 12345f64.ln()).abs() < 1e-12);
        // 2^200: ln = 200 ln 2
        let big = BigInt::from(1) << 200;
        assert!((big_ln_abs(&big) - 200.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }
}
