//! Scalar modes: exact rationals and IEEE floats behind one trait.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type ExactScalar = BigRational;
/// 64-bit float scalar used by the numerical search.
pub type FloatScalar = f64;

/// Tag for the two scalar modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Exact,
    Float,
}

impl ScalarMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarMode::Exact => "exact",
            ScalarMode::Float => "float",
        }
    }
}

impl Display for ScalarMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Field element usable by the core containers.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + num_traits::Num
    + num_traits::Signed
    + std::ops::Neg<Output = Self>
{
    const MODE: ScalarMode;

    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// NaN and infinities are rejected at module boundaries.
    fn is_finite_value(&self) -> bool;
    /// Exact zero test for rationals, `== 0.0` for floats.
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for BigRational {
    const MODE: ScalarMode = ScalarMode::Exact;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_finite_value(&self) -> bool {
        true
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn from_i64(v: i64) -> Self {
        v as f32
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

/// Floating point scalar: f32 or f64.
pub trait Real: Scalar + num_traits::Float + FromPrimitive + Default {}
impl Real for f32 {}
impl Real for f64 {}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Writes an integer as `"3"` and a fraction as `"p/q"`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer in rational literal {0:?}")]
    BadInteger(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"-3"`, `"1/2"`, `"-4/6"` (the result is reduced).
pub fn parse_rational(s: &str) -> Result<BigRational, RationalParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(n).map_err(|_| RationalParseError::BadInteger(s.to_string()))?;
    let den = BigInt::from_str(d).map_err(|_| RationalParseError::BadInteger(s.to_string()))?;
    if den.is_zero() {
        return Err(RationalParseError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(num, den))
}

/// Nearest-value lookup used when rounding floats to an exact set.
pub fn exact_from_f64(v: f64) -> Option<BigRational> {
    BigRational::from_float(v)
}

pub fn abs_f64<S: Scalar>(s: &S) -> f64 {
    s.abs().to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(format_rational(&rat(-4, 6)), "-2/3");
        assert_eq!(format_rational(&int(7)), "7");
        assert!(matches!(
            parse_rational("1/0"),
            Err(RationalParseError::ZeroDenominator(_))
        ));
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_rational("3/-6").unwrap(), rat(-1, 2));
    }

    #[test]
    fn exact_arithmetic_cancels() {
        let a = rat(1, 3);
        let b = rat(7, 11);
        assert_eq!((a.clone() + b.clone()) - b, a);
    }

    #[test]
    fn modes() {
        assert_eq!(<BigRational as Scalar>::MODE, ScalarMode::Exact);
        assert_eq!(<f64 as Scalar>::MODE, ScalarMode::Float);
        assert!(!Scalar::is_finite_value(&f64::NAN));
    }
}
