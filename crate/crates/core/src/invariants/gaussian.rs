//! Gaussian rationals Q(i).

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GaussQ {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussQ {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussQ { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussQ { re, im: BigRational::zero() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn i() -> Self {
        GaussQ::new(BigRational::zero(), crate::scalar::int(1))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussQ::new(self.re.clone(), -self.im.clone())
    }

    /// |z|².
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        GaussQ::new(&self.re * s, &self.im * s)
    }
}

impl Add for &GaussQ {
    type Output = GaussQ;
    fn add(self, o: &GaussQ) -> GaussQ {
        GaussQ::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussQ {
    type Output = GaussQ;
    fn sub(self, o: &GaussQ) -> GaussQ {
        GaussQ::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussQ {
    type Output = GaussQ;
    fn mul(self, o: &GaussQ) -> GaussQ {
        GaussQ::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ::new(-self.re.clone(), -self.im.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn i_squared() {
        let i = GaussQ::i();
        assert_eq!(&i * &i, GaussQ::real(int(-1)));
        assert_eq!((&i * &i.conj()).re, int(1));
        assert_eq!(GaussQ::new(int(3), int(4)).norm_sq(), int(25));
    }
}
