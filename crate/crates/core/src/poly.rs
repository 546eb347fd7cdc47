//! Univariate polynomials with rational coefficients.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::mat::Mat;
use crate::scalar::{format_rational, int};

/// Coefficients in ascending degree order, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// det(tI − M) via the Faddeev–LeVerrier recursion.
    pub fn charpoly(m: &Mat<BigRational>) -> Self {
        let n = m.n();
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = BigRational::one();
        let mut mk = Mat::<BigRational>::zeros(n);
        for k in 1..=n {
            mk = m.mul(&mk).add(&Mat::identity(n).scale(&c[n - k + 1]));
            let tr = m.mul(&mk).trace();
            c[n - k] = -tr / int(k as i64);
        }
        Poly::new(c)
    }

    /// Parses strings such as `"t^3 - t^2 + t - 1"` or `"t^3-2t^2+t"`.
    pub fn parse(s: &str) -> Option<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut coeffs: Vec<BigRational> = Vec::new();
        let mut i = 0;
        let bytes: Vec<char> = compact.chars().collect();
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '/') {
                i += 1;
            }
            let num: String = bytes[start..i].iter().collect();
            let mut coef = if num.is_empty() {
                BigRational::one()
            } else {
                crate::scalar::parse_rational(&num).ok()?
            };
            let mut deg = 0usize;
            if i < bytes.len() && bytes[i] == 't' {
                i += 1;
                deg = 1;
                if i < bytes.len() && bytes[i] == '^' {
                    i += 1;
                    let s2 = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    deg = bytes[s2..i].iter().collect::<String>().parse().ok()?;
                }
            } else if num.is_empty() {
                return None;
            }
            coef *= int(sign);
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, BigRational::zero());
            }
            coeffs[deg] += coef;
        }
        Some(Poly::new(coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || d == 0;
            if show_coeff {
                write!(f, "{}", format_rational(&a))?;
            }
            match d {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_companion() {
        let a0: Mat<BigRational> = Mat::from_i64_rows([[0, 0, -1], [1, 0, -1], [0, 1, -1]]);
        assert_eq!(a0.charpoly(), Poly::from_i64(&[1, 1, 1, 1]));
        assert_eq!(a0.charpoly().to_string(), "t^3 + t^2 + t + 1");
    }

    #[test]
    fn display_and_parse_agree() {
        for s in ["t^3 - t^2", "t^3 - 2t^2 + t", "t^3", "t^3 + t^2 + t", "t^3 - t^2 + t - 1"] {
            let p = Poly::parse(s).unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    #[test]
    fn charpoly_of_nilpotent_and_idempotent() {
        let e: Mat<BigRational> = Mat::unit(3, 0, 1);
        assert_eq!(e.charpoly().to_string(), "t^3");
        let p: Mat<BigRational> = Mat::unit(3, 1, 1);
        assert_eq!(p.charpoly().to_string(), "t^3 - t^2");
    }
}
