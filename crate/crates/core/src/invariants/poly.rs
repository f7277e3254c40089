//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient `i` multiplies `t^i`. Trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients and no degree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntegerPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `1 + sign * t^w`.
    pub fn binomial(w: u64, sign: i64) -> Self {
        let w = usize::try_from(w).expect("degree fits in memory");
        let mut coeffs = vec![BigInt::zero(); w + 1];
        coeffs[0] += 1;
        coeffs[w] += sign;
        Self::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Smallest degree with a non-zero coefficient.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        IntegerPolynomial {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Long division by a divisor whose leading coefficient is `±1`, so the
    /// quotient stays integral. Returns `(quotient, remainder)` with
    /// `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::NonUnitDivisor)?;
        if !lead.abs().is_one() {
            return Err(Error::NonUnitDivisor);
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }
}

impl Add for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn add(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        IntegerPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn sub(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntegerPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn mul(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntegerPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntegerPolynomial::from_coeffs(coeffs)
    }
}

impl Neg for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn neg(self) -> IntegerPolynomial {
        IntegerPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64s(c)
    }

    #[test]
    fn trims_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[0]).is_zero());
        assert_eq!(IntegerPolynomial::binomial(3, -1), p(&[1, 0, 0, -1]));
        assert_eq!(p(&[0, 0, 5]).lowest_degree(), Some(2));
    }

    #[test]
    fn arithmetic() {
        // (1 + t)(1 - t) = 1 - t^2
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(&p(&[1, 2, 3]) + &p(&[0, -2, -3]), p(&[1]));
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), IntegerPolynomial::zero());
        assert_eq!(-&p(&[1, -2]), p(&[-1, 2]));
        assert_eq!(p(&[1, 2]).scale(&BigInt::from(-3)), p(&[-3, -6]));
    }

    #[test]
    fn long_division() {
        // t^3 - 1 = (t - 1)(t^2 + t + 1)
        let (q, r) = p(&[-1, 0, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        // 2t^2 + 3 = (1 - t^2)(-2) + 5
        let (q, r) = p(&[3, 0, 2]).div_rem(&p(&[1, 0, -1])).unwrap();
        assert_eq!(q, p(&[-2]));
        assert_eq!(r, p(&[5]));
        assert_eq!(
            p(&[1]).div_rem(&p(&[2, 1])).unwrap(),
            (IntegerPolynomial::zero(), p(&[1]))
        );
        assert_eq!(p(&[1, 1]).div_rem(&p(&[1, 2])), Err(Error::NonUnitDivisor));
        assert_eq!(
            p(&[1, 1]).div_rem(&IntegerPolynomial::zero()),
            Err(Error::NonUnitDivisor)
        );
    }

    #[test]
    fn coefficients_grow_past_machine_words() {
        let mut acc = IntegerPolynomial::one();
        let f = IntegerPolynomial::binomial(1, 1);
        for _ in 0..80 {
            acc = &acc * &f;
        }
        // C(80, 40) > 2^64
        assert!(acc.coeff(40) > BigInt::from(u64::MAX));
        assert_eq!(acc.coeff(80), BigInt::one());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 0, 3]).to_string(), "1 - t + 3*t^3");
        assert_eq!(IntegerPolynomial::zero().to_string(), "0");
    }
}
