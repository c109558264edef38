//! Rational functions in q in a canonical reduced form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::qseries::qpoly::poly_gcd;
use crate::qseries::QPolynomial;

/// numerator/denominator with gcd 1 (including integer content), positive
/// leading coefficient in the denominator, and zero stored as 0/1. Equal
/// values therefore have identical representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRational {
    num: QPolynomial,
    den: QPolynomial,
}

impl QRational {
    pub fn new(num: QPolynomial, den: QPolynomial) -> Result<QRational> {
        if den.is_zero() {
            return Err(Error::input("zero denominator"));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: QPolynomial, den: QPolynomial) -> QRational {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return QRational { num, den: QPolynomial::one() };
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        QRational { num, den }
    }

    pub fn zero() -> QRational {
        QRational { num: QPolynomial::zero(), den: QPolynomial::one() }
    }

    pub fn one() -> QRational {
        QRational { num: QPolynomial::one(), den: QPolynomial::one() }
    }

    pub fn from_poly(p: QPolynomial) -> QRational {
        QRational { num: p, den: QPolynomial::one() }
    }

    pub fn from_int(n: i64) -> QRational {
        QRational::from_poly(QPolynomial::from_int(n))
    }

    /// The constant `n/d` (`d != 0`).
    pub fn from_ratio(n: i64, d: i64) -> QRational {
        assert!(d != 0, "zero denominator");
        Self::reduced(QPolynomial::from_int(n), QPolynomial::from_int(d))
    }

    pub fn numerator(&self) -> &QPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &QPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some` exactly when the denominator reduced to 1.
    pub fn to_polynomial(&self) -> Option<QPolynomial> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &QRational) -> QRational {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::reduced(num, den)
    }

    pub fn sub(&self, other: &QRational) -> QRational {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QRational {
        QRational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &QRational) -> QRational {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_poly(&self, p: &QPolynomial) -> QRational {
        Self::reduced(self.num.mul(p), self.den.clone())
    }

    pub fn scale_int(&self, c: &BigInt) -> QRational {
        Self::reduced(self.num.scale(c), self.den.clone())
    }

    /// Substitutes `q -> q^d`. Coprimality and the sign normalization are
    /// preserved by the substitution, so no re-reduction is needed.
    pub fn substitute_q_power(&self, d: u32) -> QRational {
        QRational {
            num: self.num.substitute_q_power(d),
            den: self.den.substitute_q_power(d),
        }
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
