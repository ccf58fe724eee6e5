//! Arbitrary-precision complex numbers on top of MPFR floats.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Float;

use crate::Rational;

/// Smallest working precision accepted anywhere in the crate.
pub const MIN_PRECISION: u32 = 64;

/// Converts an exact rational to a float correctly rounded at `prec` bits.
pub fn float_from_rational(x: &Rational, prec: u32) -> Float {
    let n: rug::Integer = x.numer().to_string().parse().expect("BigInt prints as an integer");
    let d: rug::Integer = x.denom().to_string().parse().expect("BigInt prints as an integer");
    Float::with_val(prec, rug::Rational::from((n, d)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_rational(x: &Rational, prec: u32) -> Self {
        BigComplex { re: float_from_rational(x, prec), im: Float::new(prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `None` when dividing by zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let prec = self.prec().max(rhs.prec());
        let den = Float::with_val(prec, rhs.re.clone().square() + rhs.im.clone().square());
        let num = self * &rhs.conj();
        Some(BigComplex { re: Float::with_val(prec, &num.re / &den), im: Float::with_val(prec, &num.im / &den) })
    }

    /// Principal square root, with the branch cut on the negative real axis.
    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        if self.is_zero() {
            return BigComplex::zero(prec);
        }
        let r = self.abs();
        let t = Float::with_val(prec, (r + self.re.clone().abs()) / 2u32).sqrt();
        let other = Float::with_val(prec, self.im.clone().abs() / (Float::with_val(prec, &t * 2u32)));
        let negative_im = self.im.is_sign_negative();
        if !self.re.is_sign_negative() {
            let im = if negative_im { -other } else { other };
            BigComplex { re: t, im }
        } else {
            let im = if negative_im { -t } else { t };
            BigComplex { re: other, im }
        }
    }

    pub fn to_f64_pair(&self) -> [f64; 2] {
        [self.re.to_f64(), self.im.to_f64()]
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        let prec = self.prec().max(rhs.prec());
        BigComplex { re: Float::with_val(prec, &self.re + &rhs.re), im: Float::with_val(prec, &self.im + &rhs.im) }
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        let prec = self.prec().max(rhs.prec());
        BigComplex { re: Float::with_val(prec, &self.re - &rhs.re), im: Float::with_val(prec, &self.im - &rhs.im) }
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        let prec = self.prec().max(rhs.prec());
        let re = Float::with_val(prec, &self.re * &rhs.re) - Float::with_val(prec, &self.im * &rhs.im);
        let im = Float::with_val(prec, &self.re * &rhs.im) + Float::with_val(prec, &self.im * &rhs.re);
        BigComplex { re, im }
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [re, im] = self.to_f64_pair();
        if im < 0.0 {
            write!(f, "{re}-{}i", -im)
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}
