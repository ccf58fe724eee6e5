//! Rational self-maps of the projective line with rational coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bigfloat::BigComplex;
use crate::error::{Error, Result};
use crate::exactnum::Poly;
use crate::{QPoly, Rational};

/// `num / den` in lowest terms, scaled so that all coefficients are coprime
/// integers and the leading coefficient of `den` is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMap {
    num: QPoly,
    den: QPoly,
}

impl RationalMap {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        if num.degree().unwrap_or(0) == 0 && den.degree() == Some(0) {
            return Err(Error::Precondition("constant map".into()));
        }
        let (num, den) = primitive_pair(num, den);
        Ok(RationalMap { num, den })
    }

    /// Like `new` for a pair already known to be coprime.
    pub(crate) fn from_coprime(num: QPoly, den: QPoly) -> Self {
        debug_assert!(!den.is_zero());
        let (num, den) = primitive_pair(num, den);
        RationalMap { num, den }
    }

    /// Numerator with its (integral) coefficients as integers.
    pub fn int_num(&self) -> Poly<BigInt> {
        self.num.map(|c| c.to_integer())
    }

    pub fn int_den(&self) -> Poly<BigInt> {
        self.den.map(|c| c.to_integer())
    }

    pub fn polynomial(p: QPoly) -> Result<Self> {
        RationalMap::new(p, QPoly::one())
    }

    pub fn identity() -> Self {
        RationalMap { num: QPoly::x(), den: QPoly::one() }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// `phi(inf) = inf` exactly when the numerator has the larger degree.
    pub fn fixes_infinity(&self) -> bool {
        self.num.degree().unwrap_or(0) > self.den.degree().unwrap_or(0)
    }

    /// Exact value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Float value at a complex point; `None` at a pole.
    pub fn eval_complex(&self, x: &BigComplex) -> Option<BigComplex> {
        eval_poly_complex(&self.num, x).checked_div(&eval_poly_complex(&self.den, x))
    }

    pub fn pretty(&self) -> String {
        format!("({})/({})", self.num.pretty("x"), self.den.pretty("x"))
    }
}

/// Horner evaluation of a rational polynomial at a complex point.
pub fn eval_poly_complex(p: &QPoly, x: &BigComplex) -> BigComplex {
    let prec = x.prec();
    let mut acc = BigComplex::zero(prec);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * x) + &BigComplex::from_rational(c, prec);
    }
    acc
}

fn primitive_pair(num: QPoly, den: QPoly) -> (QPoly, QPoly) {
    let all = num.coeffs().iter().chain(den.coeffs());
    let lcm = all.clone().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let content = all.fold(BigInt::zero(), |g, c| g.gcd(&(c.numer() * (&lcm / c.denom()))));
    let mut scale = Rational::new(lcm, content);
    if den.leading().is_some_and(|l| l.is_negative()) {
        scale = -scale;
    }
    (num.scale(&scale), den.scale(&scale))
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}

impl FromStr for RationalMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected \"num_coeffs / den_coeffs\", got {s:?}")))?;
        let num: QPoly = n.trim().parse()?;
        let den: QPoly = d.trim().parse()?;
        RationalMap::new(num, den).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for RationalMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn normalizes_to_primitive_lowest_terms() {
        // (x^2 - 1) / (2x - 2) = (x + 1) / 2
        let m = RationalMap::new(p("-1,0,1"), p("-2,2")).unwrap();
        assert_eq!(m.to_string(), "1,1 / 2");
        let m = RationalMap::new(p("1/2,0,1/3"), p("0,-1")).unwrap();
        assert_eq!(m.to_string(), "-3,0,-2 / 0,6");
        assert_eq!(m.degree(), 2);
        assert!(m.fixes_infinity());
        assert!(RationalMap::new(p("2"), p("3")).is_err());
        assert!(RationalMap::new(p("0,1"), p("0")).is_err());
        assert!(RationalMap::new(p("0,1"), p("0,2")).is_err());
    }

    #[test]
    fn parse_and_eval() {
        let m: RationalMap = "1 / 0,1".parse().unwrap();
        assert!(!m.fixes_infinity());
        assert_eq!(m.eval(&Rational::from_integer(4.into())), Some(Rational::new(1.into(), 4.into())));
        assert_eq!(m.eval(&Rational::zero()), None);
        assert_eq!(m.to_string().parse::<RationalMap>().unwrap(), m);
        assert!("1,2".parse::<RationalMap>().is_err());
        assert!("a / 1".parse::<RationalMap>().unwrap_err().is_parse());
        let z = BigComplex::from_f64(0.0, 2.0, 128);
        assert_eq!(m.eval_complex(&z).unwrap().to_f64_pair(), [0.0, -0.5]);
        assert_eq!(m.pretty(), "(1)/(x)");
    }
}
