//! Elliptic curves `y^2 = x^3 + a x^2 + b x + c` over Q and the Lattès map
//! induced by doubling.

use std::fmt;
use std::str::FromStr;

use rug::Float;
use serde::Serialize;

use crate::bigfloat::{BigComplex, MIN_PRECISION};
use crate::error::{Error, Result};
use crate::exactnum::parse_rational;
use crate::ratmap::{eval_poly_complex, RationalMap};
use crate::{rat, QPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EllipticCurve {
    a: Rational,
    b: Rational,
    c: Rational,
    cm_d: Option<u64>,
}

impl EllipticCurve {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let curve = EllipticCurve { a, b, c, cm_d: None };
        let f = curve.cubic();
        if f.gcd(&f.derivative()).degree() != Some(0) {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        EllipticCurve::new(rat(a), rat(b), rat(c))
    }

    /// Records that the curve has complex multiplication by `sqrt(-d)`.
    pub fn with_cm(mut self, d: u64) -> Self {
        self.cm_d = Some(d);
        self
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn cm_d(&self) -> Option<u64> {
        self.cm_d
    }

    /// `x^3 + a x^2 + b x + c`.
    pub fn cubic(&self) -> QPoly {
        QPoly::new(vec![self.c.clone(), self.b.clone(), self.a.clone(), Rational::from_integer(1.into())])
    }

    /// x-coordinate of `2P` as a function of the x-coordinate of `P`:
    /// `(x^4 - 2b x^2 - 8c x + b^2 - 4ac) / (4 (x^3 + a x^2 + b x + c))`.
    pub fn duplication_map(&self) -> RationalMap {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let r = |n: i64| Rational::from_integer(n.into());
        let num = QPoly::new(vec![b * b - r(4) * a * c, -(r(8) * c), -(r(2) * b), r(0), r(1)]);
        let den = self.cubic().scale(&r(4));
        RationalMap::new(num, den).expect("non-singular curve gives a degree-4 map")
    }

    /// Principal square root of the cubic at `x`.
    pub fn lift_y(&self, x: &BigComplex) -> BigComplex {
        eval_poly_complex(&self.cubic(), x).sqrt()
    }

    /// Tangent-line doubling of `(x, y)`. The point must satisfy the curve
    /// equation to relative tolerance `2^(-prec/2)`.
    pub fn double_point(&self, x: &BigComplex, y: &BigComplex, prec: u32) -> Result<(BigComplex, BigComplex)> {
        let prec = prec.max(MIN_PRECISION);
        let x = with_prec(x, prec);
        let y = with_prec(y, prec);
        let rhs = eval_poly_complex(&self.cubic(), &x);
        let lhs = &y * &y;
        let scale = rhs.abs().to_f64().max(lhs.abs().to_f64()).max(1.0);
        let tol = Float::with_val(prec, Float::i_exp(1, -((prec / 2) as i32))) * scale;
        if (&lhs - &rhs).abs() > tol {
            return Err(Error::OffCurve(format!("({x}, {y})")));
        }
        if y.is_zero() {
            return Err(Error::PointAtInfinity);
        }
        let k = |v: &Rational| BigComplex::from_rational(v, prec);
        let int = |n: i64| BigComplex::from_f64(n as f64, 0.0, prec);
        let slope_num = &(&(&int(3) * &(&x * &x)) + &(&(&int(2) * &k(&self.a)) * &x)) + &k(&self.b);
        let lambda = slope_num.checked_div(&(&int(2) * &y)).ok_or(Error::PointAtInfinity)?;
        let x2 = &(&(&lambda * &lambda) - &k(&self.a)) - &(&int(2) * &x);
        let y2 = &(&lambda * &(&x - &x2)) - &y;
        Ok((x2, y2))
    }
}

fn with_prec(z: &BigComplex, prec: u32) -> BigComplex {
    BigComplex::new(Float::with_val(prec, &z.re), Float::with_val(prec, &z.im))
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl FromStr for EllipticCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(Error::Parse(format!("expected curve \"a,b,c\", got {s:?}")));
        };
        EllipticCurve::new(parse_rational(a)?, parse_rational(b)?, parse_rational(c)?)
    }
}

impl Serialize for EllipticCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
