//! Elements `a + b*sqrt(D)` of a real quadratic field.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::{IntMatrix, Rational};

/// `a + b*sqrt(d)` with `d > 1` square-free. Equality is componentwise, which
/// is the same as equality of real numbers because `sqrt(d)` is irrational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad<T> {
    a: T,
    b: T,
    d: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Trial division up to `sqrt(n)`.
pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl<T: Field> Quad<T> {
    pub fn new(a: T, b: T, d: u64) -> Result<Self> {
        if d <= 1 {
            return Err(Error::Precondition(format!("D must exceed 1, got {d}")));
        }
        if !is_squarefree(d) {
            return Err(Error::Precondition(format!("D = {d} is not square-free")));
        }
        Ok(Quad { a, b, d })
    }

    pub fn from_rational(a: T, d: u64) -> Result<Self> {
        Quad::new(a, T::zero(), d)
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_d(d: u64) -> Result<Self> {
        Quad::new(T::zero(), T::one(), d)
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    fn d_scalar(&self) -> T {
        T::from_u64(self.d).expect("D representable in the scalar type")
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> Self {
        Quad { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// `a^2 - d*b^2`.
    pub fn norm(&self) -> T {
        self.a.clone() * self.a.clone() - self.d_scalar() * self.b.clone() * self.b.clone()
    }

    /// `2a`.
    pub fn trace(&self) -> T {
        self.a.clone() + self.a.clone()
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::FieldMismatch { left: self.d, right: other.d });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Quad { a: self.a.clone() + other.a.clone(), b: self.b.clone() + other.b.clone(), d: self.d })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Quad { a: self.a.clone() - other.a.clone(), b: self.b.clone() - other.b.clone(), d: self.d })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let (a, b, c, e) = (&self.a, &self.b, &other.a, &other.b);
        Ok(Quad {
            a: a.clone() * c.clone() + self.d_scalar() * b.clone() * e.clone(),
            b: a.clone() * e.clone() + b.clone() * c.clone(),
            d: self.d,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // x / y = x * conj(y) / N(y); N(y) != 0 since d is not a square
        let n = other.norm();
        let num = self.checked_mul(&other.conj())?;
        Ok(Quad { a: num.a / n.clone(), b: num.b / n, d: self.d })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Quad { a: T::one(), b: T::zero(), d: self.d };
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same field");
        }
        acc
    }
}

/// Exact arithmetic in `Q(sqrt(D))`.
pub fn quad_arith<T: Field>(x: &Quad<T>, y: &Quad<T>, op: QuadOp) -> Result<Quad<T>> {
    match op {
        QuadOp::Add => x.checked_add(y),
        QuadOp::Sub => x.checked_sub(y),
        QuadOp::Mul => x.checked_mul(y),
        QuadOp::Div => x.checked_div(y),
    }
}

impl Quad<Rational> {
    /// Member of `Z[sqrt(D)]`.
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Sign of the real number `a + b*sqrt(d)`, decided exactly.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == 0 || sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        // opposite signs: compare a^2 with d*b^2
        let lhs = &self.a * &self.a;
        let rhs = Rational::from_integer(BigInt::from(self.d)) * &self.b * &self.b;
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    /// Matrix form `[[0, 1], [-N, Tr]]` of an algebraic integer; its
    /// characteristic polynomial is `x^2 - Tr x + N`.
    pub fn companion_matrix(&self) -> Result<IntMatrix> {
        if !self.is_integral() {
            return Err(Error::NotIntegral(self.to_string()));
        }
        if self.b.is_zero() {
            return Err(Error::RationalElement);
        }
        let n = self.norm().to_integer();
        let tr = self.trace().to_integer();
        Ok(Matrix::from_rows(vec![vec![BigInt::zero(), BigInt::one()], vec![-n, tr]]).expect("2x2"))
    }
}

fn sign_of(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Companion matrix of an integral, irrational element.
pub fn companion_matrix(eps: &Quad<Rational>) -> Result<IntMatrix> {
    eps.companion_matrix()
}

/// `(N, Tr)`.
pub fn norm_trace<T: Field>(x: &Quad<T>) -> (T, T) {
    (x.norm(), x.trace())
}

impl fmt::Display for Quad<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, -&self.b, self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Serialize for Quad<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("bad rational {t:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {t:?}")));
    }
    Ok(Rational::new(n, d))
}

impl FromStr for Quad<Rational> {
    type Err = Error;

    /// Accepts `a+b*sqrt(D)` and `a-b*sqrt(D)`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("expected a+b*sqrt(D), got {s:?}"));
        let (head, d) = t.strip_suffix(')').and_then(|r| r.rsplit_once("*sqrt(")).ok_or_else(bad)?;
        let d: u64 = d.parse().map_err(|_| bad())?;
        let bytes = head.as_bytes();
        let split = (1..bytes.len())
            .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'+' | b'-'))
            .ok_or_else(bad)?;
        let a = parse_rational(&head[..split])?;
        let mut b = parse_rational(&head[split + 1..])?;
        if bytes[split] == b'-' {
            b = -b;
        }
        Quad::new(a, b, d).map_err(|e| match e {
            Error::Precondition(m) => Error::Parse(m),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QuadElem;
    use proptest::prelude::*;

    fn qe(s: &str) -> QuadElem {
        s.parse().unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn defining_relation_and_norm_identity() {
        let s2 = qe("0+1*sqrt(2)");
        assert_eq!(quad_arith(&s2, &s2, QuadOp::Mul).unwrap(), qe("2+0*sqrt(2)"));
        let p = qe("1+1*sqrt(2)");
        let m = qe("1-1*sqrt(2)");
        assert_eq!(p.checked_mul(&m).unwrap(), qe("-1+0*sqrt(2)"));
    }

    #[test]
    fn halves_add_up() {
        let h = qe("1/2+1/2*sqrt(5)");
        assert_eq!(h.checked_add(&h).unwrap(), qe("1+1*sqrt(5)"));
        let two = QuadElem::from_rational(r(2), 5).unwrap();
        assert_eq!(qe("1+1*sqrt(5)").checked_div(&two).unwrap(), h);
    }

    #[test]
    fn errors() {
        let a = qe("0+1*sqrt(2)");
        let b = qe("0+1*sqrt(3)");
        assert_eq!(a.checked_add(&b), Err(Error::FieldMismatch { left: 2, right: 3 }));
        let z = QuadElem::from_rational(r(0), 2).unwrap();
        assert_eq!(a.checked_div(&z), Err(Error::DivisionByZero));
        assert!("1+1*sqrt(4)".parse::<QuadElem>().is_err());
        assert!("1+1*sqrt(1)".parse::<QuadElem>().is_err());
        assert!("1+sqrt(2)".parse::<QuadElem>().is_err());
    }

    #[test]
    fn norm_and_trace_examples() {
        assert_eq!(norm_trace(&qe("0+1*sqrt(2)")), (r(-2), r(0)));
        assert_eq!(norm_trace(&qe("1+0*sqrt(2)")), (r(1), r(2)));
        assert_eq!(norm_trace(&qe("1+1*sqrt(2)")), (r(-1), r(2)));
    }

    #[test]
    fn companion_examples() {
        assert_eq!(qe("0+1*sqrt(2)").companion_matrix().unwrap().to_string(), "0,1;2,0");
        assert_eq!(qe("1+1*sqrt(2)").companion_matrix().unwrap().to_string(), "0,1;1,2");
        assert_eq!(qe("0+1*sqrt(5)").companion_matrix().unwrap().to_string(), "0,1;5,0");
        assert_eq!(qe("2+0*sqrt(2)").companion_matrix(), Err(Error::RationalElement));
        assert!(matches!(qe("1/2+1/2*sqrt(5)").companion_matrix(), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(qe("-1/2 + -3/2*sqrt(5)").to_string(), "-1/2-3/2*sqrt(5)");
        assert_eq!(qe("-1/2-3/2*sqrt(5)"), qe("-1/2+-3/2*sqrt(5)"));
        assert_eq!(qe("0+1*sqrt(2)").to_string(), "0+1*sqrt(2)");
    }

    #[test]
    fn exact_sign() {
        assert_eq!(qe("1-1*sqrt(2)").signum(), -1);
        assert_eq!(qe("-1+1*sqrt(2)").signum(), 1);
        assert_eq!(qe("3-2*sqrt(2)").signum(), 1);
        assert_eq!(qe("0+0*sqrt(2)").signum(), 0);
    }

    #[test]
    fn squarefree_detection() {
        let sf: Vec<u64> = (1..=20).filter(|&n| is_squarefree(n)).collect();
        assert_eq!(sf, vec![1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19]);
    }

    fn elem(d: u64) -> impl Strategy<Value = QuadElem> {
        (-20i64..=20, 1i64..=5, -20i64..=20, 1i64..=5).prop_map(move |(a, ad, b, bd)| {
            QuadElem::new(Rational::new(a.into(), ad.into()), Rational::new(b.into(), bd.into()), d).unwrap()
        })
    }

    fn sqfree_d() -> impl Strategy<Value = u64> {
        prop::sample::select(vec![2u64, 3, 5, 6, 7, 10, 13])
    }

    proptest! {
        #[test]
        fn norm_multiplicative_trace_additive((x, y) in sqfree_d().prop_flat_map(|d| (elem(d), elem(d)))) {
            prop_assert_eq!(x.checked_mul(&y).unwrap().norm(), x.norm() * y.norm());
            prop_assert_eq!(x.checked_add(&y).unwrap().trace(), x.trace() + y.trace());
            // rationals stay reduced
            let z = x.checked_mul(&y).unwrap();
            prop_assert!(num_integer::Integer::gcd(z.a().numer(), z.a().denom()).is_one());
        }

        #[test]
        fn division_inverts_multiplication((x, y) in sqfree_d().prop_flat_map(|d| (elem(d), elem(d)))) {
            prop_assume!(!y.is_zero());
            prop_assert_eq!(x.checked_mul(&y).unwrap().checked_div(&y).unwrap(), x);
        }

        #[test]
        fn companion_charpoly(a in -30i64..=30, b in -30i64..=30, d in sqfree_d()) {
            prop_assume!(b != 0);
            let e = QuadElem::new(r(a), r(b), d).unwrap();
            let m = e.companion_matrix().unwrap();
            let cp = m.charpoly();
            // x^2 - Tr x + N, lowest degree first
            let (n, tr) = norm_trace(&e);
            prop_assert_eq!(cp.coeffs(), &[n.to_integer(), -tr.to_integer(), BigInt::one()][..]);
        }
    }
}
