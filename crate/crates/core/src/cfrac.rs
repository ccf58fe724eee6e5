//! Periodic continued fractions of real quadratic irrationals.
//!
//! A surd `(P + sqrt(D)) / Q` is expanded with the classical integer recurrence
//!
//! ```text
//! a  = floor((P + sqrt(D)) / Q)
//! P' = a*Q - P
//! Q' = (D - P'^2) / Q
//! ```
//!
//! which stays integral as long as `Q | D - P^2`. The state `(P, Q)` determines
//! the tail value, so the first repeated state marks both the minimal
//! preperiod and the minimal period.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Ring;

/// `(p + sqrt(d)) / q` with `q | d - p^2` and `d` not a perfect square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd<T> {
    p: T,
    q: T,
    d: T,
}

impl<T: Ring> Surd<T> {
    /// Builds `(p + sqrt(d)) / q`, rescaling by `|q|` when `q` does not
    /// divide `d - p^2`.
    pub fn new(p: T, q: T, d: T) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !d.is_positive() {
            return Err(Error::Precondition("surd radicand must be positive".into()));
        }
        let s = d.sqrt();
        if s.clone() * s == d {
            return Err(Error::Precondition("surd radicand is a perfect square".into()));
        }
        if (d.clone() - p.clone() * p.clone()).is_multiple_of(&q) {
            return Ok(Surd { p, q, d });
        }
        let aq = q.abs();
        Ok(Surd { p: p * aq.clone(), d: d * aq.clone() * aq.clone(), q: q * aq })
    }

    /// Smallest representation of the same number: divides out the largest
    /// `f` with `f | P`, `f | Q`, `f^2 | D` that keeps `Q | D - P^2`.
    pub fn reduced(&self) -> Self {
        let g = self.p.gcd(&self.q);
        let mut best = self.clone();
        let mut k = T::one();
        while k.clone() * k.clone() <= g {
            if g.is_multiple_of(&k) {
                for f in [k.clone(), g.clone() / k.clone()] {
                    let f2 = f.clone() * f.clone();
                    if self.d.is_multiple_of(&f2) {
                        let (p, q, d) = (self.p.clone() / f.clone(), self.q.clone() / f.clone(), self.d.clone() / f2);
                        let ok = (d.clone() - p.clone() * p.clone()).is_multiple_of(&q);
                        if ok && q.abs() < best.q.abs() {
                            best = Surd { p, q, d };
                        }
                    }
                }
            }
            k = k + T::one();
        }
        best
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn d(&self) -> &T {
        &self.d
    }

    /// Exact `floor((p + sqrt(d)) / q)` using `isqrt(d)` bracketing.
    pub fn floor(&self) -> T {
        let s = self.d.sqrt();
        // sqrt(d) lies strictly between s and s + 1
        if self.q.is_positive() {
            (self.p.clone() + s).div_floor(&self.q)
        } else {
            (self.p.clone() + s + T::one()).div_floor(&self.q)
        }
    }

    /// Exact sign of the (never zero) real value.
    pub fn is_positive(&self) -> bool {
        let num_positive = !self.p.is_negative() || self.p.clone() * self.p.clone() < self.d;
        num_positive == self.q.is_positive()
    }

    /// The surd minus an integer.
    pub fn sub_integer(&self, n: &T) -> Self {
        Surd { p: self.p.clone() - n.clone() * self.q.clone(), q: self.q.clone(), d: self.d.clone() }
    }

    fn step(&self) -> (T, Surd<T>) {
        let a = self.floor();
        let p = a.clone() * self.q.clone() - self.p.clone();
        let q = (self.d.clone() - p.clone() * p.clone()) / self.q.clone();
        (a, Surd { p, q, d: self.d.clone() })
    }

    /// Value as `f64`.
    pub fn to_f64(&self) -> f64
    where
        T: num_traits::ToPrimitive,
    {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        (p + d.sqrt()) / q
    }
}

/// `[b_1, ..., b_N; (a_1, ..., a_k)]`: a preperiod followed by a repeating period.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction<T> {
    preperiod: Vec<T>,
    period: Vec<T>,
}

impl<T: Ring> ContinuedFraction<T> {
    pub fn new(preperiod: Vec<T>, period: Vec<T>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Precondition("continued fraction period is empty".into()));
        }
        if period.iter().any(|a| !a.is_positive()) || preperiod.iter().skip(1).any(|b| !b.is_positive()) {
            return Err(Error::Precondition("partial quotients after the first must be positive".into()));
        }
        Ok(ContinuedFraction { preperiod, period })
    }

    pub fn preperiod(&self) -> &[T] {
        &self.preperiod
    }

    pub fn period(&self) -> &[T] {
        &self.period
    }

    /// Infinite stream of partial quotients.
    pub fn terms(&self) -> impl Iterator<Item = &T> + '_ {
        self.preperiod.iter().chain(self.period.iter().cycle())
    }

    /// First `n` convergents `p_i / q_i`.
    pub fn convergents(&self, n: usize) -> Vec<Ratio<T>> {
        let (mut p1, mut p2) = (T::one(), T::zero());
        let (mut q1, mut q2) = (T::zero(), T::one());
        self.terms()
            .take(n)
            .map(|a| {
                let p = a.clone() * p1.clone() + p2.clone();
                let q = a.clone() * q1.clone() + q2.clone();
                p2 = std::mem::replace(&mut p1, p.clone());
                q2 = std::mem::replace(&mut q1, q.clone());
                Ratio::new(p, q)
            })
            .collect()
    }
}

/// Expands a quadratic irrational; terminates by Lagrange's theorem.
pub fn expand<T: Ring>(x: &Surd<T>) -> ContinuedFraction<T> {
    let mut seen: HashMap<(T, T), usize> = HashMap::new();
    let mut terms = Vec::new();
    let mut cur = x.clone();
    loop {
        let key = (cur.p.clone(), cur.q.clone());
        if let Some(&start) = seen.get(&key) {
            let period = terms.split_off(start);
            return ContinuedFraction { preperiod: terms, period };
        }
        seen.insert(key, terms.len());
        let (a, next) = cur.step();
        terms.push(a);
        cur = next;
    }
}

/// Product of `[[a_i, 1], [1, 0]]` over the period; `det = (-1)^k`.
pub fn period_matrix<T: Ring>(cf: &ContinuedFraction<T>) -> Result<Matrix<T>> {
    if cf.period.is_empty() {
        return Err(Error::Precondition("empty period".into()));
    }
    Ok(cf.period.iter().fold(Matrix::identity(2), |acc, a| &acc * &Matrix::cf_step(a.clone())))
}

pub fn convergents<T: Ring>(cf: &ContinuedFraction<T>, n: usize) -> Vec<Ratio<T>> {
    cf.convergents(n)
}

impl<T: fmt::Display> fmt::Display for Surd<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+sqrt({}))/{}", self.p, self.d, self.q)
    }
}

impl<T: Ring + FromStr> FromStr for Surd<T> {
    type Err = Error;

    /// Accepts `(P+sqrt(D))/Q`, `(P-sqrt(D))/Q` and `(P+sqrt(D))` with `Q = 1`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("expected (P+sqrt(D))/Q, got {s:?}"));
        let (body, q) = match t.rsplit_once(")/") {
            Some((b, q)) => (format!("{b})"), q.to_string()),
            None => (t.clone(), "1".to_string()),
        };
        let inner = body.strip_prefix('(').and_then(|b| b.strip_suffix("))")).ok_or_else(bad)?;
        let (p, sign, d) = if let Some((p, d)) = inner.split_once("+sqrt(") {
            (p, 1, d)
        } else if let Some((p, d)) = inner.split_once("-sqrt(") {
            (p, -1, d)
        } else {
            return Err(bad());
        };
        let parse = |x: &str| x.parse::<T>().map_err(|_| bad());
        let p = if p.is_empty() { T::zero() } else { parse(p)? };
        let (d, q) = (parse(d)?, parse(&q)?);
        let surd = if sign > 0 { Surd::new(p, q, d) } else { Surd::new(-p, -q, d) };
        surd.map_err(|e| Error::Parse(e.to_string()))
    }
}

impl<T: fmt::Display> fmt::Display for ContinuedFraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[T]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[{};({})]", join(&self.preperiod), join(&self.period))
    }
}

impl<T: Ring + FromStr> FromStr for ContinuedFraction<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("expected [b1,...,bN;(a1,...,ak)], got {s:?}"));
        let inner = t.strip_prefix('[').and_then(|r| r.strip_suffix(")]")).ok_or_else(bad)?;
        let (pre, per) = inner.split_once(";(").ok_or_else(bad)?;
        let list = |x: &str| -> Result<Vec<T>> {
            if x.is_empty() {
                return Ok(Vec::new());
            }
            x.split(',').map(|v| v.parse::<T>().map_err(|_| bad())).collect()
        };
        ContinuedFraction::new(list(pre)?, list(per)?).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl<T: fmt::Display> Serialize for Surd<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<T: fmt::Display> Serialize for ContinuedFraction<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
