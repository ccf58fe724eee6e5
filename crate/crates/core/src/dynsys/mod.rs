//! Exact dynamics of rational maps: composition, iteration, Möbius
//! conjugation, periodic points and the dynamical zeta series.

pub mod roots;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bigfloat::MIN_PRECISION;
use crate::error::{Error, Result};
use crate::exactnum::{squarefree_part, Poly};
use crate::ratmap::RationalMap;
use crate::{rat, QPoly, Rational};

/// `z -> (a z + b) / (c z + d)` with `ad - bc != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mobius {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl Mobius {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::Precondition("Möbius transformation with ad - bc = 0".into()));
        }
        Ok(Mobius { a, b, c, d })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Mobius::new(rat(a), rat(b), rat(c), rat(d))
    }

    pub fn identity() -> Self {
        Mobius { a: Rational::one(), b: Rational::zero(), c: Rational::zero(), d: Rational::one() }
    }

    pub fn inverse(&self) -> Self {
        Mobius { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&other.a, &other.b, &other.c, &other.d);
        Mobius { a: a * e + b * g, b: a * f + b * h, c: c * e + d * g, d: c * f + d * h }
    }

    pub fn to_map(&self) -> RationalMap {
        RationalMap::new(
            QPoly::new(vec![self.b.clone(), self.a.clone()]),
            QPoly::new(vec![self.d.clone(), self.c.clone()]),
        )
        .expect("invertible Möbius map has degree 1")
    }
}

/// `phi ∘ psi`, via `sum p_i R^i S^(d-i) / sum q_i R^i S^(d-i)` for
/// `phi = P/Q` of degree `d` and `psi = R/S`. Both sides are coprime
/// whenever `P, Q` and `R, S` are, so no gcd is taken.
pub fn compose(phi: &RationalMap, psi: &RationalMap) -> RationalMap {
    let d = phi.degree();
    let (r, s) = (psi.int_num(), psi.int_den());
    let mut r_pow = vec![Poly::<BigInt>::one()];
    let mut s_pow = vec![Poly::<BigInt>::one()];
    for i in 1..=d {
        r_pow.push(&r_pow[i - 1] * &r);
        s_pow.push(&s_pow[i - 1] * &s);
    }
    let homogenize = |p: Poly<BigInt>| {
        let mut acc = Poly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&r_pow[i] * &s_pow[d - i]).scale(c);
            }
        }
        acc.map(|c| Rational::from_integer(c.clone()))
    };
    RationalMap::from_coprime(homogenize(phi.int_num()), homogenize(phi.int_den()))
}

/// `phi^n`, with `phi^0` the identity.
pub fn iterate(phi: &RationalMap, n: u32) -> RationalMap {
    let mut out = RationalMap::identity();
    for _ in 0..n {
        out = compose(phi, &out);
    }
    out
}

/// `f^-1 ∘ phi ∘ f`.
pub fn conjugate(phi: &RationalMap, f: &Mobius) -> RationalMap {
    compose(&compose(&f.inverse().to_map(), phi), &f.to_map())
}

/// Exact data about the solutions of `phi^n(x) = x` on the projective line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicCounts {
    pub n: u32,
    pub degree: usize,
    /// `P_n - x Q_n` for `phi^n = P_n / Q_n`.
    #[serde(skip)]
    pub fixed_point_poly: QPoly,
    /// Monic square-free part of `fixed_point_poly`.
    #[serde(skip)]
    pub squarefree_poly: QPoly,
    /// Finite solutions with multiplicity (degree of the polynomial above).
    pub finite_with_multiplicity: usize,
    pub finite_distinct: usize,
    pub infinity_fixed: bool,
    pub infinity_multiplicity: usize,
    pub count_with_multiplicity: u128,
    pub count_distinct: u128,
}

fn check_periodic_args(phi: &RationalMap, n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::Precondition("period must be at least 1".into()));
    }
    if phi.degree() < 2 {
        return Err(Error::Precondition(format!("map degree {} < 2", phi.degree())));
    }
    Ok(())
}

/// Multiplicity of `inf` as a solution of `psi(x) = x`, read off in the
/// chart `w = 1/x`: the order of vanishing at `w = 0` of
/// `w^(dp-dq) Q*(w) - w P*(w)` where `*` reverses the coefficients.
fn infinity_multiplicity(psi: &RationalMap) -> usize {
    let (dp, dq) = (psi.num().degree().unwrap_or(0), psi.den().degree().unwrap_or(0));
    if dp <= dq {
        return 0;
    }
    let p_rev = psi.num().reversed(dp);
    let q_rev = psi.den().reversed(dq);
    let g = &(&q_rev * &QPoly::monomial(Rational::one(), dp - dq)) - &(&p_rev * &QPoly::x());
    g.trailing_zeros().expect("psi is not the identity")
}

/// Counts of `Per_n(phi)` decided entirely in exact arithmetic.
pub fn periodic_counts(phi: &RationalMap, n: u32) -> Result<PeriodicCounts> {
    check_periodic_args(phi, n)?;
    let psi = iterate(phi, n);
    let f = psi.num() - &(psi.den() * &QPoly::x());
    let finite_with_multiplicity = f.degree().unwrap_or(0);
    let sqfree = squarefree_part(&f);
    let finite_distinct = sqfree.degree().unwrap_or(0);
    let infinity_multiplicity = infinity_multiplicity(&psi);
    let infinity_fixed = psi.fixes_infinity();
    let expected = (phi.degree() as u128).pow(n) + 1;
    let count_with_multiplicity = (finite_with_multiplicity + infinity_multiplicity) as u128;
    debug_assert_eq!(count_with_multiplicity, expected);
    if count_with_multiplicity != expected {
        return Err(Error::Precondition(format!(
            "multiplicity count {count_with_multiplicity} differs from d^n + 1 = {expected}"
        )));
    }
    Ok(PeriodicCounts {
        n,
        degree: phi.degree(),
        fixed_point_poly: f,
        squarefree_poly: sqfree,
        finite_with_multiplicity,
        finite_distinct,
        infinity_fixed,
        infinity_multiplicity,
        count_with_multiplicity,
        count_distinct: (finite_distinct + usize::from(infinity_fixed)) as u128,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicReport {
    pub n: u32,
    pub degree: usize,
    pub count_with_multiplicity: u128,
    pub count_distinct: u128,
    /// `[re, im]` approximations of the finite points, sorted by real then
    /// imaginary part.
    pub finite_points: Vec<[f64; 2]>,
    pub infinity_fixed: bool,
    pub infinity_multiplicity: usize,
    /// False when the root finder hit its sweep limit; the counts are exact
    /// either way.
    pub converged: bool,
    pub precision: u32,
}

pub fn periodic_points(phi: &RationalMap, n: u32, precision: u32) -> Result<PeriodicReport> {
    if precision < MIN_PRECISION {
        return Err(Error::Precondition(format!("precision {precision} below {MIN_PRECISION} bits")));
    }
    let counts = periodic_counts(phi, n)?;
    let found = roots::aberth(&counts.squarefree_poly, precision);
    Ok(PeriodicReport {
        n,
        degree: counts.degree,
        count_with_multiplicity: counts.count_with_multiplicity,
        count_distinct: counts.count_distinct,
        finite_points: found.roots.iter().map(|z| z.to_f64_pair()).collect(),
        infinity_fixed: counts.infinity_fixed,
        infinity_multiplicity: counts.infinity_multiplicity,
        converged: found.converged,
        precision,
    })
}

/// Coefficients `z_0..=z_N` of `exp(sum_{n>=1} counts[n-1] t^n / n)`.
pub fn zeta_from_counts(counts: &[Rational], terms: usize) -> Result<Vec<Rational>> {
    if counts.len() < terms {
        return Err(Error::Precondition(format!("need {terms} counts, got {}", counts.len())));
    }
    let mut z = vec![Rational::one()];
    for m in 1..=terms {
        let mut acc = Rational::zero();
        for k in 1..=m {
            acc += &counts[k - 1] * &z[m - k];
        }
        z.push(acc / Rational::from_integer(m.into()));
    }
    Ok(z)
}
