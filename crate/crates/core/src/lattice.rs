//! Pseudo-lattices `Z + Z*theta` inside a real quadratic field and the
//! sublattices cut out by multiplication with an algebraic integer.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cfrac::{expand, period_matrix};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::normal_form::hermite_normal_form;
use crate::{IntMatrix, QuadElem, QuadSurd, Rational};

/// `Z*1 + Z*theta`, with `theta > 0` irrational, stored in reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PseudoLattice {
    theta: QuadSurd,
}

impl PseudoLattice {
    pub fn new(theta: QuadSurd) -> Result<Self> {
        if !theta.is_positive() {
            return Err(Error::Precondition(format!("pseudo-lattice generator {theta} is not positive")));
        }
        Ok(PseudoLattice { theta: theta.reduced() })
    }

    /// `Z + Z*sqrt(d)`.
    pub fn standard(d: u64) -> Result<Self> {
        PseudoLattice::new(QuadSurd::new(BigInt::zero(), BigInt::one(), BigInt::from(d))?)
    }

    pub fn theta(&self) -> &QuadSurd {
        &self.theta
    }

    /// `theta` written as `a + b*sqrt(d)` over the square-free radicand `d`.
    pub fn theta_in_field(&self, d: u64) -> Result<QuadElem> {
        let (p, q, dd) = (self.theta.p(), self.theta.q(), self.theta.d());
        let d_big = BigInt::from(d);
        let mismatch = || Error::NotEndomorphism(format!("generator {} does not lie in Q(sqrt({d}))", self.theta));
        if !(dd % &d_big).is_zero() {
            return Err(mismatch());
        }
        let f2 = dd / &d_big;
        let f = f2.sqrt();
        if &f * &f != f2 {
            return Err(mismatch());
        }
        QuadElem::new(Rational::new(p.clone(), q.clone()), Rational::new(f, q.clone()), d)
    }

    /// Coordinates `(m, n)` of `z = m + n*theta`, if both are integers.
    fn coordinates(&self, theta: &QuadElem, z: &QuadElem) -> Result<(BigInt, BigInt)> {
        let n = z.b() / theta.b();
        let m = z.a() - &n * theta.a();
        if !n.is_integer() || !m.is_integer() {
            return Err(Error::NotEndomorphism(format!("{z} is not in {self}")));
        }
        Ok((m.to_integer(), n.to_integer()))
    }
}

/// The sublattice `eps * L` in Hermite form together with its normalization
/// `eps * L = g * (Z + Z*theta')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SublatticeData {
    /// Matrix of multiplication by `eps` in the basis `(1, theta)`; columns are images.
    pub endomorphism: IntMatrix,
    /// Hermite basis of the sublattice, columns in the basis `(1, theta)`.
    pub basis_matrix: IntMatrix,
    #[serde(serialize_with = "crate::serde_int::serialize")]
    pub index: BigInt,
    pub normalized: PseudoLattice,
}

/// Identity on `D`: a curve with complex multiplication by `sqrt(-D)` is sent
/// to the pseudo-lattice with real multiplication by `sqrt(D)`.
pub fn cm_to_rm(d: u64) -> Result<u64> {
    if d <= 1 {
        return Err(Error::Precondition(format!("D must exceed 1, got {d}")));
    }
    Ok(d)
}

fn check_multiplier(eps: &QuadElem) -> Result<()> {
    if !eps.is_integral() {
        return Err(Error::NotIntegral(eps.to_string()));
    }
    if eps.is_zero() {
        return Err(Error::Precondition("multiplier is zero".into()));
    }
    Ok(())
}

/// Computes `eps * L` as a sublattice of `L`, its index and the normalized
/// generator `theta'` obtained by dividing the Hermite basis by its rational
/// generator.
pub fn scale_lattice(lattice: &PseudoLattice, eps: &QuadElem) -> Result<SublatticeData> {
    check_multiplier(eps)?;
    let theta = lattice.theta_in_field(eps.d())?;
    let img_one = eps.clone();
    let img_theta = eps.checked_mul(&theta)?;
    let (m1, n1) = lattice.coordinates(&theta, &img_one)?;
    let (m2, n2) = lattice.coordinates(&theta, &img_theta)?;
    let endomorphism = Matrix::from_rows(vec![vec![m1, m2], vec![n1, n2]])?;
    let h = hermite_normal_form(&endomorphism)?;
    let (h11, h12, h22) = (h.get(0, 0).clone(), h.get(0, 1).clone(), h.get(1, 1).clone());
    let index = &h11 * &h22;

    // theta' = (h12 + h22*theta) / h11 with theta = (P + sqrt(D)) / Q
    let (p, q, d) = (lattice.theta.p(), lattice.theta.q(), lattice.theta.d());
    let p_new = &h12 * q + &h22 * p;
    let d_new = &h22 * &h22 * d;
    let q_new = &h11 * q;
    let normalized = PseudoLattice::new(QuadSurd::new(p_new, q_new, d_new)?)?;
    Ok(SublatticeData { endomorphism, basis_matrix: h, index, normalized })
}

/// Period matrix `T` of the continued fraction of the normalized generator.
pub fn functor_t(lattice: &PseudoLattice, eps: &QuadElem) -> Result<IntMatrix> {
    let sub = scale_lattice(lattice, eps)?;
    period_matrix(&expand(sub.normalized.theta()))
}

impl fmt::Display for PseudoLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z+Z*{}", self.theta)
    }
}

impl FromStr for PseudoLattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest =
            t.strip_prefix("Z+Z*").ok_or_else(|| Error::Parse(format!("expected Z+Z*(P+sqrt(D))/Q, got {s:?}")))?;
        PseudoLattice::new(rest.parse()?).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for PseudoLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `|N(eps)|` as an integer.
pub fn degree_of(eps: &QuadElem) -> BigInt {
    eps.norm().to_integer().abs()
}
