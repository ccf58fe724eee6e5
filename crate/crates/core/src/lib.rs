//! Exact arithmetic for Lattès maps, real-multiplication pseudo-lattices and
//! subshifts of finite type.

pub mod bigfloat;
pub mod cfrac;
pub mod dynsys;
pub mod error;
pub mod exactnum;
pub mod lattes;
pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod pipeline;
pub mod ratmap;
pub mod scalar;
mod serde_int;
pub mod sft;

pub use error::{Error, Result};
pub use lattes::EllipticCurve;
pub use lattice::PseudoLattice;
pub use ratmap::RationalMap;
pub use sft::SftMatrix;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rational = BigRational;
pub type QPoly = exactnum::Poly<Rational>;
pub type QuadElem = exactnum::Quad<Rational>;
pub type IntMatrix = matrix::Matrix<BigInt>;
pub type QMatrix = matrix::Matrix<Rational>;
pub type QuadSurd = cfrac::Surd<BigInt>;
pub type CFrac = cfrac::ContinuedFraction<BigInt>;

/// The integer `n` as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
