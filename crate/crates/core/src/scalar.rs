//! Scalar traits the generic numerics are written against.
//!
//! Polynomials and quadratic-field elements only need a [`Field`]; integer
//! matrices, their normal forms and continued fractions need a [`Ring`] with
//! Euclidean division. `BigRational`/`BigInt` are the instances the rest of the
//! crate uses, but `f64` and `i64` satisfy the same bounds.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::Neg;

use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Num, Signed};

/// A commutative field with exact (or at least total) division.
pub trait Field: Clone + PartialEq + Debug + Num + Neg<Output = Self> + FromPrimitive {}

impl<T> Field for T where T: Clone + PartialEq + Debug + Num + Neg<Output = Self> + FromPrimitive {}

/// A Euclidean ring of integers.
pub trait Ring: Clone + Ord + Hash + Debug + Integer + Signed + Roots + FromPrimitive {}

impl<T> Ring for T where T: Clone + Ord + Hash + Debug + Integer + Signed + Roots + FromPrimitive {}
