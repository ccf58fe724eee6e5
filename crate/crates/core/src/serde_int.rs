//! JSON encoding for big integers: a number when it fits in `i64`, else a string.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

pub(crate) struct Int<'a, T>(pub &'a T);

impl<T: ToPrimitive + fmt::Display> Serialize for Int<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

pub(crate) fn serialize<T: ToPrimitive + fmt::Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    Int(x).serialize(s)
}
