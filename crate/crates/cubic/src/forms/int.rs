use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Integer types the form algorithms are generic over: `i128` for the
/// bounded fast path and `BigInt` for everything else.
pub trait Int:
    Clone
    + Ord
    + Debug
    + Display
    + Signed
    + Integer
    + Roots
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn int(v: i64) -> Self {
        Self::from_i64(v).expect("i64 always fits")
    }

    fn to_big(&self) -> BigInt;
}

impl Int for i128 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Int for BigInt {
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

pub(crate) fn is_square<T: Int>(n: &T) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    r.clone() * r == *n
}
