use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, NumCast, PrimInt, Signed, ToPrimitive};

/// Machine integer type usable for discriminants and form coefficients.
///
/// Implemented for every signed primitive integer; `i64` is the type used
/// by the rest of the crate (see the aliases at the crate root).
pub trait DiscInt:
    PrimInt + Signed + Integer + NumCast + FromPrimitive + ToPrimitive + Hash + Debug + Display + Send + Sync + 'static
{
    fn lit(v: u64) -> Self {
        <Self as NumCast>::from(v).expect("value does not fit the integer type")
    }

    fn as_u64(self) -> u64 {
        self.abs().to_u64().expect("value does not fit in u64")
    }

    fn as_i64(self) -> i64 {
        self.to_i64().expect("value does not fit in i64")
    }
}

impl<T> DiscInt for T where
    T: PrimInt
        + Signed
        + Integer
        + NumCast
        + FromPrimitive
        + ToPrimitive
        + Hash
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Floor of the square root of `n`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let n = n as u128;
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_exact_around_squares() {
        for k in 0u64..2000 {
            assert_eq!(isqrt(k * k), k);
            if k > 0 {
                assert_eq!(isqrt(k * k - 1), k - 1);
            }
        }
        assert_eq!(isqrt(u32::MAX as u64 * u32::MAX as u64), u32::MAX as u64);
    }
}
