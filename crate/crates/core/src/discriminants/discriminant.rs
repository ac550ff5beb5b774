use std::fmt;

use serde::Serialize;

use super::int::DiscInt;
use crate::error::{Error, Result};

/// A negative discriminant `value = conductor² · fundamental`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Discriminant<T> {
    value: T,
    fundamental: T,
    conductor: T,
}

impl<T: DiscInt> Discriminant<T> {
    /// Factors `n` as `f² · D` with `D` fundamental.
    pub fn new(n: T) -> Result<Self> {
        factor_discriminant(n)
    }

    /// Builds `f² · D` from a fundamental discriminant and a conductor.
    pub fn from_parts(fundamental: T, conductor: T) -> Result<Self> {
        if !is_fundamental(fundamental) || conductor < T::one() {
            return Err(Error::InvalidDiscriminant(format!("{conductor}^2 * {fundamental}")));
        }
        let value = conductor
            .checked_mul(&conductor)
            .and_then(|f2| f2.checked_mul(&fundamental))
            .ok_or_else(|| Error::InvalidDiscriminant(format!("{conductor}^2 * {fundamental} overflows")))?;
        Ok(Self { value, fundamental, conductor })
    }

    pub fn value(&self) -> T {
        self.value
    }

    pub fn fundamental(&self) -> T {
        self.fundamental
    }

    pub fn conductor(&self) -> T {
        self.conductor
    }

    /// `|Δ|`.
    pub fn abs(&self) -> u64 {
        self.value.as_u64()
    }

    pub fn is_fundamental(&self) -> bool {
        self.conductor == T::one()
    }

    /// Residue of `Δ` mod 4 (0 or 1).
    pub fn residue_mod4(&self) -> u8 {
        let four = T::lit(4);
        if self.value.mod_floor(&four).is_zero() {
            0
        } else {
            1
        }
    }
}

impl<T: fmt::Display> fmt::Display for Discriminant<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Whether `n` is a negative discriminant (`n < 0`, `n ≡ 0, 1 mod 4`).
pub fn is_discriminant<T: DiscInt>(n: T) -> bool {
    let r = n.mod_floor(&T::lit(4));
    n < T::zero() && (r.is_zero() || r.is_one())
}

/// Writes `m > 0` as `s · k²` with `s` squarefree, by trial division.
fn squarefree_decomposition<T: DiscInt>(m: T) -> (T, T) {
    let mut rest = m;
    let mut core = T::one();
    let mut root = T::one();
    let mut p = T::lit(2);
    while p * p <= rest {
        let mut e = 0u32;
        while (rest % p).is_zero() {
            rest = rest / p;
            e += 1;
        }
        if e > 0 {
            root = root * p.pow(e / 2);
            if e % 2 == 1 {
                core = core * p;
            }
        }
        p = if p == T::lit(2) { T::lit(3) } else { p + T::lit(2) };
    }
    // What remains is 1 or a prime.
    (core * rest, root)
}

/// Fundamental discriminant test: `D ≡ 1 mod 4` squarefree, or `D = 4m` with
/// `m ≡ 2, 3 mod 4` squarefree. Only negative values are accepted.
pub fn is_fundamental<T: DiscInt>(d: T) -> bool {
    if !is_discriminant(d) {
        return false;
    }
    let four = T::lit(4);
    let m = -d;
    if d.mod_floor(&four).is_one() {
        return squarefree_decomposition(m).1.is_one();
    }
    let q = d / four;
    let r = q.mod_floor(&four);
    (r == T::lit(2) || r == T::lit(3)) && squarefree_decomposition(-q).1.is_one()
}

/// Factors a negative discriminant as `f² · D` with `D` fundamental.
pub fn factor_discriminant<T: DiscInt>(n: T) -> Result<Discriminant<T>> {
    if !is_discriminant(n) {
        return Err(Error::InvalidDiscriminant(n.to_string()));
    }
    let four = T::lit(4);
    let (core, root) = squarefree_decomposition(-n);
    let s = -core;
    let (fundamental, conductor) = if s.mod_floor(&four).is_one() {
        (s, root)
    } else {
        // s ≡ 2, 3 mod 4 forces an even square part.
        debug_assert!(root.is_even());
        (s * four, root / T::lit(2))
    };
    Ok(Discriminant { value: n, fundamental, conductor })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_examples() {
        let d = factor_discriminant(-12i64).unwrap();
        assert_eq!((d.fundamental(), d.conductor()), (-3, 2));
        let d = factor_discriminant(-15i64).unwrap();
        assert_eq!((d.fundamental(), d.conductor()), (-15, 1));
        let d = factor_discriminant(-32i64).unwrap();
        assert_eq!((d.fundamental(), d.conductor()), (-8, 2));
        let d = factor_discriminant(-192i32).unwrap();
        assert_eq!((d.fundamental(), d.conductor()), (-3, 8));
        let d = factor_discriminant(-240i128).unwrap();
        assert_eq!((d.fundamental(), d.conductor()), (-15, 4));
    }

    #[test]
    fn rejects_non_discriminants() {
        for n in [0i64, 1, 4, 5, -1, -2, -5, -6, -9, -10] {
            assert!(matches!(factor_discriminant(n), Err(Error::InvalidDiscriminant(_))), "{n}");
        }
    }

    #[test]
    fn fundamental_small_list() {
        let fund: Vec<i64> = (1..=40).map(|k| -k).filter(|&d| is_fundamental(d)).collect();
        assert_eq!(fund, vec![-3, -4, -7, -8, -11, -15, -19, -20, -23, -24, -31, -35, -39, -40]);
    }

    #[test]
    fn residue() {
        assert_eq!(factor_discriminant(-4i64).unwrap().residue_mod4(), 0);
        assert_eq!(factor_discriminant(-7i64).unwrap().residue_mod4(), 1);
    }
}
