use std::fmt;

use serde::Serialize;

use super::discriminant::Discriminant;
use super::int::{isqrt, DiscInt};
use crate::error::{Error, Result};

/// A primitive, reduced, positive definite binary quadratic form `(a, b, c)`.
///
/// Reduced means `-a < b ≤ a < c` or `0 ≤ b ≤ a = c`. The reduced forms of
/// discriminant `Δ` are in bijection with the singular moduli of discriminant
/// `Δ`, via `(a, b, c) ↦ j((-b + i√|Δ|) / 2a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReducedForm<T> {
    a: T,
    b: T,
    c: T,
}

impl<T: DiscInt> ReducedForm<T> {
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        let form = Self { a, b, c };
        if a <= T::zero() || !form.is_reduced() || !form.is_primitive() {
            return Err(Error::InvalidForm(form.to_string()));
        }
        Ok(form)
    }

    pub(crate) fn new_unchecked(a: T, b: T, c: T) -> Self {
        Self { a, b, c }
    }

    /// The principal form of `Δ`: `(1, k, (k - Δ)/4)` with `k ≡ Δ mod 2`.
    pub fn principal(delta: &Discriminant<T>) -> Self {
        let k = if delta.residue_mod4() == 0 { T::zero() } else { T::one() };
        let c = (k * k - delta.value()) / T::lit(4);
        Self::new_unchecked(T::one(), k, c)
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn c(&self) -> T {
        self.c
    }

    pub fn discriminant_value(&self) -> T {
        self.b * self.b - T::lit(4) * self.a * self.c
    }

    fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        (-a < b && b <= a && a < c) || (T::zero() <= b && b <= a && a == c)
    }

    fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    /// Ambiguous forms represent the classes of order at most 2.
    pub fn is_ambiguous(&self) -> bool {
        self.b.is_zero() || self.a == self.b || self.a == self.c
    }

    /// The principal form is the only reduced form with `a = 1`.
    pub fn is_principal(&self) -> bool {
        self.a.is_one()
    }

    /// Reduced representative of the inverse class, `(a, -b, c)` reduced.
    pub fn inverse(&self) -> Self {
        if self.is_ambiguous() {
            *self
        } else {
            Self::new_unchecked(self.a, -self.b, self.c)
        }
    }
}

impl<T: fmt::Display> fmt::Display for ReducedForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// All reduced primitive forms of `Δ`, sorted by `(a, b)`.
///
/// For each `b ≥ 0` of the parity of `Δ` with `3b² ≤ |Δ|`, the divisors `a`
/// of `(b² + |Δ|)/4` with `b ≤ a ≤ c` give the candidates; non-ambiguous
/// ones come with their partner `(a, -b, c)`.
pub fn reduced_forms<T: DiscInt>(delta: &Discriminant<T>) -> Vec<ReducedForm<T>> {
    let n = delta.abs();
    let parity = n % 2;
    let bmax = isqrt(n / 3);
    let mut out = Vec::new();
    let mut b = parity;
    while b <= bmax {
        let m = (b * b + n) / 4;
        let mut a = b.max(1);
        while a * a <= m {
            if m % a == 0 {
                let c = m / a;
                let (ta, tb, tc) = (T::lit(a), T::lit(b), T::lit(c));
                if ta.gcd(&tb).gcd(&tc).is_one() {
                    let form = ReducedForm::new_unchecked(ta, tb, tc);
                    out.push(form);
                    if !form.is_ambiguous() {
                        out.push(ReducedForm::new_unchecked(ta, -tb, tc));
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminants::discriminant::factor_discriminant;

    fn forms(n: i64) -> Vec<(i64, i64, i64)> {
        reduced_forms(&factor_discriminant(n).unwrap()).iter().map(|f| (f.a(), f.b(), f.c())).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(forms(-3), vec![(1, 1, 1)]);
        assert_eq!(forms(-4), vec![(1, 0, 1)]);
        assert_eq!(forms(-15), vec![(1, 1, 4), (2, 1, 2)]);
        assert_eq!(forms(-23), vec![(1, 1, 6), (2, -1, 3), (2, 1, 3)]);
        // (2, 0, 2) is imprimitive for -16.
        assert_eq!(forms(-16), vec![(1, 0, 4)]);
    }

    #[test]
    fn exactly_one_principal_and_all_reduced() {
        for n in 3..3000i64 {
            let Ok(d) = factor_discriminant(-n) else { continue };
            let fs = reduced_forms(&d);
            assert_eq!(fs.iter().filter(|f| f.is_principal()).count(), 1, "{n}");
            assert_eq!(fs[0], ReducedForm::principal(&d));
            for f in &fs {
                assert_eq!(f.discriminant_value(), -n);
                assert!(ReducedForm::new(f.a(), f.b(), f.c()).is_ok());
            }
        }
    }

    #[test]
    fn constructor_rejects_bad_forms() {
        assert!(ReducedForm::new(2i64, 0, 2).is_err()); // imprimitive
        assert!(ReducedForm::new(2i64, -1, 2).is_err()); // a = c needs b ≥ 0
        assert!(ReducedForm::new(2i64, 3, 4).is_err()); // |b| > a
        assert!(ReducedForm::new(0i64, 1, 4).is_err());
        assert!(ReducedForm::new(2i64, -2, 3).is_err()); // b = -a
    }

    #[test]
    fn inverse_pairs() {
        let f = ReducedForm::new(2i64, -1, 3).unwrap();
        assert_eq!(f.inverse(), ReducedForm::new(2, 1, 3).unwrap());
        let g = ReducedForm::new(2i64, 1, 2).unwrap();
        assert_eq!(g.inverse(), g);
    }
}
