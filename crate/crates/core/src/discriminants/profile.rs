use serde::Serialize;

use super::discriminant::Discriminant;
use super::forms::reduced_forms;
use super::int::DiscInt;

/// Class number and 2-rank data of one discriminant.
///
/// The ambiguous reduced forms are exactly the reduced representatives of
/// the classes of order at most 2, because the inverse of the class of
/// `(a, b, c)` is the class of `(a, -b, c)`, and for a reduced form that
/// is again the same reduced form precisely when `b = 0`, `b = a` or
/// `a = c`. So `ambiguous_count = |G[2]|` for the class group `G`.
///
/// *2-elementary*: every element has order at most 2, i.e. `G[2] = G`.
///
/// *almost 2-elementary*: `G` has a 2-elementary subgroup of index 2 (or is
/// itself 2-elementary). Any 2-elementary subgroup `H` lies inside `G[2]`,
/// which is itself 2-elementary. If `[G : H] = 2` then `[G : G[2]] ≤ 2`;
/// conversely if `[G : G[2]] = 2` then `G[2]` is such a subgroup. Hence the
/// flag is equivalent to `ambiguous_count ∈ {h, h/2}`. Following the usual
/// convention every 2-elementary discriminant counts as almost
/// 2-elementary, including `h = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassProfile<T> {
    pub delta: Discriminant<T>,
    pub h: u64,
    pub ambiguous_count: u64,
    pub two_elementary: bool,
    pub almost_two_elementary: bool,
}

impl<T: DiscInt> ClassProfile<T> {
    pub fn from_counts(delta: Discriminant<T>, h: u64, ambiguous_count: u64) -> Self {
        debug_assert!(ambiguous_count >= 1 && ambiguous_count <= h);
        Self {
            delta,
            h,
            ambiguous_count,
            two_elementary: ambiguous_count == h,
            almost_two_elementary: ambiguous_count == h || 2 * ambiguous_count == h,
        }
    }

    pub fn value(&self) -> T {
        self.delta.value()
    }
}

/// Profile computed from the explicit list of reduced forms.
pub fn class_profile<T: DiscInt>(delta: &Discriminant<T>) -> ClassProfile<T> {
    let forms = reduced_forms(delta);
    let ambiguous = forms.iter().filter(|f| f.is_ambiguous()).count() as u64;
    ClassProfile::from_counts(*delta, forms.len() as u64, ambiguous)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminants::discriminant::factor_discriminant;

    fn profile(n: i64) -> ClassProfile<i64> {
        class_profile(&factor_discriminant(n).unwrap())
    }

    #[test]
    fn examples() {
        let p = profile(-3);
        assert_eq!((p.h, p.ambiguous_count, p.two_elementary), (1, 1, true));
        let p = profile(-15);
        assert_eq!((p.h, p.ambiguous_count, p.two_elementary), (2, 2, true));
        let p = profile(-23);
        assert_eq!((p.h, p.ambiguous_count, p.two_elementary, p.almost_two_elementary), (3, 1, false, false));
    }

    #[test]
    fn almost_two_elementary_on_known_groups() {
        // -56 and -39 have cyclic class group of order 4: G[2] has index 2.
        for n in [-56, -39] {
            let p = profile(n);
            assert_eq!((p.h, p.ambiguous_count), (4, 2), "{n}");
            assert!(!p.two_elementary && p.almost_two_elementary);
        }
        // -84: (Z/2)^2.
        let p = profile(-84);
        assert_eq!((p.h, p.ambiguous_count), (4, 4));
        assert!(p.two_elementary && p.almost_two_elementary);
        // -47: cyclic of order 5, no element of order 2.
        let p = profile(-47);
        assert_eq!((p.h, p.ambiguous_count), (5, 1));
        assert!(!p.almost_two_elementary);
        // -1 mod 4 with cyclic order 8 (-95): G[2] has index 4.
        let p = profile(-95);
        assert_eq!((p.h, p.ambiguous_count), (8, 2));
        assert!(!p.almost_two_elementary);
    }
}
