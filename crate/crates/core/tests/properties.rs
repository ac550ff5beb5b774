use proptest::prelude::*;

use smdiff::discriminants::{
    class_profile, factor_discriminant, is_discriminant, profiles_in_range, reduced_forms, scan_with_jobs, Discriminant,
};
use smdiff::Profile;

fn brute_force_count(delta: i64) -> usize {
    let n = -delta;
    let mut count = 0;
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c >= a && !(c == a && b < 0) && num_integer::gcd(num_integer::gcd(a, b), c) == 1 {
                count += 1;
            }
        }
        a += 1;
    }
    count
}

fn discriminant() -> impl Strategy<Value = i64> {
    (3i64..200_000).prop_map(|n| if n % 4 == 0 || n % 4 == 3 { -n } else { -(4 * (n / 4) + 3) })
}

proptest! {
    #[test]
    fn forms_are_reduced_and_complete(delta in discriminant()) {
        let d = factor_discriminant(delta).unwrap();
        let forms = reduced_forms(&d);
        prop_assert_eq!(forms.len(), brute_force_count(delta));
        for f in &forms {
            prop_assert_eq!(f.b() * f.b() - 4 * f.a() * f.c(), delta);
            prop_assert!(f.b().abs() <= f.a() && f.a() <= f.c());
        }
    }

    #[test]
    fn two_elementary_class_numbers_are_powers_of_two(delta in discriminant()) {
        let p = class_profile(&factor_discriminant(delta).unwrap());
        prop_assert!(p.ambiguous_count.is_power_of_two());
        prop_assert_eq!(p.h % p.ambiguous_count, 0);
        if p.two_elementary {
            prop_assert!(p.h.is_power_of_two());
        }
    }

    #[test]
    fn factorization_roundtrips(delta in discriminant()) {
        let d = factor_discriminant(delta).unwrap();
        let (fund, f) = (d.fundamental(), d.conductor());
        prop_assert_eq!(fund * f * f, delta);
        prop_assert!(factor_discriminant(fund).unwrap().is_fundamental());
        prop_assert_eq!(Discriminant::from_parts(fund, f).unwrap().value(), delta);
    }

    #[test]
    fn non_discriminants_are_rejected(n in 1i64..100_000) {
        let m = -n;
        prop_assert_eq!(factor_discriminant(m).is_ok(), is_discriminant(m));
        prop_assert!(factor_discriminant(n).is_err());
    }

    #[test]
    fn windowed_profiles_agree_with_single_ones(lo in 3u64..50_000, width in 1u64..400) {
        for p in profiles_in_range::<i64>(lo, lo + width) {
            prop_assert_eq!(&p, &class_profile(&p.delta));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn scan_is_independent_of_jobs(bound in 1_000u64..40_000, jobs in 2usize..8, h in 1u64..9) {
        let filter = |p: &Profile| p.h == h || p.two_elementary;
        prop_assert_eq!(scan_with_jobs::<i64, _>(bound, 1, filter), scan_with_jobs::<i64, _>(bound, jobs, filter));
    }
}
