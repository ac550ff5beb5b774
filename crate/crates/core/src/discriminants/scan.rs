use num_integer::Integer;
use rayon::prelude::*;

use super::discriminant::{factor_discriminant, Discriminant};
use super::int::{isqrt, DiscInt};
use super::profile::ClassProfile;
use crate::error::{Error, Result};

/// Every discriminant with `h(Δ) ≤ 32` satisfies `|Δ| ≤ 166147`.
pub const CLASS_NUMBER_32_BOUND: u64 = 166_147;

/// Largest class number for which [`class_number_list`] is complete.
pub const MAX_LISTED_CLASS_NUMBER: u64 = 32;

const CHUNK: u64 = 4096;

/// Profiles of every discriminant with `lo ≤ |Δ| ≤ hi`, in ascending `|Δ|`.
///
/// Sieves over all primitive reduced triples `(a, b, c)` whose discriminant
/// falls in the window instead of enumerating forms one discriminant at a
/// time; the total work is proportional to `Σ h(Δ)` over the window plus
/// `hi/3` for the `(a, b)` grid.
pub fn profiles_in_range<T: DiscInt>(lo: u64, hi: u64) -> Vec<ClassProfile<T>> {
    let lo = lo.max(3);
    if hi < lo {
        return Vec::new();
    }
    let len = (hi - lo + 1) as usize;
    let mut h = vec![0u32; len];
    let mut amb = vec![0u32; len];
    let amax = isqrt(hi / 3) as i64;
    let (lo_i, hi_i) = (lo as i64, hi as i64);
    for a in 1..=amax {
        let four_a = 4 * a;
        for b in (1 - a)..=a {
            let b2 = b * b;
            let cmin = a.max((lo_i + b2 + four_a - 1) / four_a);
            let cmax = (hi_i + b2) / four_a;
            let ab = a.gcd(&b.abs());
            for c in cmin..=cmax {
                if c == a && b < 0 {
                    continue;
                }
                if ab.gcd(&c) != 1 {
                    continue;
                }
                let idx = (four_a * c - b2 - lo_i) as usize;
                h[idx] += 1;
                if b == 0 || b == a || a == c {
                    amb[idx] += 1;
                }
            }
        }
    }
    (lo..=hi)
        .filter(|n| n % 4 == 0 || n % 4 == 3)
        .map(|n| {
            let idx = (n - lo) as usize;
            let delta = factor_discriminant(-T::lit(n)).expect("valid by residue");
            ClassProfile::from_counts(delta, h[idx] as u64, amb[idx] as u64)
        })
        .collect()
}

/// Profiles of all `Δ` with `|Δ| ≤ abs_bound` accepted by `filter`, ascending.
///
/// The range is cut into fixed chunks processed on the current rayon pool
/// and concatenated in chunk order, so the output does not depend on the
/// number of workers.
pub fn scan_profiles<T, F>(abs_bound: u64, filter: F) -> Vec<ClassProfile<T>>
where
    T: DiscInt,
    F: Fn(&ClassProfile<T>) -> bool + Sync,
{
    if abs_bound < 3 {
        return Vec::new();
    }
    let chunks: Vec<(u64, u64)> = (0..=abs_bound / CHUNK)
        .map(|k| (k * CHUNK, ((k + 1) * CHUNK - 1).min(abs_bound)))
        .filter(|(lo, hi)| lo <= hi)
        .collect();
    chunks
        .par_iter()
        .map(|&(lo, hi)| profiles_in_range::<T>(lo, hi).into_iter().filter(|p| filter(p)).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Discriminants with `|Δ| ≤ abs_bound` whose profile satisfies `filter`.
pub fn scan<T, F>(abs_bound: u64, filter: F) -> Vec<Discriminant<T>>
where
    T: DiscInt,
    F: Fn(&ClassProfile<T>) -> bool + Sync,
{
    scan_profiles(abs_bound, filter).into_iter().map(|p| p.delta).collect()
}

/// [`scan`] on a dedicated pool of `jobs` worker threads.
pub fn scan_with_jobs<T, F>(abs_bound: u64, jobs: usize, filter: F) -> Vec<Discriminant<T>>
where
    T: DiscInt,
    F: Fn(&ClassProfile<T>) -> bool + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
    pool.install(|| scan(abs_bound, filter))
}

/// Complete list of discriminants of class number `h_target`.
pub fn class_number_list(h_target: u64) -> Result<Vec<Discriminant<i64>>> {
    if h_target == 0 || h_target > MAX_LISTED_CLASS_NUMBER {
        return Err(Error::UnsupportedTarget(h_target));
    }
    Ok(scan(CLASS_NUMBER_32_BOUND, |p: &ClassProfile<i64>| p.h == h_target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminants::profile::class_profile;

    #[test]
    fn sieve_matches_per_discriminant_profiles() {
        for (lo, hi) in [(3, 500), (1000, 1400), (4093, 4100), (9000, 9003)] {
            for p in profiles_in_range::<i64>(lo, hi) {
                assert_eq!(p, class_profile(&p.delta), "{}", p.delta);
            }
        }
    }

    #[test]
    fn scan_small_examples() {
        let h1: Vec<i64> = scan(20, |p: &ClassProfile<i64>| p.h == 1).iter().map(|d| d.value()).collect();
        assert_eq!(h1, vec![-3, -4, -7, -8, -11, -12, -16, -19]);
        assert!(scan(3, |p: &ClassProfile<i64>| p.h == 2).is_empty());
        assert!(scan(2, |_: &ClassProfile<i64>| true).is_empty());
    }

    #[test]
    fn unsupported_targets() {
        assert_eq!(class_number_list(33), Err(Error::UnsupportedTarget(33)));
        assert_eq!(class_number_list(0), Err(Error::UnsupportedTarget(0)));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let f = |p: &ClassProfile<i32>| p.h % 3 == 0 && p.ambiguous_count == 2;
        let one = scan_with_jobs(30_000, 1, f);
        let four = scan_with_jobs(30_000, 4, f);
        assert_eq!(one, four);
        assert!(!one.is_empty());
    }
}
