use std::time::Instant;

use super::profile::ClassProfile;
use super::scan::scan_profiles;
use crate::report::{CheckReport, Status};

/// The least fundamental discriminant in absolute value with `h ≥ 128`.
pub const STAR_DISCRIMINANT: i64 = -8399;

/// Least `|D|` fundamental with `h(D) ≥ threshold`, searching `|D| ≤ limit`.
pub fn least_fundamental_with_class_number_at_least(threshold: u64, limit: u64) -> Option<ClassProfile<i64>> {
    scan_profiles(limit, |p: &ClassProfile<i64>| p.delta.is_fundamental() && p.h >= threshold).into_iter().next()
}

/// Checks that `-8399` is the least fundamental discriminant with `h ≥ 128`,
/// and that every fundamental `|D| ≤ 8000` has `h(D) ≤ 120`.
pub fn verify_star_discriminant() -> CheckReport {
    let started = Instant::now();
    let mut report = CheckReport::new("star_discriminant");
    let limit = STAR_DISCRIMINANT.unsigned_abs();
    let fundamentals = scan_profiles(limit, |p: &ClassProfile<i64>| p.delta.is_fundamental());
    report.candidate_count = fundamentals.len() as u64;

    match fundamentals.last() {
        Some(star) if star.value() == STAR_DISCRIMINANT => {
            report.sub(
                "class number of -8399 at least 128",
                Status::from_bool(star.h >= 128),
                format!("h = {}", star.h),
            );
            report.witnesses.push(vec![star.value(), star.h as i64]);
        }
        _ => report.sub("-8399 is fundamental", Status::Fail, ""),
    }

    let below: Vec<_> = fundamentals
        .iter()
        .filter(|p| p.delta.abs() < limit && p.h >= 128)
        .map(|p| vec![p.value(), p.h as i64])
        .collect();
    report.sub(
        "no smaller fundamental discriminant reaches 128",
        Status::from_bool(below.is_empty()),
        format!("{} violations", below.len()),
    );
    report.witnesses.extend(below);

    let max_small = fundamentals.iter().filter(|p| p.delta.abs() <= 8000).map(|p| p.h).max().unwrap_or(0);
    report.sub(
        "fundamental |D| <= 8000 have h <= 120",
        Status::from_bool(max_small <= 120),
        format!("max h = {max_small}"),
    );
    report.finish(started)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_discriminant_passes() {
        let r = verify_star_discriminant();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.witnesses[0][0], -8399);
        assert!(r.witnesses[0][1] >= 128);
    }

    #[test]
    fn least_with_threshold() {
        let star = least_fundamental_with_class_number_at_least(128, 9000).unwrap();
        assert_eq!(star.value(), STAR_DISCRIMINANT);
        assert_eq!(least_fundamental_with_class_number_at_least(1, 100).unwrap().value(), -3);
    }

    #[test]
    fn neighbouring_thresholds() {
        // no fundamental |D| < 8399 has h = 127, so 127 keeps the minimum
        assert_eq!(least_fundamental_with_class_number_at_least(127, 9000).unwrap().value(), STAR_DISCRIMINANT);
        let below = least_fundamental_with_class_number_at_least(126, 9000).unwrap();
        assert_eq!((below.value(), below.h), (-8279, 126));
    }
}
