//! Exact class-number and conductor bounds.

use std::time::Instant;

use crate::discriminants::{scan_profiles, CLASS_NUMBER_32_BOUND};
use crate::report::{CheckReport, Status};
use crate::Profile;

/// Largest `|Δ|` of a 2-elementary discriminant with `h ≤ 16`.
pub const TWO_ELEMENTARY_BOUND: u64 = 7392;

/// Bound on `h(D)` for fundamental `|D| ≤ 8000`.
pub const FUNDAMENTAL_CLASS_BOUND: u64 = 120;

/// Divisibility shape of conductors of 2-elementary discriminants: `2³·3·5·7`.
pub const CONDUCTOR_MODULUS: i64 = 840;

/// Class-number bounds with the default constants.
pub fn check_class_number_bounds() -> CheckReport {
    class_number_bounds_report(FUNDAMENTAL_CLASS_BOUND, TWO_ELEMENTARY_BOUND)
}

/// Checks `h(D) ≤ fundamental_bound` for fundamental `|D| ≤ 8000` and
/// `|Δ| ≤ abs_bound` for every 2-elementary `Δ` with `h(Δ) ≤ 16`, scanning
/// up to the range in which `h ≤ 32` is complete.
pub fn class_number_bounds_report(fundamental_bound: u64, abs_bound: u64) -> CheckReport {
    let started = Instant::now();
    let mut report = CheckReport::new("class_number_bounds");

    let fundamentals = scan_profiles(8000, |p: &Profile| p.delta.is_fundamental());
    let (worst, max_h) = fundamentals.iter().map(|p| (p.value(), p.h)).max_by_key(|&(_, h)| h).unwrap_or((0, 0));
    let over: Vec<&Profile> = fundamentals.iter().filter(|p| p.h > fundamental_bound).collect();
    report.sub(
        &format!("fundamental |D| <= 8000 have h <= {fundamental_bound}"),
        Status::from_bool(over.is_empty()),
        format!("{} fundamental discriminants, max h = {max_h} at {worst}", fundamentals.len()),
    );

    let listed = scan_profiles(CLASS_NUMBER_32_BOUND, |p: &Profile| p.two_elementary && p.h <= 16);
    report.candidate_count = listed.len() as u64;
    report.witnesses = listed.iter().map(|p| vec![p.value()]).collect();
    let beyond: Vec<i64> = listed.iter().filter(|p| p.delta.abs() > abs_bound).map(|p| p.value()).collect();
    let largest = listed.last().map(|p| p.value()).unwrap_or(0);
    report.sub(
        &format!("2-elementary with h <= 16 have |D| <= {abs_bound}"),
        Status::from_bool(beyond.is_empty()),
        format!(
            "{} discriminants up to {CLASS_NUMBER_32_BOUND}, largest {largest}, {} beyond",
            listed.len(),
            beyond.len()
        ),
    );
    report.finish(started)
}

/// Conductor bound with the default constant.
pub fn check_conductor_bound() -> CheckReport {
    conductor_bound_report(8)
}

/// Checks `f ≤ max_conductor` and `f | 840` for every 2-elementary `Δ`
/// with `|Δ| ≤ 7392`.
pub fn conductor_bound_report(max_conductor: i64) -> CheckReport {
    let started = Instant::now();
    let mut report = CheckReport::new("conductor_bound");
    let listed = scan_profiles(TWO_ELEMENTARY_BOUND, |p: &Profile| p.two_elementary);
    report.candidate_count = listed.len() as u64;

    let largest = listed.iter().map(|p| p.delta.conductor()).max().unwrap_or(1);
    report.witnesses = listed
        .iter()
        .filter(|p| p.delta.conductor() == largest)
        .map(|p| vec![p.value(), p.delta.fundamental(), p.delta.conductor()])
        .collect();
    let too_big = listed.iter().filter(|p| p.delta.conductor() > max_conductor).count();
    report.sub(
        &format!("conductor <= {max_conductor}"),
        Status::from_bool(too_big == 0),
        format!("max conductor {largest}, {too_big} exceed"),
    );
    let bad_shape = listed.iter().filter(|p| CONDUCTOR_MODULUS % p.delta.conductor() != 0).count();
    report.sub("conductor divides 840", Status::from_bool(bad_shape == 0), format!("{bad_shape} violations"));
    report.finish(started)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminants::{class_profile, factor_discriminant};

    #[test]
    fn class_number_bounds() {
        let r = check_class_number_bounds();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.witnesses.last(), Some(&vec![-7392]));
        assert_eq!(r.candidate_count, 101);
        assert_eq!(class_number_bounds_report(120, 7391).status, Status::Fail);
        assert_eq!(class_number_bounds_report(119, 7392).status, Status::Fail);
    }

    #[test]
    fn conductor_bound() {
        let r = check_conductor_bound();
        assert!(r.passed(), "{r:?}");
        assert!(r.witnesses.iter().all(|w| w[2] == 8));
        let p192 = class_profile(&factor_discriminant(-192i64).unwrap());
        assert_eq!(r.witnesses.contains(&vec![-192, -3, 8]), p192.two_elementary);
        assert_eq!(conductor_bound_report(7).status, Status::Fail);
    }
}
