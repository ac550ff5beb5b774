//! Reports for the one-variable analytic facts: the small lemma and the
//! threshold catalog.

use std::time::Instant;

use super::support::error_status;
use super::Config;
use crate::analytic::{
    catalog, direct_gap, inequality_holds, small_lemma_closed_form, threshold_max, verify_small_lemma, InequalityKind,
    SmallLemmaOutcome,
};
use crate::report::{CheckReport, Status};
use crate::{Error, Result};

/// Subdivision depth for the small lemma on `[2, 5]`.
const SMALL_LEMMA_DEPTH: u32 = 40;

/// Certifies `e^{π√d} − e^{π√(d−1)} > e^{π√d}/√d` for `d ≥ 2`: by
/// subdivision on `[2, 5]` and by the closed-form lower bound beyond.
pub fn check_small_lemma(cfg: &Config) -> CheckReport {
    let started = Instant::now();
    let mut report = CheckReport::new("small_lemma");
    report.precision_bits = 128;
    match verify_small_lemma(2.0, 5.0, SMALL_LEMMA_DEPTH, false) {
        Ok(SmallLemmaOutcome::Certified { pieces, max_depth }) => {
            report.candidate_count = pieces as u64;
            report.sub("subdivision of [2, 5]", Status::Pass, format!("{pieces} pieces, depth {max_depth}"));
        }
        Ok(SmallLemmaOutcome::Refuted { at }) => {
            report.sub("subdivision of [2, 5]", Status::Fail, format!("fails at {at}"))
        }
        Err(e) => error_status(&mut report, "subdivision of [2, 5]", &e),
    }
    let prec = cfg.precision_bits.clamp(128, cfg.precision_cap.max(128));
    report.sub(
        "closed-form bound for d >= 5",
        if small_lemma_closed_form(prec).is_positive() { Status::Pass } else { Status::Indeterminate },
        "",
    );
    let samples = [2u64, 3, 4, 5, 15, 192, 7392];
    let failed: Vec<u64> = samples.iter().copied().filter(|&d| !direct_gap(d, prec).is_positive()).collect();
    report.sub(
        "direct evaluation at sample points",
        if failed.is_empty() { Status::Pass } else { Status::Indeterminate },
        format!("{} points, unresolved {failed:?}", samples.len()),
    );
    report.finish(started)
}

/// Doubles the precision from the configured start while `f` is
/// indeterminate.
fn escalate<T>(cfg: &Config, mut f: impl FnMut(u32) -> Result<T>) -> Result<(T, u32)> {
    let mut prec = cfg.precision_bits.min(cfg.precision_cap);
    loop {
        match f(prec) {
            Err(Error::Indeterminate { .. }) if prec < cfg.precision_cap => prec = (prec * 2).min(cfg.precision_cap),
            other => return other.map(|v| (v, prec)),
        }
    }
}

/// Solves every threshold entry and checks it against its claimed bound,
/// and certifies every constant entry. Witnesses are `[value, claimed]`
/// pairs in catalog order.
pub fn check_threshold_catalog(cfg: &Config) -> CheckReport {
    let started = Instant::now();
    let mut report = CheckReport::new("threshold_catalog");
    let mut max_prec = 0;
    for entry in catalog() {
        match entry.kind {
            InequalityKind::Threshold | InequalityKind::Scaled { .. } => {
                let claimed = entry.claimed.expect("threshold entries carry a claim");
                report.candidate_count += 1;
                match escalate(cfg, |p| threshold_max(entry.id, p)) {
                    Ok((value, prec)) => {
                        max_prec = max_prec.max(prec);
                        report.witnesses.push(vec![value as i64, claimed as i64]);
                        report.sub(entry.id, Status::from_bool(value <= claimed), format!("{value} <= {claimed}"));
                    }
                    Err(e) => error_status(&mut report, entry.id, &e),
                }
            }
            InequalityKind::Constant => {
                report.candidate_count += 1;
                match escalate(cfg, |p| inequality_holds(entry.id, &[], p)) {
                    Ok((holds, prec)) => {
                        max_prec = max_prec.max(prec);
                        report.sub(entry.id, Status::from_bool(holds), entry.formula);
                    }
                    Err(e) => error_status(&mut report, entry.id, &e),
                }
            }
            InequalityKind::Filter => {}
        }
    }
    report.precision_bits = max_prec;
    report.finish(started)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lemma_passes() {
        let r = check_small_lemma(&Config::default());
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn catalog_passes() {
        let r = check_threshold_catalog(&Config { precision_bits: 128, ..Config::default() });
        assert!(r.passed(), "{:?}", r.notes);
        assert!(r.witnesses.contains(&vec![7429, 7429]));
        assert!(r.witnesses.contains(&vec![192, 192]));
    }

    #[test]
    fn tiny_cap_is_never_a_pass() {
        let r = check_threshold_catalog(&Config { precision_bits: 16, precision_cap: 16, ..Config::default() });
        assert_ne!(r.status, Status::Fail, "{:?}", r.notes);
        assert_ne!(r.status, Status::Pass);
    }
}
