//! `x₁ − x₂ = x₃ − x₄` with all four moduli dominant and all four
//! discriminants 2-elementary.

use std::time::Instant;

use super::bounds::TWO_ELEMENTARY_BOUND;
use super::support::{
    budget_dominant, error_status, nonrational, refute_all, sort_by_abs, with_table, Census, Relation, Term,
    ValueStore, ONE_NEGATIVE,
};
use super::Config;
use crate::report::{CheckReport, Status};
use crate::{Profile, Result};

/// Enumerates pairwise distinct non-rational 2-elementary `(Δ₁, Δ₂, Δ₃, Δ₄)` with
/// `|Δ₁| > |Δ₂| > |Δ₃| > |Δ₄| ≥ 15`, `|Δ₁| ≤ 7392`, fundamental
/// discriminants not all equal, and `e^{π√|Δ₁|} − 2079 ≤ Σ (e^{π√|Δᵢ|} + 2079)`.
pub fn all_dominant_candidates(cfg: &Config) -> Result<(Vec<Vec<i64>>, u32)> {
    let census = Census::new(TWO_ELEMENTARY_BOUND);
    let two: Vec<Profile> = census.descending(15, TWO_ELEMENTARY_BOUND, |p| nonrational(p) && p.two_elementary);
    let (mut tuples, prec) = with_table(TWO_ELEMENTARY_BOUND, cfg, "all_dominant_budget", |t| {
        let mut out = Vec::new();
        for (a, p1) in two.iter().enumerate() {
            let d1 = p1.delta.abs();
            let rest = &two[a + 1..];
            for (b, p2) in rest.iter().enumerate() {
                let d2 = p2.delta.abs();
                let (Some(n3), Some(n4)) = (rest.get(b + 1), rest.get(b + 2)) else {
                    break;
                };
                if !budget_dominant(t, d1, d2, n3.delta.abs(), n4.delta.abs())? {
                    break;
                }
                for (c, p3) in rest[b + 1..].iter().enumerate() {
                    let d3 = p3.delta.abs();
                    let Some(n4) = rest.get(b + c + 2) else { break };
                    if !budget_dominant(t, d1, d2, d3, n4.delta.abs())? {
                        break;
                    }
                    for p4 in &rest[b + c + 2..] {
                        if !budget_dominant(t, d1, d2, d3, p4.delta.abs())? {
                            break;
                        }
                        let f = p1.delta.fundamental();
                        if [p2, p3, p4].iter().all(|p| p.delta.fundamental() == f) {
                            continue;
                        }
                        out.push(vec![p1.value(), p2.value(), p3.value(), p4.value()]);
                    }
                }
            }
        }
        Some(out)
    })?;
    sort_by_abs(&mut tuples);
    Ok((tuples, prec))
}

/// Enumerates the candidate tuples and refutes every placement of the
/// single negative sign among `x₂, x₃, x₄` in `x₁ = ±x₂ ± x₃ ± x₄`.
pub fn check_all_dominant(cfg: &Config) -> CheckReport {
    let started = Instant::now();
    let mut report = CheckReport::new("all_dominant");
    report.precision_bits = cfg.precision_bits;
    if let Err(e) = run(cfg, &mut report) {
        error_status(&mut report, "all-dominant tuples", &e);
    }
    report.finish(started)
}

fn run(cfg: &Config, report: &mut CheckReport) -> Result<()> {
    let (tuples, prec) = all_dominant_candidates(cfg)?;
    report.precision_bits = report.precision_bits.max(prec);
    report.sub("candidate enumeration", Status::Pass, format!("{} tuples", tuples.len()));
    let relations: Vec<Relation> = tuples
        .iter()
        .flat_map(|t| {
            ONE_NEGATIVE.iter().map(move |eps| Relation {
                label: format!("x({}) = {:+}x({}) {:+}x({}) {:+}x({})", t[0], eps[0], t[1], eps[1], t[2], eps[2], t[3]),
                terms: t.iter().map(|&d| Term::dominant(d)).collect(),
                signs: vec![1, -eps[0], -eps[1], -eps[2]],
            })
        })
        .collect();
    let store = ValueStore::default();
    refute_all(&relations, &store, cfg).apply(report, "every sign pattern refuted");
    report.candidate_count = tuples.len() as u64;
    report.witnesses = tuples;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::inequality_holds;
    use crate::discriminants::{class_profile, factor_discriminant};

    #[test]
    fn candidates_are_admissible() {
        let (tuples, _) = all_dominant_candidates(&Config::default()).unwrap();
        assert!(!tuples.is_empty());
        for t in &tuples {
            let ds: Vec<_> = t.iter().map(|&d| factor_discriminant(d).unwrap()).collect();
            assert!(ds.iter().all(|d| class_profile(d).two_elementary && class_profile(d).h >= 2));
            assert!(ds.windows(2).all(|w| w[0].abs() > w[1].abs()));
            assert!(ds.iter().any(|d| d.fundamental() != ds[0].fundamental()));
            let args: Vec<u64> = ds.iter().map(|d| d.abs()).collect();
            assert!(inequality_holds("all_dominant_budget", &args, 768).unwrap());
        }
    }
}
