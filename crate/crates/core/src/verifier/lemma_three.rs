//! `2x₁ = x₂ + x₃` has no solution in pairwise distinct singular moduli.
//!
//! Four sub-checks, following the reduction by the degree of `x₁`:
//! rational `x₁`; a rational term on the right, which forces two
//! quadratic moduli with the same field and a ratio of conjugate
//! differences equal to 2; three quadratic moduli over one field with
//! `Δ₂ ≠ Δ₃`; and `x₁` quadratic with `x₂, x₃` conjugate of degree 4.
//!
//! In the last sub-check a pair `(Δ₁, Δ₂)` is a candidate when the dominant
//! `x₂` can satisfy `|x₂| ≤ 2|x₁| + |x₃|`. Every assignment of moduli for a
//! candidate is refuted, and so is every assignment of any other pair that
//! fits all three envelopes.

use std::collections::BTreeMap;
use std::time::Instant;

use rug::Integer;

use super::rational::{doubled_rational_traces, quadratic_polynomials, rational_moduli};
use super::support::{
    envelope_compatible, envelopes_of, error_status, refute_all, sort_by_abs, Kind, Relation, Term, ValueStore,
};
use super::Config;
use crate::ball::Ball;
use crate::discriminants::{class_number_list, factor_discriminant};
use crate::jfun::{dominant_singular_modulus, quadratic_field_kernel, IntegerPolynomial};
use crate::report::{CheckReport, Status};
use crate::Result;

const SIGNS: [i64; 3] = [2, -1, -1];

/// Runs all four sub-checks.
pub fn check_lemma_three(cfg: &Config) -> CheckReport {
    let started = Instant::now();
    let mut report = CheckReport::new("lemma_three");
    report.precision_bits = cfg.precision_bits;
    let store = ValueStore::default();
    if let Err(e) = rational_case(cfg, &mut report) {
        error_status(&mut report, "rational x1", &e);
    }
    let quadratics = match quadratic_polynomials(cfg) {
        Ok(q) => q,
        Err(e) => {
            error_status(&mut report, "class polynomials of class number 2", &e);
            return report.finish(started);
        }
    };
    match kernel_classes(&quadratics) {
        Ok(classes) => {
            ratio_case(&quadratics, &classes, &mut report);
            if let Err(e) = same_field_case(&classes, &store, cfg, &mut report) {
                error_status(&mut report, "quadratic moduli over one field", &e);
            }
        }
        Err(e) => error_status(&mut report, "field kernels", &e),
    }
    if let Err(e) = mixed_degree_case(&store, cfg, &mut report) {
        error_status(&mut report, "quadratic x1, quartic x2 and x3", &e);
    }
    report.finish(started)
}

fn rational_case(cfg: &Config, report: &mut CheckReport) -> Result<()> {
    let rational = rational_moduli(cfg)?;
    let n = rational.len();
    let mut hits = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                if i != j
                    && i != k
                    && Integer::from(&rational[i].1 * 2) == Integer::from(&rational[j].1 + &rational[k].1)
                {
                    hits.push(vec![rational[i].0, rational[j].0, rational[k].0]);
                }
            }
        }
    }
    report.sub(
        "rational x1, x2, x3",
        Status::from_bool(hits.is_empty()),
        format!("{} triples, {} solutions", n * n * n, hits.len()),
    );
    let quadratics = quadratic_polynomials(cfg)?;
    let traces = doubled_rational_traces(&rational, &quadratics);
    report.sub(
        "rational x1 with conjugate quadratic x2, x3",
        Status::from_bool(traces.is_empty()),
        format!("{} pairs, {} solutions", n * quadratics.len(), traces.len()),
    );
    report.witnesses.extend(hits);
    report.witnesses.extend(traces);
    Ok(())
}

/// Discriminants of class number 2 grouped by the squarefree kernel of
/// their field of moduli.
fn kernel_classes(quadratics: &[(i64, IntegerPolynomial)]) -> Result<BTreeMap<Integer, Vec<i64>>> {
    let mut classes: BTreeMap<Integer, Vec<i64>> = BTreeMap::new();
    for (delta, _) in quadratics {
        let k = quadratic_field_kernel(&factor_discriminant(*delta)?)?;
        classes.entry(k).or_default().push(*delta);
    }
    Ok(classes)
}

/// `(x₁ − x₁')² = 4(x₃ − x₃')²` compares polynomial discriminants exactly.
fn ratio_case(
    quadratics: &[(i64, IntegerPolynomial)],
    classes: &BTreeMap<Integer, Vec<i64>>,
    report: &mut CheckReport,
) {
    let disc: BTreeMap<i64, Integer> =
        quadratics.iter().map(|(d, p)| (*d, p.quadratic_discriminant().expect("degree 2"))).collect();
    let mut pairs = 0usize;
    let mut hits = Vec::new();
    for members in classes.values() {
        for &d1 in members {
            for &d3 in members {
                if d1 == d3 {
                    continue;
                }
                pairs += 1;
                if disc[&d1] == Integer::from(&disc[&d3] * 4) {
                    hits.push(vec![d1, d3]);
                }
            }
        }
    }
    report.sub(
        "ratio of conjugate differences equal to 2",
        Status::from_bool(hits.is_empty()),
        format!("{pairs} ordered pairs over {} fields, {} solutions", classes.len(), hits.len()),
    );
    report.witnesses.extend(hits);
}

fn same_field_case(
    classes: &BTreeMap<Integer, Vec<i64>>,
    store: &ValueStore,
    cfg: &Config,
    report: &mut CheckReport,
) -> Result<()> {
    let mut relations = Vec::new();
    let mut survivors = Vec::new();
    let mut combos = 0usize;
    for members in classes.values() {
        for &d1 in members {
            for (a, &d2) in members.iter().enumerate() {
                for &d3 in &members[a + 1..] {
                    let mut kept = false;
                    for t in triples([d1, d2, d3], store, cfg)? {
                        combos += 1;
                        let values: Vec<_> = t
                            .iter()
                            .map(|t| store.get(t.delta, t.kind, cfg.precision_bits).map(|v| v[t.index].clone()))
                            .collect::<Result<_>>()?;
                        if envelope_compatible(&SIGNS, &envelopes_of(&values)) {
                            kept = true;
                            relations.push(Relation { label: label(&t), terms: t.to_vec(), signs: SIGNS.to_vec() });
                        }
                    }
                    if kept {
                        survivors.push(sorted_by_abs(vec![d1, d2, d3]));
                    }
                }
            }
        }
    }
    report.note(format!("same field: {combos} conjugate assignments, {} compatible", relations.len()));
    let tally = refute_all(&relations, store, cfg);
    tally.apply(report, "quadratic moduli over one field with distinct discriminants on the right");
    sort_by_abs(&mut survivors);
    report.candidate_count += survivors.len() as u64;
    report.witnesses.extend(survivors);
    Ok(())
}

fn mixed_degree_case(store: &ValueStore, cfg: &Config, report: &mut CheckReport) -> Result<()> {
    let quadratic = class_number_list(2)?;
    let quartic = class_number_list(4)?;
    let mut relations = Vec::new();
    let mut pairs = Vec::new();
    let mut two_sided = 0usize;
    for d1 in &quadratic {
        for d2 in &quartic {
            if d1.fundamental() == d2.fundamental() {
                continue;
            }
            let m1 = envelopes_of(&store.get(d1.value(), Kind::All, cfg.precision_bits)?);
            let m2 = envelopes_of(&store.get(d2.value(), Kind::All, cfg.precision_bits)?);
            let candidate = dominant_within_reach(&m1, &m2);
            let mut compatible = false;
            for t in triples([d1.value(), d2.value(), d2.value()], store, cfg)? {
                let envelopes = [m1[t[0].index].clone(), m2[t[1].index].clone(), m2[t[2].index].clone()];
                let fits = envelope_compatible(&SIGNS, &envelopes);
                compatible |= fits;
                if candidate || fits {
                    relations.push(Relation { label: label(&t), terms: t.to_vec(), signs: SIGNS.to_vec() });
                }
            }
            two_sided += usize::from(compatible);
            if candidate {
                pairs.push(vec![d1.value(), d2.value()]);
            }
        }
    }
    sort_by_abs(&mut pairs);
    report.note(format!("{two_sided} pairs admit an assignment within all three envelopes"));
    let listed = pairs.contains(&vec![-235, -240]);
    report.sub(
        "candidates include (-235, -240)",
        Status::from_bool(listed),
        format!("{} pairs of {} x {} discriminants", pairs.len(), quadratic.len(), quartic.len()),
    );
    let tally = refute_all(&relations, store, cfg);
    tally.apply(report, "quadratic x1 with conjugate quartic x2, x3");

    let x1 = dominant_singular_modulus(&factor_discriminant(-235i64)?, cfg.precision_bits)?;
    let x2 = dominant_singular_modulus(&factor_discriminant(-240i64)?, cfg.precision_bits)?;
    let signs = x1.value.re.is_negative() && x2.value.re.is_positive();
    report.sub("dominant x1 < 0 < x2 for (-235, -240)", if signs { Status::Pass } else { Status::Indeterminate }, "");

    report.candidate_count += pairs.len() as u64;
    report.witnesses.extend(pairs);
    Ok(())
}

/// Whether `|x₂| ≤ 2|x₁| + |x₃|` is possible with `x₂` the dominant modulus
/// of the quartic discriminant, `x₃` another of its moduli and `x₁` any
/// modulus of the quadratic one.
fn dominant_within_reach(m1: &[(Ball, Ball)], m2: &[(Ball, Ball)]) -> bool {
    m1.iter().any(|(_, up1)| m2[1..].iter().any(|(_, up3)| (&up1.mul_i64(2) + up3).lt(&m2[0].0) != Some(true)))
}

/// Every assignment of pairwise distinct moduli of the three discriminants.
fn triples(deltas: [i64; 3], store: &ValueStore, cfg: &Config) -> Result<Vec<[Term; 3]>> {
    let counts: Vec<usize> =
        deltas.iter().map(|&d| store.get(d, Kind::All, cfg.precision_bits).map(|v| v.len())).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for i in 0..counts[0] {
        for j in 0..counts[1] {
            for k in 0..counts[2] {
                let t = [
                    Term { delta: deltas[0], kind: Kind::All, index: i },
                    Term { delta: deltas[1], kind: Kind::All, index: j },
                    Term { delta: deltas[2], kind: Kind::All, index: k },
                ];
                if t[0] != t[1] && t[0] != t[2] && t[1] != t[2] {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

fn label(t: &[Term; 3]) -> String {
    format!("2*x({},{}) - x({},{}) - x({},{})", t[0].delta, t[0].index, t[1].delta, t[1].index, t[2].delta, t[2].index)
}

fn sorted_by_abs(mut v: Vec<i64>) -> Vec<i64> {
    v[1..].sort_by_key(|d| d.unsigned_abs());
    v
}
