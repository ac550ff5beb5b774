//! Shared machinery for the checks: discriminant census, memoized moduli,
//! precision-escalating filters and refutation bookkeeping.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::refute::{refute_with, Verdict};
use super::Config;
use crate::analytic::{bdsing_interval, ExpTable, ENVELOPE_SLACK};
use crate::ball::{Ball, CertifiedValue};
use crate::discriminants::{factor_discriminant, scan_profiles};
use crate::jfun::{
    all_singular_moduli, dominant_singular_modulus, real_nondominant_singular_moduli, SingularModulusValue,
};
use crate::report::{CheckReport, Status};
use crate::{Error, Profile, Result};

/// Class profiles of every discriminant up to a bound, ascending in `|Δ|`.
pub(crate) struct Census {
    profiles: Vec<Profile>,
}

impl Census {
    pub fn new(bound: u64) -> Self {
        Self { profiles: scan_profiles(bound, |_: &Profile| true) }
    }

    /// Profiles with `lo ≤ |Δ| ≤ hi` passing `keep`, in descending `|Δ|`.
    pub fn descending(&self, lo: u64, hi: u64, keep: impl Fn(&Profile) -> bool) -> Vec<Profile> {
        let mut out: Vec<Profile> =
            self.profiles.iter().filter(|p| (lo..=hi).contains(&p.delta.abs()) && keep(p)).copied().collect();
        out.reverse();
        out
    }
}

/// Non-rational moduli: `h(Δ) ≥ 2`, which forces `|Δ| ≥ 15`.
pub(crate) fn nonrational(p: &Profile) -> bool {
    p.h >= 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Kind {
    Dominant,
    RealNondominant,
    All,
}

type StoreKey = (i64, Kind, u32);

/// Singular moduli memoized by discriminant, kind and precision.
#[derive(Default)]
pub(crate) struct ValueStore {
    map: Mutex<HashMap<StoreKey, Arc<Vec<SingularModulusValue>>>>,
}

impl ValueStore {
    pub fn get(&self, delta: i64, kind: Kind, prec: u32) -> Result<Arc<Vec<SingularModulusValue>>> {
        if let Some(v) = self.map.lock().expect("store lock").get(&(delta, kind, prec)) {
            return Ok(Arc::clone(v));
        }
        let d = factor_discriminant(delta)?;
        let values = match kind {
            Kind::Dominant => vec![dominant_singular_modulus(&d, prec)?],
            Kind::RealNondominant => real_nondominant_singular_moduli(&d, prec)?,
            Kind::All => all_singular_moduli(&d, prec)?,
        };
        let values = Arc::new(values);
        self.map.lock().expect("store lock").insert((delta, kind, prec), Arc::clone(&values));
        Ok(values)
    }

    /// Evaluates in parallel ahead of use; failures surface later on `get`.
    pub fn prefetch(&self, keys: &[(i64, Kind)], prec: u32) {
        keys.par_iter().for_each(|&(d, kind)| {
            let _ = self.get(d, kind, prec);
        });
    }
}

/// A reference to one singular modulus inside a [`ValueStore`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Term {
    pub delta: i64,
    pub kind: Kind,
    pub index: usize,
}

impl Term {
    pub fn dominant(delta: i64) -> Self {
        Self { delta, kind: Kind::Dominant, index: 0 }
    }

    pub fn value(&self, store: &ValueStore, prec: u32) -> Result<CertifiedValue> {
        Ok(store.get(self.delta, self.kind, prec)?[self.index].value.clone())
    }
}

/// A relation `Σ signs[i]·terms[i] = 0` to refute.
#[derive(Clone, Debug)]
pub(crate) struct Relation {
    pub label: String,
    pub terms: Vec<Term>,
    pub signs: Vec<i64>,
}

/// Outcome counts for a batch of refutations.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub attempted: usize,
    pub refuted: usize,
    pub escalated: usize,
    pub max_prec: u32,
    pub unresolved: Vec<String>,
}

impl Tally {
    pub fn record(&mut self, label: &str, verdict: &Verdict, tried: &[u32]) {
        self.attempted += 1;
        self.max_prec = self.max_prec.max(verdict.precision_bits());
        if tried.len() > 1 {
            self.escalated += 1;
        }
        if verdict.is_refuted() {
            self.refuted += 1;
        } else {
            self.unresolved.push(label.to_owned());
        }
    }

    /// Folds the tally into `report` as sub-check `name`.
    pub fn apply(&self, report: &mut CheckReport, name: &str) {
        let status = if self.unresolved.is_empty() { Status::Pass } else { Status::Indeterminate };
        report.precision_bits = report.precision_bits.max(self.max_prec);
        report.sub(
            name,
            status,
            format!("{} of {} relations refuted, {} escalated", self.refuted, self.attempted, self.escalated),
        );
        for label in self.unresolved.iter().take(20) {
            report.note(format!("unresolved: {label}"));
        }
    }
}

/// Refutes every relation, escalating each from the configured precision.
pub(crate) fn refute_all(relations: &[Relation], store: &ValueStore, cfg: &Config) -> Tally {
    let keys: BTreeSet<(i64, Kind)> =
        relations.iter().flat_map(|r| r.terms.iter().map(|t| (t.delta, t.kind))).collect();
    store.prefetch(&keys.into_iter().collect::<Vec<_>>(), cfg.precision_bits);
    let outcomes: Vec<(Verdict, Vec<u32>)> = relations
        .par_iter()
        .map(|r| {
            refute_with(&r.signs, cfg.precision_bits, cfg.precision_cap, |p| {
                r.terms.iter().map(|t| t.value(store, p)).collect()
            })
        })
        .collect();
    let mut tally = Tally::default();
    for (r, (verdict, tried)) in relations.iter().zip(&outcomes) {
        tally.record(&r.label, verdict, tried);
    }
    tally
}

/// Runs `f` against an [`ExpTable`] up to `max`, doubling the precision
/// while `f` reports an undecided comparison.
pub(crate) fn with_table<R>(max: u64, cfg: &Config, id: &str, f: impl Fn(&ExpTable) -> Option<R>) -> Result<(R, u32)> {
    let mut prec = cfg.precision_bits.min(cfg.precision_cap);
    loop {
        let table = ExpTable::new(max, prec);
        if let Some(r) = f(&table) {
            return Ok((r, prec));
        }
        if prec >= cfg.precision_cap {
            return Err(Error::Indeterminate { id: id.to_owned(), args: vec![max], precision_bits: prec });
        }
        prec = (prec * 2).min(cfg.precision_cap);
    }
}

/// Whether `Σ coeffs[i]·xᵢ = 0` is compatible with `|xᵢ| ∈ [lowerᵢ, upperᵢ]`:
/// `false` only if some `|cᵢ|·lowerᵢ` certifiably exceeds `Σ_{j≠i} |cⱼ|·upperⱼ`.
pub(crate) fn envelope_compatible(coeffs: &[i64], envelopes: &[(Ball, Ball)]) -> bool {
    (0..coeffs.len()).all(|i| {
        let lhs = envelopes[i].0.mul_i64(coeffs[i].abs());
        let prec = lhs.prec();
        let rhs = (0..coeffs.len())
            .filter(|&j| j != i)
            .fold(Ball::zero(prec), |acc, j| &acc + &envelopes[j].1.mul_i64(coeffs[j].abs()));
        rhs.lt(&lhs) != Some(true)
    })
}

/// `e^{π√d₁} − s ≤ (e^{π√a} + s) + (e^{π√b} + s) + (e^{π√c/2} + s)`, the
/// envelope budget when the last modulus is not dominant.
pub(crate) fn budget_with_half(t: &ExpTable, slack: i64, d1: u64, a: u64, b: u64, c: u64) -> Option<bool> {
    let lhs = t.full(d1).add_i64(-slack);
    let rhs = (&(t.full(a) + t.full(b)) + t.half(c)).add_i64(3 * slack);
    lhs.le(&rhs)
}

/// `e^{π√d₁} − K ≤ Σ (e^{π√dᵢ} + K)` over three dominant moduli.
pub(crate) fn budget_dominant(t: &ExpTable, d1: u64, a: u64, b: u64, c: u64) -> Option<bool> {
    let lhs = t.full(d1).add_i64(-ENVELOPE_SLACK);
    let rhs = (&(t.full(a) + t.full(b)) + t.full(c)).add_i64(3 * ENVELOPE_SLACK);
    lhs.le(&rhs)
}

/// The three choices of `(ε₁, ε₂, ε₃)` with exactly one `−1`.
pub(crate) const ONE_NEGATIVE: [[i64; 3]; 3] = [[-1, 1, 1], [1, -1, 1], [1, 1, -1]];

/// Sorts tuples by the absolute values of their entries.
pub(crate) fn sort_by_abs(tuples: &mut [Vec<i64>]) {
    tuples.sort_by_key(|w| w.iter().map(|d| d.unsigned_abs()).collect::<Vec<_>>());
}

/// Precision of envelope filters; an undecided comparison keeps the
/// candidate, so this only affects how many survive.
pub(crate) const FILTER_PRECISION: u32 = 128;

/// Envelopes `e^{π√|Δ|/a} ∓ 2079` of each modulus.
pub(crate) fn envelopes_of(values: &[SingularModulusValue]) -> Vec<(Ball, Ball)> {
    values.iter().map(|v| bdsing_interval(v.delta.abs(), v.denominator() as u64, FILTER_PRECISION)).collect()
}

/// Converts an evaluation error into a report outcome.
pub(crate) fn error_status(report: &mut CheckReport, name: &str, e: &Error) {
    let status = match e {
        Error::Indeterminate { .. } | Error::PrecisionExhausted(_) | Error::NonRealValue(_) => Status::Indeterminate,
        _ => Status::Fail,
    };
    report.sub(name, status, e.to_string());
}
