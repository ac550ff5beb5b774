//! Explicit analytic estimates for singular moduli and the inequalities
//! built from them.
//!
//! Every quantity here is a certified [`Ball`]; a comparison that cannot be
//! decided at the given precision is reported as [`Error::Indeterminate`]
//! and never guessed.
//!
//! [`Error::Indeterminate`]: crate::Error::Indeterminate

mod catalog;
mod envelope;
mod small;

pub use catalog::{
    catalog, inequality_holds, lookup, solve_thresholds, threshold_max, InequalityKind, NamedInequality, Relation,
    ThresholdOutcome,
};
pub use envelope::{bdfund_upper, bdsing_interval, ExpTable, ENVELOPE_SLACK};
pub use small::{certify_on_interval, direct_gap, small_lemma_closed_form, verify_small_lemma, SmallLemmaOutcome};
