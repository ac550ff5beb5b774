//! The catalog of verification checks and the runner that executes them.
//!
//! Every check returns a [`CheckReport`]; transcendental comparisons are
//! made on certified enclosures only, so an enclosure that cannot be
//! separated from zero or from a bound yields `indeterminate`, never `pass`.

mod all_dominant;
mod analytic_checks;
mod bounds;
mod lemma_three;
mod rational;
mod refute;
mod support;
mod two_dominant;

use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

pub use all_dominant::{all_dominant_candidates, check_all_dominant};
pub use analytic_checks::{check_small_lemma, check_threshold_catalog};
pub use bounds::{
    check_class_number_bounds, check_conductor_bound, class_number_bounds_report, conductor_bound_report,
    CONDUCTOR_MODULUS, FUNDAMENTAL_CLASS_BOUND, TWO_ELEMENTARY_BOUND,
};
pub use lemma_three::check_lemma_three;
pub use rational::{check_rational_reduction, quadratic_polynomials, rational_moduli, rational_relation_solutions};
pub use refute::{
    combination, refute_linear_relation, refute_linear_relation_with_cap, refute_with, verdict_of, Verdict,
};
pub use two_dominant::{
    case1_candidates, check_two_dominant_case1, check_two_dominant_listed, listed_candidates, small_case_tuples,
    ListedFilter, CASE1_BOUND, LISTED_COUNT,
};

use crate::discriminants::verify_star_discriminant;
use crate::jfun::{
    set_cache_dir, set_max_coefficients, DEFAULT_MAX_COEFFICIENTS, DEFAULT_PRECISION_BITS, PRECISION_CAP,
};
use crate::report::CheckReport;
use crate::{Error, Result};

/// Runtime settings shared by every check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    pub precision_bits: u32,
    pub precision_cap: u32,
    pub max_coefficients: usize,
    pub jobs: usize,
    pub cache_dir: Option<PathBuf>,
    pub report_path: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            precision_bits: DEFAULT_PRECISION_BITS,
            precision_cap: PRECISION_CAP,
            max_coefficients: DEFAULT_MAX_COEFFICIENTS,
            jobs: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            cache_dir: None,
            report_path: None,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < 16 {
            return Err(Error::InvalidConfig(format!("precision_bits {} is below 16", self.precision_bits)));
        }
        if self.precision_bits > self.precision_cap {
            return Err(Error::InvalidConfig(format!(
                "precision_bits {} exceeds precision_cap {}",
                self.precision_bits, self.precision_cap
            )));
        }
        if self.jobs == 0 {
            return Err(Error::InvalidConfig("jobs must be at least 1".into()));
        }
        if self.max_coefficients < 64 {
            return Err(Error::InvalidConfig(format!("max_coefficients {} is below 64", self.max_coefficients)));
        }
        Ok(())
    }

    /// Pushes the coefficient settings into the process-wide store.
    pub fn apply(&self) {
        set_max_coefficients(self.max_coefficients);
        if let Some(dir) = &self.cache_dir {
            set_cache_dir(Some(dir.clone()));
        }
    }
}

/// Check ids in report order.
pub const CHECK_IDS: [&str; 10] = [
    "class_number_bounds",
    "star_discriminant",
    "conductor_bound",
    "lemma_three",
    "rational_reduction",
    "two_dominant_listed",
    "two_dominant_case1",
    "all_dominant",
    "small_lemma",
    "threshold_catalog",
];

fn dispatch(id: &str, cfg: &Config) -> CheckReport {
    match id {
        "class_number_bounds" => check_class_number_bounds(),
        "star_discriminant" => verify_star_discriminant(),
        "conductor_bound" => check_conductor_bound(),
        "lemma_three" => check_lemma_three(cfg),
        "rational_reduction" => check_rational_reduction(cfg),
        "two_dominant_listed" => check_two_dominant_listed(cfg),
        "two_dominant_case1" => check_two_dominant_case1(cfg),
        "all_dominant" => check_all_dominant(cfg),
        "small_lemma" => check_small_lemma(cfg),
        "threshold_catalog" => check_threshold_catalog(cfg),
        _ => unreachable!("ids are validated before dispatch"),
    }
}

/// Runs one check by id.
pub fn run_check(id: &str, cfg: &Config) -> Result<CheckReport> {
    Ok(run_checks(&[id], cfg)?.remove(0))
}

/// Runs the selected checks concurrently on `cfg.jobs` threads and returns
/// the reports in the order of `ids`.
pub fn run_checks<S: AsRef<str> + Sync>(ids: &[S], cfg: &Config) -> Result<Vec<CheckReport>> {
    cfg.validate()?;
    if let Some(bad) = ids.iter().find(|id| !CHECK_IDS.contains(&id.as_ref())) {
        return Err(Error::UnknownCheck(bad.as_ref().to_owned()));
    }
    cfg.apply();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    Ok(pool.install(|| ids.par_iter().map(|id| dispatch(id.as_ref(), cfg)).collect()))
}

/// Runs every check in [`CHECK_IDS`] order.
pub fn run_all(cfg: &Config) -> Result<Vec<CheckReport>> {
    run_checks(&CHECK_IDS, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(Config::default().validate().is_ok());
        let bad = Config { precision_bits: 1024, precision_cap: 512, ..Config::default() };
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        let bad = Config { jobs: 0, ..Config::default() };
        assert!(bad.validate().is_err());
        assert_eq!(Config::default().max_coefficients, DEFAULT_MAX_COEFFICIENTS);
    }

    #[test]
    fn unknown_id() {
        assert_eq!(run_check("nosuch", &Config::default()), Err(Error::UnknownCheck("nosuch".into())));
    }

    #[test]
    fn selection_by_id_returns_one_report() {
        let r = run_checks(&["conductor_bound"], &Config { jobs: 1, ..Config::default() }).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].check_id, "conductor_bound");
    }
}
