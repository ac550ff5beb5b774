//! Relations among rational singular moduli and quadratic traces, decided
//! in exact integer arithmetic.

use std::time::Instant;

use rug::Integer;

use super::support::error_status;
use super::Config;
use crate::discriminants::class_number_list;
use crate::jfun::{class_polynomial_with_cap, IntegerPolynomial};
use crate::report::{CheckReport, Status};
use crate::Result;

/// The thirteen rational singular moduli with their discriminants.
pub fn rational_moduli(cfg: &Config) -> Result<Vec<(i64, Integer)>> {
    class_number_list(1)?
        .iter()
        .map(|d| {
            let p = class_polynomial_with_cap(d, cfg.precision_bits, cfg.precision_cap)?;
            Ok((d.value(), -p.coefficients()[0].clone()))
        })
        .collect()
}

/// Class polynomials of every discriminant with `h = 2`.
pub fn quadratic_polynomials(cfg: &Config) -> Result<Vec<(i64, IntegerPolynomial)>> {
    class_number_list(2)?
        .iter()
        .map(|d| Ok((d.value(), class_polynomial_with_cap(d, cfg.precision_bits, cfg.precision_cap)?)))
        .collect()
}

/// Solutions `(i, j, k, l, m)` of `ε₁x_j + ε₂x_k + ε₃x_l = x_i` over
/// `values`, where `m` is the position of the single `ε = −1`.
pub fn rational_relation_solutions(values: &[Integer], require_distinct: bool) -> Vec<[usize; 5]> {
    let n = values.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if require_distinct {
                        let idx = [i, j, k, l];
                        if (0..4).any(|a| (a + 1..4).any(|b| idx[a] == idx[b])) {
                            continue;
                        }
                    }
                    for m in 0..3 {
                        let mut sum = Integer::new();
                        for (pos, &t) in [j, k, l].iter().enumerate() {
                            if pos == m {
                                sum -= &values[t];
                            } else {
                                sum += &values[t];
                            }
                        }
                        if sum == values[i] {
                            out.push([i, j, k, l, m]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Rational reduction with the configured precision.
pub fn check_rational_reduction(cfg: &Config) -> CheckReport {
    let started = Instant::now();
    let mut report = CheckReport::new("rational_reduction");
    report.precision_bits = cfg.precision_bits;
    if let Err(e) = run(cfg, &mut report) {
        error_status(&mut report, "class polynomials", &e);
    }
    report.finish(started)
}

fn run(cfg: &Config, report: &mut CheckReport) -> Result<()> {
    let rational = rational_moduli(cfg)?;
    let values: Vec<Integer> = rational.iter().map(|(_, v)| v.clone()).collect();
    let solutions = rational_relation_solutions(&values, true);
    report.candidate_count = (values.len() as u64).pow(4) * 3;
    report.sub(
        "three rational moduli summing to a fourth with one sign flipped",
        Status::from_bool(solutions.is_empty()),
        format!("{} solutions over {} rational moduli", solutions.len(), values.len()),
    );
    for s in &solutions {
        report.witnesses.push(s[..4].iter().map(|&i| rational[i].0).collect());
    }

    let quadratics = quadratic_polynomials(cfg)?;
    let mut hits = Vec::new();
    for (delta, poly) in &quadratics {
        let trace = poly.trace();
        for (a, (da, xa)) in rational.iter().enumerate() {
            for (db, xb) in &rational[a + 1..] {
                if Integer::from(xa + xb) == trace {
                    hits.push(vec![*da, *db, *delta]);
                }
            }
        }
    }
    report.sub(
        "two rational moduli summing to a quadratic trace",
        Status::from_bool(hits.is_empty()),
        format!("{} solutions against {} quadratic discriminants", hits.len(), quadratics.len()),
    );
    report.witnesses.extend(hits);
    Ok(())
}

/// `2·x` for every rational modulus is not the trace of any `h = 2` class
/// polynomial; returned as offending `(Δ₁, Δ₂)` pairs.
pub(crate) fn doubled_rational_traces(
    rational: &[(i64, Integer)],
    quadratics: &[(i64, IntegerPolynomial)],
) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for (d1, x) in rational {
        let doubled = Integer::from(x * 2);
        for (d2, poly) in quadratics {
            if poly.trace() == doubled {
                out.push(vec![*d1, *d2]);
            }
        }
    }
    out
}
