//! `e^{π√d} − e^{π√(d−1)} > e^{π√d}/√d` for real `d ≥ 2`.
//!
//! Dividing by `e^{π√d}/√d` turns the claim into `g(d) > 1` with
//! `g(d) = √d·(1 − exp(−π/(√(d−1) + √d)))`. On a bounded range this is
//! certified by subdividing until a ball evaluation of `g − 1` over each
//! piece is positive. For `d ≥ 5` it follows from
//! `g(d) ≥ π/2 − π²/(8√d) ≥ π/2 − π²/(8√5) > 1`.

use rug::Float;

use crate::ball::Ball;
use crate::{Error, Result};

/// Result of an interval certification.
#[derive(Clone, Debug, PartialEq)]
pub enum SmallLemmaOutcome {
    /// The expression is positive on every piece.
    Certified { pieces: usize, max_depth: u32 },
    /// The expression is certified non-positive at the point.
    Refuted { at: f64 },
}

impl SmallLemmaOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, Self::Certified { .. })
    }
}

/// Certifies `f > 0` on `[lo, hi]` by bisection, where `f` maps a ball
/// enclosing a sub-interval to an enclosure of `f` over it.
pub fn certify_on_interval<F>(lo: f64, hi: f64, max_depth: u32, prec: u32, f: F) -> Result<SmallLemmaOutcome>
where
    F: Fn(&Ball) -> Option<Ball>,
{
    let mut stack = vec![(Float::with_val(prec, lo), Float::with_val(prec, hi), 0u32)];
    let mut pieces = 0usize;
    let mut deepest = 0u32;
    while let Some((a, b, depth)) = stack.pop() {
        let ball = Ball::from_interval(prec, &a, &b);
        if f(&ball).is_some_and(|v| v.is_positive()) {
            pieces += 1;
            deepest = deepest.max(depth);
            continue;
        }
        let m = Float::with_val(prec, &a + &b) / 2u32;
        let point = Ball::from_interval(prec, &m, &m);
        if f(&point).is_some_and(|v| v.upper() <= 0) {
            return Ok(SmallLemmaOutcome::Refuted { at: m.to_f64() });
        }
        if depth >= max_depth {
            return Err(Error::DepthExhausted(max_depth));
        }
        stack.push((m.clone(), b, depth + 1));
        stack.push((a, m, depth + 1));
    }
    Ok(SmallLemmaOutcome::Certified { pieces, max_depth: deepest })
}

/// `g(d) − 1` over a ball of `d ≥ 1`.
fn normalized_gap(d: &Ball) -> Option<Ball> {
    let prec = d.prec();
    let root = d.sqrt()?;
    let root_prev = d.add_i64(-1).sqrt()?;
    let step = Ball::pi(prec).div(&(&root + &root_prev))?;
    let g = &root * &(&Ball::from_i64(prec, 1) - &(-step).exp());
    Some(g.add_i64(-1))
}

/// Certifies the inequality on `[lo, hi]`; with `reversed`, certifies the
/// opposite inequality instead (used to show the harness can fail).
pub fn verify_small_lemma(lo: f64, hi: f64, max_depth: u32, reversed: bool) -> Result<SmallLemmaOutcome> {
    assert!(lo >= 2.0 && lo <= hi, "range must lie in [2, ∞)");
    let prec = 128;
    if reversed {
        certify_on_interval(lo, hi, max_depth, prec, |d| normalized_gap(d).map(|g| -g))
    } else {
        certify_on_interval(lo, hi, max_depth, prec, normalized_gap)
    }
}

/// `π/2 − π²/(8√5) − 1`, certified positive when the result is positive.
pub fn small_lemma_closed_form(prec: u32) -> Ball {
    let pi = Ball::pi(prec);
    let half_pi = pi.div(&Ball::from_i64(prec, 2)).expect("nonzero");
    let root5 = Ball::from_i64(prec, 5).sqrt().expect("positive");
    let tail = pi.sqr().div(&root5.mul_i64(8)).expect("nonzero");
    (&half_pi - &tail).add_i64(-1)
}

/// `e^{π√d} − e^{π√(d−1)} − e^{π√d}/√d` at an integer `d ≥ 2`.
pub fn direct_gap(d: u64, prec: u32) -> Ball {
    let pi = Ball::pi(prec);
    let root = Ball::from_i64(prec, d as i64).sqrt().expect("positive");
    let root_prev = Ball::from_i64(prec, d as i64 - 1).sqrt().expect("positive");
    let e = (&pi * &root).exp();
    let e_prev = (&pi * &root_prev).exp();
    &(&e - &e_prev) - &e.div(&root).expect("positive")
}
