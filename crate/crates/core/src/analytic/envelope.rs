//! Envelopes `e^{π√|Δ|/a} ± 2079` for singular moduli.

use rayon::prelude::*;

use crate::ball::Ball;
use crate::{Disc, Error, Result};

/// Additive slack in the modulus envelope.
pub const ENVELOPE_SLACK: i64 = 2079;

fn exponent(abs_delta: u64, a: u64, prec: u32) -> Ball {
    let root = Ball::from_i64(prec, abs_delta as i64).sqrt().expect("non-negative");
    (&Ball::pi(prec) * &root).div(&Ball::from_i64(prec, a as i64)).expect("a ≥ 1").exp()
}

/// `(e^{π√|Δ|/a} − 2079, e^{π√|Δ|/a} + 2079)`: every singular modulus of
/// discriminant `Δ` with denominator `a` has absolute value in between.
pub fn bdsing_interval(abs_delta: u64, a: u64, prec: u32) -> (Ball, Ball) {
    assert!(a >= 1, "denominator must be positive");
    let e = exponent(abs_delta, a, prec);
    (e.add_i64(-ENVELOPE_SLACK), e.add_i64(ENVELOPE_SLACK))
}

/// `0.005·e^{π√|Δ|} + 2079`, which bounds `|x|` for every singular modulus
/// with the fundamental discriminant of `Δ` and a strictly smaller conductor.
pub fn bdfund_upper(delta: &Disc, prec: u32) -> Result<Ball> {
    if delta.conductor() < 2 {
        return Err(Error::NoSmallerConductor(delta.value()));
    }
    let e = exponent(delta.abs(), 1, prec);
    Ok(e.mul(&Ball::from_ratio(prec, 1, 200)).add_i64(ENVELOPE_SLACK))
}

/// Cached `e^{π√d}` and `e^{π√d/2}` for `d ≤ max`.
#[derive(Clone, Debug)]
pub struct ExpTable {
    prec: u32,
    full: Vec<Ball>,
    half: Vec<Ball>,
}

impl ExpTable {
    pub fn new(max: u64, prec: u32) -> Self {
        let (full, half) = (0..=max).into_par_iter().map(|d| (exponent(d, 1, prec), exponent(d, 2, prec))).unzip();
        Self { prec, full, half }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn max(&self) -> u64 {
        self.full.len() as u64 - 1
    }

    /// `e^{π√d}`.
    pub fn full(&self, d: u64) -> &Ball {
        &self.full[d as usize]
    }

    /// `e^{π√d/2}`.
    pub fn half(&self, d: u64) -> &Ball {
        &self.half[d as usize]
    }

    /// `e^{π√d} + 2079`.
    pub fn upper(&self, d: u64) -> Ball {
        self.full(d).add_i64(ENVELOPE_SLACK)
    }

    /// `e^{π√d} − 2079`.
    pub fn lower(&self, d: u64) -> Ball {
        self.full(d).add_i64(-ENVELOPE_SLACK)
    }

    /// `e^{π√d/2} + 2079`.
    pub fn half_upper(&self, d: u64) -> Ball {
        self.half(d).add_i64(ENVELOPE_SLACK)
    }

    /// Envelope of a modulus with denominator `a`, from the table for
    /// `a ≤ 2` and computed directly otherwise.
    pub fn envelope(&self, d: u64, a: u64) -> (Ball, Ball) {
        let e = match a {
            1 => self.full(d).clone(),
            2 => self.half(d).clone(),
            _ => exponent(d, a, self.prec),
        };
        (e.add_i64(-ENVELOPE_SLACK), e.add_i64(ENVELOPE_SLACK))
    }
}

/// Certified `lhs ≤ rhs`, or `Indeterminate` under `id`.
pub(crate) fn decide_le(lhs: &Ball, rhs: &Ball, id: &str, args: &[u64]) -> Result<bool> {
    lhs.le(rhs).ok_or_else(|| Error::Indeterminate {
        id: id.to_owned(),
        args: args.to_vec(),
        precision_bits: lhs.prec().min(rhs.prec()),
    })
}

/// Certified `lhs < rhs`, or `Indeterminate` under `id`.
pub(crate) fn decide_lt(lhs: &Ball, rhs: &Ball, id: &str, args: &[u64]) -> Result<bool> {
    lhs.lt(rhs).ok_or_else(|| Error::Indeterminate {
        id: id.to_owned(),
        args: args.to_vec(),
        precision_bits: lhs.prec().min(rhs.prec()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminants::factor_discriminant;
    use rug::Integer;

    #[test]
    fn envelope_examples() {
        let (lo, hi) = bdsing_interval(7, 1, 128);
        assert!(lo.upper() < 3375 && hi.lower() > 3375);
        let (lo, hi) = bdsing_interval(3, 1, 128);
        assert!(lo.is_negative() && hi.is_positive());
        let (lo, hi) = bdsing_interval(5, 1_000_000, 128);
        assert!(lo.to_f64() > -2078.0 && lo.to_f64() < -2077.99);
        assert!(hi.to_f64() > 2080.0 && hi.to_f64() < 2080.01);
    }

    #[test]
    fn envelope_monotone() {
        let (_, mut prev) = bdsing_interval(3, 1, 64);
        for d in 4..200 {
            let (_, hi) = bdsing_interval(d, 1, 64);
            assert_eq!(prev.lt(&hi), Some(true));
            prev = hi;
        }
        for a in 1..10 {
            let (_, x) = bdsing_interval(1000, a, 64);
            let (_, y) = bdsing_interval(1000, a + 1, 64);
            assert_eq!(y.lt(&x), Some(true));
        }
    }

    #[test]
    fn bdfund_examples() {
        let b = bdfund_upper(&factor_discriminant(-12i64).unwrap(), 128).unwrap();
        assert!(b.is_positive());
        let b = bdfund_upper(&factor_discriminant(-16i64).unwrap(), 128).unwrap();
        assert!(b.lower() > 1728);
        assert_eq!(
            bdfund_upper(&factor_discriminant(-15i64).unwrap(), 128).unwrap_err(),
            Error::NoSmallerConductor(-15)
        );
    }

    #[test]
    fn table_matches_direct() {
        let t = ExpTable::new(100, 128);
        let (lo, hi) = bdsing_interval(97, 2, 128);
        let (tlo, thi) = t.envelope(97, 2);
        assert!(lo.sub(&tlo).contains_zero() && hi.sub(&thi).contains_zero());
        assert!(t.full(0).contains_integer(&Integer::from(1)));
    }
}
