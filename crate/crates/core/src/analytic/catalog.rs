//! Named inequalities in `|Δ|`-type arguments and the threshold solver.
//!
//! Threshold entries are one-argument inequalities that hold for small `d`
//! and fail from some point on; [`threshold_max`] returns the largest
//! integer `d ≥ 1` for which one holds. Each carries the bound claimed for
//! it, and the verifier asserts the computed value does not exceed it.
//! Scaled entries multiply another entry's threshold by a fixed factor.
//! Constant entries have no argument, and filter entries take four `|Δ|`.
//!
//! `K` below is the envelope slack 2079 and `E(d) = e^{π√d}`.

use super::envelope::{decide_le, decide_lt, ENVELOPE_SLACK};
use crate::ball::Ball;
use crate::{Error, Result};

const K: i64 = ENVELOPE_SLACK;

/// Comparison between the two sides of an inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Gt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InequalityKind {
    Threshold,
    Scaled { base: &'static str, factor: u64 },
    Constant,
    Filter,
}

type Sides = fn(&Env, &[Ball]) -> (Ball, Ball);

/// One catalog entry.
#[derive(Clone, Copy, Debug)]
pub struct NamedInequality {
    pub id: &'static str,
    pub formula: &'static str,
    pub kind: InequalityKind,
    pub relation: Relation,
    pub claimed: Option<u64>,
    sides: Option<Sides>,
}

impl NamedInequality {
    pub fn arity(&self) -> usize {
        match self.kind {
            InequalityKind::Threshold | InequalityKind::Scaled { .. } => 1,
            InequalityKind::Constant => 0,
            InequalityKind::Filter => 4,
        }
    }
}

/// Constants and shorthands at one precision.
pub(crate) struct Env {
    prec: u32,
    pi: Ball,
}

impl Env {
    pub(crate) fn new(prec: u32) -> Self {
        Self { prec, pi: Ball::pi(prec) }
    }

    fn int(&self, v: i64) -> Ball {
        Ball::from_i64(self.prec, v)
    }

    fn ratio(&self, n: i64, d: i64) -> Ball {
        Ball::from_ratio(self.prec, n, d)
    }

    fn root(&self, d: &Ball) -> Ball {
        d.sqrt().expect("non-negative argument")
    }

    /// `exp(num·π√d / den)`.
    fn exp_root(&self, d: &Ball, num: i64, den: i64) -> Ball {
        (&self.pi * &self.root(d)).mul(&self.ratio(num, den)).exp()
    }

    fn e(&self, d: &Ball) -> Ball {
        self.exp_root(d, 1, 1)
    }

    fn eh(&self, d: &Ball) -> Ball {
        self.exp_root(d, 1, 2)
    }

    fn recip_root(&self, d: &Ball, k: i64) -> Ball {
        self.root(d).mul_i64(k).recip().expect("positive argument")
    }

    fn e_star(&self) -> Ball {
        self.e(&self.int(7392))
    }

    /// `0.005·E(d) + K`.
    fn fund(&self, d: &Ball) -> Ball {
        self.e(d).mul(&self.ratio(1, 200)).add_i64(K)
    }

    /// `E(d) + K`.
    fn up(&self, d: &Ball) -> Ball {
        self.e(d).add_i64(K)
    }

    /// `E(d) − K`.
    fn low(&self, d: &Ball) -> Ball {
        self.e(d).add_i64(-K)
    }

    /// `E(d)^{1/2} + K`.
    fn half_up(&self, d: &Ball) -> Ball {
        self.eh(d).add_i64(K)
    }
}

macro_rules! entry {
    ($id:literal, $formula:literal, $rel:ident, $claimed:expr, $kind:expr, $sides:expr) => {
        NamedInequality {
            id: $id,
            formula: $formula,
            kind: $kind,
            relation: Relation::$rel,
            claimed: $claimed,
            sides: $sides,
        }
    };
}

macro_rules! threshold {
    ($id:literal, $formula:literal, $rel:ident, $claimed:expr, $sides:expr) => {
        entry!($id, $formula, $rel, Some($claimed), InequalityKind::Threshold, Some($sides))
    };
}

static CATALOG: &[NamedInequality] = &[
    threshold!("none_dominant", "E(d) - K <= 3(E(d)^(1/2) + K)", Le, 8, |v, a| {
        (v.low(&a[0]), v.half_up(&a[0]).mul_i64(3))
    }),
    threshold!("one_dominant", "E(d)/sqrt(d) - 2K <= 2(E(d)^(1/2) + K)", Le, 10, |v, a| {
        (v.e(&a[0]).mul(&v.recip_root(&a[0], 1)).add_i64(-2 * K), v.half_up(&a[0]).mul_i64(2))
    }),
    threshold!("lemma_three_same_fundamental", "E(d) - K <= 2(E(d)^(2/3) + K) + (E(d)^(1/2) + K)", Le, 8, |v, a| {
        (v.low(&a[0]), &v.exp_root(&a[0], 2, 3).add_i64(K).mul_i64(2) + &v.half_up(&a[0]))
    }),
    threshold!("two_dominant_same_fundamental", "E(d) - K <= 2(0.005 E(d) + K) + (E(d)^(1/2) + K)", Le, 8, |v, a| (
        v.low(&a[0]),
        &v.fund(&a[0]).mul_i64(2) + &v.half_up(&a[0])
    )),
    threshold!("conductor_pair", "E(d)^2 - K <= 3(E(d) + K)", Le, 2, |v, a| {
        (v.exp_root(&a[0], 2, 1).add_i64(-K), v.up(&a[0]).mul_i64(3))
    }),
    threshold!("delta1_not_2elem", "E(d)/sqrt(d) - 2K <= 2(E(d)^(1/2) + K)", Le, 10, |v, a| {
        (v.e(&a[0]).mul(&v.recip_root(&a[0], 1)).add_i64(-2 * K), v.half_up(&a[0]).mul_i64(2))
    }),
    threshold!("d1_fundamental", "1/(8 sqrt(d)) <= 2/E(d) + 4K'/E(d)^2 with 4K' = 8316", Le, 3, |v, a| {
        let inv = v.e(&a[0]).recip().expect("positive");
        (v.recip_root(&a[0], 8), &inv.mul_i64(2) + &inv.sqr().mul_i64(4 * K))
    }),
    entry!(
        "d1_discriminant",
        "|Delta_1| <= 64 |D_1| with |D_1| bounded by d1_fundamental",
        Le,
        Some(192),
        InequalityKind::Scaled { base: "d1_fundamental", factor: 64 },
        None
    ),
    threshold!("dstar_dj_distinct", "E(d)/sqrt(d) - E(d)^(1/2) - 3K <= E(7392) + K", Le, 7638, |v, a| {
        let lhs = &(&v.e(&a[0]) * &v.recip_root(&a[0], 1)) - &v.eh(&a[0]);
        (lhs.add_i64(-3 * K), v.e_star().add_i64(K))
    }),
    threshold!("dstar_final", "1/(60 sqrt(d)) <= (4K + 1)/E(d) + 1/E(d)^(1/2)", Le, 22, |v, a| {
        let inv = v.e(&a[0]).recip().expect("positive");
        let inv_half = v.eh(&a[0]).recip().expect("positive");
        (v.recip_root(&a[0], 60), &inv.mul_i64(4 * K + 1) + &inv_half)
    }),
    threshold!("case1_total", "(E(d) - K) - (E(d)^(1/2) + K) <= 2(E(7392) + K)", Le, 7429, |v, a| {
        (&v.low(&a[0]) - &v.half_up(&a[0]), v.e_star().add_i64(K).mul_i64(2))
    }),
    threshold!("case2_total", "E(d)/sqrt(d) - 2K <= E(7392) + E(d)^(1/2) + 2K", Le, 7638, |v, a| {
        let lhs = (&v.e(&a[0]) * &v.recip_root(&a[0], 1)).add_i64(-2 * K);
        (lhs, (&v.e_star() + &v.eh(&a[0])).add_i64(2 * K))
    }),
    threshold!("case4_half", "1/sqrt(d) - 1/E(d)^(1/2) - 4K/E(d) < 1/(2 sqrt(d))", Lt, 12, |v, a| {
        let inv = v.e(&a[0]).recip().expect("positive");
        let inv_half = v.eh(&a[0]).recip().expect("positive");
        let lhs = &(&v.recip_root(&a[0], 1) - &inv_half) - &inv.mul_i64(4 * K);
        (lhs, v.recip_root(&a[0], 2))
    }),
    threshold!("case4_final", "1/(120 sqrt(d)) <= 1/E(d)", Le, 2, |v, a| {
        (v.recip_root(&a[0], 120), v.e(&a[0]).recip().expect("positive"))
    }),
    threshold!("case5_total", "E(d) - K <= E(7392) + 0.005 E(d) + E(d)^(1/2) + 3K", Le, 7392, |v, a| {
        let rhs = &(&v.e_star() + &v.e(&a[0]).mul(&v.ratio(1, 200))) + &v.eh(&a[0]);
        (v.low(&a[0]), rhs.add_i64(3 * K))
    }),
    entry!(
        "case7_conductor_pair",
        "max(|Delta|, 4|Delta|) <= 4 d with d bounded by conductor_pair",
        Le,
        Some(11),
        InequalityKind::Scaled { base: "conductor_pair", factor: 4 },
        None
    ),
    threshold!("case7_delta_k", "E(d) - K <= (E(d)^(1/2) + K) + 4(0.005 E(d) + K)", Le, 9, |v, a| (
        v.low(&a[0]),
        &v.half_up(&a[0]) + &v.fund(&a[0]).mul_i64(4)
    )),
    threshold!("case7_fixed_k", "E(d) - K <= (E(d)^(1/2) + K) + 2(0.005 E(d) + K)", Le, 8, |v, a| (
        v.low(&a[0]),
        &v.half_up(&a[0]) + &v.fund(&a[0]).mul_i64(2)
    )),
    threshold!("case7_k_nondominant", "E(d) - K <= 3(E(d)^(1/2) + K) + 2(0.005 E(d) + K)", Le, 9, |v, a| (
        v.low(&a[0]),
        &v.half_up(&a[0]).mul_i64(3) + &v.fund(&a[0]).mul_i64(2)
    )),
    threshold!("case7_eps_plus", "2(E(d) - K) <= 2(E(d)^(1/2) + K) + 2(0.005 E(d) + K)", Le, 7, |v, a| (
        v.low(&a[0]).mul_i64(2),
        &v.half_up(&a[0]).mul_i64(2) + &v.fund(&a[0]).mul_i64(2)
    )),
    threshold!("case7_badbad", "(E(d) - K) - (E(d)^(1/2) + K) <= 2(0.005 E(d) + K)", Le, 8, |v, a| (
        &v.low(&a[0]) - &v.half_up(&a[0]),
        v.fund(&a[0]).mul_i64(2)
    )),
    threshold!("all_dominant_same_fundamental", "E(d) - K <= 3(0.005 E(d) + K)", Le, 8, |v, a| (
        v.low(&a[0]),
        v.fund(&a[0]).mul_i64(3)
    )),
    threshold!("all_dominant_not_2elem", "E(d) - K <= (E(d)^(1/2) + K) + 4(0.005 E(d) + K)", Le, 9, |v, a| (
        v.low(&a[0]),
        &v.half_up(&a[0]) + &v.fund(&a[0]).mul_i64(4)
    )),
    threshold!(
        "all_dominant_dstar",
        "E(d) - K <= max over m in 0..=3 of m(0.005 E(d) + K) + (3 - m)(E(7392) + K)",
        Le,
        7452,
        |v, a| {
            let fund = v.fund(&a[0]);
            let star = v.e_star().add_i64(K);
            let rhs =
                (0..=3).map(|m| &fund.mul_i64(m) + &star.mul_i64(3 - m)).reduce(|x, y| x.max(&y)).expect("nonempty");
            (v.low(&a[0]), rhs)
        }
    ),
    entry!(
        "bdfund_ratio",
        "1/E(3) <= 0.005",
        Le,
        None,
        InequalityKind::Constant,
        Some(|v, _| (v.e(&v.int(3)).recip().expect("positive"), v.ratio(1, 200)))
    ),
    entry!(
        "case5_margin",
        "0.995 - 1/E(19)^(1/2) - 4K/E(19) > 0.9845",
        Gt,
        None,
        InequalityKind::Constant,
        Some(|v, _| {
            let d = v.int(19);
            let lhs = &(&v.ratio(995, 1000) - &v.eh(&d).recip().expect("positive"))
                - &v.e(&d).recip().expect("positive").mul_i64(4 * K);
            (lhs, v.ratio(9845, 10000))
        })
    ),
    entry!(
        "case5_log",
        "-log(0.9845)/pi < 0.005",
        Lt,
        None,
        InequalityKind::Constant,
        Some(|v, _| {
            let l = v.ratio(9845, 10000).ln().expect("positive");
            ((-l).div(&v.pi).expect("nonzero"), v.ratio(1, 200))
        })
    ),
    entry!(
        "case5_root",
        "sqrt(7392) < 86",
        Lt,
        None,
        InequalityKind::Constant,
        Some(|v, _| (v.root(&v.int(7392)), v.int(86)))
    ),
    entry!(
        "case5_step",
        "0.01 * 86 + 0.000025 < 1",
        Lt,
        None,
        InequalityKind::Constant,
        Some(|v, _| (&v.ratio(86, 100) + &v.ratio(25, 1_000_000), v.int(1)))
    ),
    entry!(
        "small_lemma_closed_form",
        "pi/2 - pi^2/(8 sqrt(5)) > 1",
        Gt,
        None,
        InequalityKind::Constant,
        Some(|v, _| {
            let half_pi = v.pi.div(&v.int(2)).expect("nonzero");
            let tail = v.pi.sqr().mul(&v.recip_root(&v.int(5), 8));
            (&half_pi - &tail, v.int(1))
        })
    ),
    entry!(
        "two_dominant_gap",
        "E(d1) - K > (E(di) + K) + (E(dj) + K) + (E(dk)^(1/2) + K)",
        Gt,
        None,
        InequalityKind::Filter,
        Some(|v, a| (v.low(&a[0]), &(&v.up(&a[1]) + &v.up(&a[2])) + &v.half_up(&a[3])))
    ),
    entry!(
        "two_dominant_budget",
        "E(d1) - K <= (E(di) + K) + (E(dj) + K) + (E(dk)^(1/2) + K)",
        Le,
        None,
        InequalityKind::Filter,
        Some(|v, a| (v.low(&a[0]), &(&v.up(&a[1]) + &v.up(&a[2])) + &v.half_up(&a[3])))
    ),
    entry!(
        "all_dominant_budget",
        "E(d1) - K <= (E(d2) + K) + (E(d3) + K) + (E(d4) + K)",
        Le,
        None,
        InequalityKind::Filter,
        Some(|v, a| (v.low(&a[0]), &(&v.up(&a[1]) + &v.up(&a[2])) + &v.up(&a[3])))
    ),
];

/// All catalog entries.
pub fn catalog() -> &'static [NamedInequality] {
    CATALOG
}

pub fn lookup(id: &str) -> Result<&'static NamedInequality> {
    CATALOG.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownInequality(id.to_owned()))
}

fn decide(entry: &NamedInequality, args: &[u64], prec: u32) -> Result<bool> {
    let sides = entry.sides.expect("entry has a predicate");
    let env = Env::new(prec);
    let balls: Vec<Ball> = args.iter().map(|&d| env.int(d as i64)).collect();
    let (lhs, rhs) = sides(&env, &balls);
    match entry.relation {
        Relation::Le => decide_le(&lhs, &rhs, entry.id, args),
        Relation::Lt => decide_lt(&lhs, &rhs, entry.id, args),
        Relation::Gt => decide_lt(&rhs, &lhs, entry.id, args),
    }
}

/// Certified truth value of the named inequality at `args`.
pub fn inequality_holds(id: &str, args: &[u64], prec: u32) -> Result<bool> {
    let entry = lookup(id)?;
    if args.len() != entry.arity() {
        return Err(Error::Arity { id: id.to_owned(), expected: entry.arity(), got: args.len() });
    }
    if entry.arity() == 1 && args[0] == 0 {
        return Err(Error::InvalidDiscriminant(format!("{id}: argument must be positive")));
    }
    match entry.kind {
        InequalityKind::Scaled { base, factor } => inequality_holds(base, &[args[0].div_ceil(factor)], prec),
        _ => decide(entry, args, prec),
    }
}

/// Result of solving one threshold entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdOutcome {
    pub id: &'static str,
    pub value: u64,
    pub claimed: u64,
}

/// Window scanned above the bisection result.
const LOCAL_SCAN: u64 = 64;

/// Largest integer `d ≥ 1` satisfying the threshold entry `id` (0 if none).
///
/// The entry is assumed to fail for all large `d` once it fails; the
/// boundary is located by doubling and bisection, and then every `d` in a
/// window above it is checked.
pub fn threshold_max(id: &str, prec: u32) -> Result<u64> {
    let entry = lookup(id)?;
    match entry.kind {
        InequalityKind::Scaled { base, factor } => return Ok(factor * threshold_max(base, prec)?),
        InequalityKind::Threshold => {}
        _ => return Err(Error::Arity { id: id.to_owned(), expected: 1, got: entry.arity() }),
    }
    let holds = |d: u64| inequality_holds(id, &[d], prec);

    let mut lo = 0u64;
    let mut hi = 1u64;
    while holds(hi)? {
        lo = hi;
        hi = hi.checked_mul(2).filter(|&h| h <= 1 << 40).ok_or_else(|| Error::Indeterminate {
            id: id.to_owned(),
            args: vec![hi],
            precision_bits: prec,
        })?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut d = lo + 1;
    while d <= lo + LOCAL_SCAN {
        if holds(d)? {
            lo = d;
        }
        d += 1;
    }
    Ok(lo)
}

/// Solves every threshold entry.
pub fn solve_thresholds(prec: u32) -> Vec<Result<ThresholdOutcome>> {
    CATALOG
        .iter()
        .filter(|e| matches!(e.kind, InequalityKind::Threshold | InequalityKind::Scaled { .. }))
        .map(|e| {
            threshold_max(e.id, prec).map(|value| ThresholdOutcome {
                id: e.id,
                value,
                claimed: e.claimed.expect("threshold entries carry a claim"),
            })
        })
        .collect()
}
