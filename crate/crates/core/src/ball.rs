//! Midpoint-radius enclosures of real and complex numbers.
//!
//! A [`Ball`] `m ± r` stores the midpoint as an MPFR float at the working
//! precision and the radius as a short float that is only ever rounded
//! upwards. Every operation returns a ball containing all results of the
//! exact operation applied to points of the input balls: the propagated
//! input radius plus the rounding error of the new midpoint. MPFR rounds
//! correctly, so a midpoint rounded to nearest is off by at most half an
//! ulp; the code charges a full ulp.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::{Float, Integer};

/// Precision of radius values.
const RAD_PREC: u32 = 32;

fn rad_zero() -> Float {
    Float::new(RAD_PREC)
}

fn up<T>(v: T) -> Float
where
    Float: rug::Assign<T> + rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(RAD_PREC, v, Round::Up).0
}

/// Upper bound for `|x|` as a radius-precision float.
fn abs_up(x: &Float) -> Float {
    up(&*x.as_abs())
}

/// Upper bound for the error of a midpoint returned by MPFR with the given
/// ternary value.
fn rounding_error(mid: &Float, dir: Ordering) -> Float {
    if dir == Ordering::Equal || mid.is_zero() {
        return rad_zero();
    }
    let exp = mid.get_exp().expect("finite midpoint");
    let ulp_exp = exp - mid.prec() as i32;
    Float::with_val(RAD_PREC, 1) << ulp_exp
}

#[derive(Clone, PartialEq)]
pub struct Ball {
    mid: Float,
    rad: Float,
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.mid.to_string_radix(10, Some(25)), self.rad.to_string_radix(10, Some(6)))
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Self { mid: Float::new(prec), rad: rad_zero() }
    }

    pub fn from_i64(prec: u32, v: i64) -> Self {
        let (mid, dir) = Float::with_val_round(prec, v, Round::Nearest);
        let rad = rounding_error(&mid, dir);
        Self { mid, rad }
    }

    pub fn from_integer(prec: u32, v: &Integer) -> Self {
        let (mid, dir) = Float::with_val_round(prec, v, Round::Nearest);
        let rad = rounding_error(&mid, dir);
        Self { mid, rad }
    }

    /// Enclosure of `num / den`.
    pub fn from_ratio(prec: u32, num: i64, den: i64) -> Self {
        Self::from_i64(prec, num).div(&Self::from_i64(prec, den)).expect("nonzero denominator")
    }

    /// Exact ball with the given midpoint and radius.
    pub fn with_radius(mid: Float, rad: &Float) -> Self {
        Self { mid, rad: abs_up(rad) }
    }

    /// Smallest ball (at precision `prec`) containing `[lo, hi]`.
    pub fn from_interval(prec: u32, lo: &Float, hi: &Float) -> Self {
        assert!(lo <= hi, "empty interval");
        let (mid, _) = Float::with_val_round(prec, lo + hi, Round::Nearest);
        let mid = mid / 2u32;
        let to_hi = Float::with_val_round(RAD_PREC, hi - &mid, Round::Up).0;
        let to_lo = Float::with_val_round(RAD_PREC, &mid - lo, Round::Up).0;
        let rad = if to_hi > to_lo { to_hi } else { to_lo };
        Self { mid, rad: rad.max(&rad_zero()) }
    }

    pub fn pi(prec: u32) -> Self {
        let (mid, dir) = Float::with_val_round(prec, Constant::Pi, Round::Nearest);
        let rad = rounding_error(&mid, dir);
        Self { mid, rad }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> &Float {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    /// Rounds the midpoint to `prec` bits, widening the radius accordingly.
    pub fn with_prec(&self, prec: u32) -> Self {
        let (mid, dir) = Float::with_val_round(prec, &self.mid, Round::Nearest);
        let rad = up(&self.rad + &rounding_error(&mid, dir));
        Self { mid, rad }
    }

    /// Lower endpoint, rounded down.
    pub fn lower(&self) -> Float {
        Float::with_val_round(self.prec(), &self.mid - &self.rad, Round::Down).0
    }

    /// Upper endpoint, rounded up.
    pub fn upper(&self) -> Float {
        Float::with_val_round(self.prec(), &self.mid + &self.rad, Round::Up).0
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.lower() <= 0 && self.upper() >= 0
    }

    pub fn is_positive(&self) -> bool {
        self.lower() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.upper() < 0
    }

    /// Whether the integer lies inside the ball.
    pub fn contains_integer(&self, v: &Integer) -> bool {
        self.lower() <= *v && self.upper() >= *v
    }

    /// Whether the exact value lies inside the ball.
    pub fn contains_f64(&self, v: f64) -> bool {
        self.lower() <= v && self.upper() >= v
    }

    /// Whether `other` is contained in `self`.
    pub fn contains(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    /// Certified `self < other`: `Some(true)` / `Some(false)` when decided.
    pub fn lt(&self, other: &Ball) -> Option<bool> {
        if self.upper() < other.lower() {
            Some(true)
        } else if self.lower() >= other.upper() {
            Some(false)
        } else {
            None
        }
    }

    /// Certified `self ≤ other`.
    pub fn le(&self, other: &Ball) -> Option<bool> {
        if self.upper() <= other.lower() {
            Some(true)
        } else if self.lower() > other.upper() {
            Some(false)
        } else {
            None
        }
    }

    /// Lower bound for `|x|` over the ball (zero when it straddles zero).
    pub fn abs_lower(&self) -> Float {
        if self.is_positive() {
            self.lower()
        } else if self.is_negative() {
            -self.upper()
        } else {
            Float::new(self.prec())
        }
    }

    /// Upper bound for `|x|` over the ball.
    pub fn abs_upper(&self) -> Float {
        let lo = self.lower();
        let hi = self.upper();
        let lo = lo.abs();
        if lo > hi {
            lo
        } else {
            hi
        }
    }

    pub fn abs(&self) -> Ball {
        if self.lower() >= 0 {
            self.clone()
        } else if self.upper() <= 0 {
            -self
        } else {
            let hi = self.abs_upper();
            Ball::from_interval(self.prec(), &Float::new(self.prec()), &hi)
        }
    }

    /// Enclosure of `max(x, y)` over both balls.
    pub fn max(&self, other: &Ball) -> Ball {
        let prec = self.result_prec(other);
        let (a, b) = (self.lower(), other.lower());
        let lo = if a > b { a } else { b };
        let (a, b) = (self.upper(), other.upper());
        let hi = if a > b { a } else { b };
        Ball::from_interval(prec, &lo, &hi)
    }

    /// Adds `err` to the radius.
    pub fn add_error(&mut self, err: &Float) {
        self.rad = up(&self.rad + &abs_up(err));
    }

    fn result_prec(&self, other: &Ball) -> u32 {
        self.prec().max(other.prec())
    }

    pub fn add(&self, other: &Ball) -> Ball {
        let prec = self.result_prec(other);
        let (mid, dir) = Float::with_val_round(prec, &self.mid + &other.mid, Round::Nearest);
        let rad = up(&up(&self.rad + &other.rad) + &rounding_error(&mid, dir));
        Ball { mid, rad }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        let prec = self.result_prec(other);
        let (mid, dir) = Float::with_val_round(prec, &self.mid - &other.mid, Round::Nearest);
        let rad = up(&up(&self.rad + &other.rad) + &rounding_error(&mid, dir));
        Ball { mid, rad }
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let prec = self.result_prec(other);
        let (mid, dir) = Float::with_val_round(prec, &self.mid * &other.mid, Round::Nearest);
        let a = up(&abs_up(&self.mid) * &other.rad);
        let b = up(&abs_up(&other.mid) * &self.rad);
        let c = up(&self.rad * &other.rad);
        let rad = up(&up(&up(&a + &b) + &c) + &rounding_error(&mid, dir));
        Ball { mid, rad }
    }

    pub fn mul_i64(&self, k: i64) -> Ball {
        let (mid, dir) = Float::with_val_round(self.prec(), &self.mid * k, Round::Nearest);
        let rad = up(&up(&self.rad * k.unsigned_abs()) + &rounding_error(&mid, dir));
        Ball { mid, rad }
    }

    pub fn add_i64(&self, k: i64) -> Ball {
        self.add(&Ball::from_i64(self.prec(), k))
    }

    pub fn sqr(&self) -> Ball {
        self.mul(self)
    }

    /// `self / other`; `None` when the divisor ball contains zero.
    pub fn div(&self, other: &Ball) -> Option<Ball> {
        let denom_lower = other.abs_lower();
        if denom_lower.is_zero() {
            return None;
        }
        let prec = self.result_prec(other);
        let (mid, dir) = Float::with_val_round(prec, &self.mid / &other.mid, Round::Nearest);
        let err = rounding_error(&mid, dir);
        let q_abs = up(&abs_up(&mid) + &err);
        let num = up(&self.rad + &up(&q_abs * &other.rad));
        let denom = Float::with_val_round(RAD_PREC, &denom_lower, Round::Down).0;
        let rad = up(&up(&num / &denom) + &err);
        Some(Ball { mid, rad })
    }

    pub fn recip(&self) -> Option<Ball> {
        Ball::from_i64(self.prec(), 1).div(self)
    }

    /// Square root of a ball with non-negative lower endpoint.
    pub fn sqrt(&self) -> Option<Ball> {
        let lo = self.lower();
        if lo < 0 {
            return None;
        }
        if lo.is_zero() {
            let hi = Float::with_val_round(self.prec(), self.upper().sqrt_ref(), Round::Up).0;
            return Some(Ball::from_interval(self.prec(), &Float::new(self.prec()), &hi));
        }
        let (mid, dir) = Float::with_val_round(self.prec(), self.mid.sqrt_ref(), Round::Nearest);
        let err = rounding_error(&mid, dir);
        // |√x - √m| ≤ r / √(m - r)
        let root_lo = Float::with_val_round(RAD_PREC, lo.sqrt_ref(), Round::Down).0;
        let rad = up(&up(&self.rad / &root_lo) + &err);
        Some(Ball { mid, rad })
    }

    pub fn exp(&self) -> Ball {
        let (mid, dir) = Float::with_val_round(self.prec(), self.mid.exp_ref(), Round::Nearest);
        let err = rounding_error(&mid, dir);
        // |e^x - e^m| ≤ e^m (e^r - 1)
        let em = up(&abs_up(&mid) + &err);
        let growth = Float::with_val_round(RAD_PREC, self.rad.exp_m1_ref(), Round::Up).0;
        let rad = up(&up(&em * &growth) + &err);
        Ball { mid, rad }
    }

    /// Natural logarithm of a ball with positive lower endpoint.
    pub fn ln(&self) -> Option<Ball> {
        let lo = self.lower();
        if lo <= 0 {
            return None;
        }
        let (mid, dir) = Float::with_val_round(self.prec(), self.mid.ln_ref(), Round::Nearest);
        let err = rounding_error(&mid, dir);
        let lo = Float::with_val_round(RAD_PREC, &lo, Round::Down).0;
        let rad = up(&up(&self.rad / &lo) + &err);
        Some(Ball { mid, rad })
    }

    pub fn cos(&self) -> Ball {
        let (mid, dir) = Float::with_val_round(self.prec(), self.mid.cos_ref(), Round::Nearest);
        let rad = up(&self.rad + &rounding_error(&mid, dir));
        Ball { mid, rad }
    }

    pub fn sin(&self) -> Ball {
        let (mid, dir) = Float::with_val_round(self.prec(), self.mid.sin_ref(), Round::Nearest);
        let rad = up(&self.rad + &rounding_error(&mid, dir));
        Ball { mid, rad }
    }

    /// Nearest integer, if it is the only integer the ball can contain.
    pub fn unique_integer(&self) -> Option<Integer> {
        let half = Float::with_val(RAD_PREC, 0.5);
        if self.rad >= half {
            return None;
        }
        let (n, _) = self.mid.to_integer_round(Round::Nearest)?;
        self.contains_integer(&n).then_some(n)
    }

    /// Midpoint as `f64` (for display only).
    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball { mid: Float::with_val(self.prec(), -&self.mid), rad: self.rad.clone() }
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Ball> for &Ball {
            type Output = Ball;
            fn $method(self, rhs: &Ball) -> Ball {
                Ball::$method(self, rhs)
            }
        }
        impl $tr<Ball> for Ball {
            type Output = Ball;
            fn $method(self, rhs: Ball) -> Ball {
                Ball::$method(&self, &rhs)
            }
        }
        impl $tr<&Ball> for Ball {
            type Output = Ball;
            fn $method(self, rhs: &Ball) -> Ball {
                Ball::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// An enclosure `re + i·im` of a complex number.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedValue {
    pub re: Ball,
    pub im: Ball,
}

impl CertifiedValue {
    pub fn real(re: Ball) -> Self {
        let prec = re.prec();
        Self { re, im: Ball::zero(prec) }
    }

    pub fn new(re: Ball, im: Ball) -> Self {
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::real(Ball::zero(prec))
    }

    pub fn from_i64(prec: u32, v: i64) -> Self {
        Self::real(Ball::from_i64(prec, v))
    }

    pub fn precision_bits(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn re_mid(&self) -> &Float {
        self.re.mid()
    }

    pub fn re_rad(&self) -> &Float {
        self.re.rad()
    }

    pub fn im_mid(&self) -> &Float {
        self.im.mid()
    }

    pub fn im_rad(&self) -> &Float {
        self.im.rad()
    }

    /// Upper bound for the distance from the midpoint to any enclosed point.
    pub fn radius(&self) -> Float {
        up(self.re.rad() + self.im.rad())
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Enclosure of `√(re² + im²)` over every enclosed point.
    pub fn modulus(&self) -> Ball {
        let sq = self.re.sqr().add(&self.im.sqr());
        let prec = sq.prec();
        let hi = sq.upper();
        if sq.lower() > 0 {
            if let Some(m) = sq.sqrt() {
                return m;
            }
        }
        let root = Float::with_val_round(prec, hi.sqrt_ref(), Round::Up).0;
        Ball::from_interval(prec, &Float::new(prec), &root)
    }

    /// Lower bound for the modulus of every enclosed point.
    pub fn abs_lower(&self) -> Float {
        let lo = self.modulus().lower();
        if lo < 0 {
            Float::new(lo.prec())
        } else {
            lo
        }
    }

    /// Upper bound for the modulus of every enclosed point.
    pub fn abs_upper(&self) -> Float {
        self.modulus().upper()
    }

    pub fn contains(&self, other: &CertifiedValue) -> bool {
        self.re.contains(&other.re) && self.im.contains(&other.im)
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let re = &(&self.re * &other.re) - &(&self.im * &other.im);
        let im = &(&self.re * &other.im) + &(&self.im * &other.re);
        Self { re, im }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        Self { re: self.re.mul_i64(k), im: self.im.mul_i64(k) }
    }

    pub fn add_real(&self, x: &Ball) -> Self {
        Self { re: &self.re + x, im: self.im.clone() }
    }

    /// Widens both components by `err`.
    pub fn add_error(&mut self, err: &Float) {
        self.re.add_error(err);
        self.im.add_error(err);
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_exact() && self.im.mid().is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({}) + i·({})", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn ball(v: f64) -> Ball {
        Ball::with_radius(Float::with_val(P, v), &Float::with_val(RAD_PREC, 0))
    }

    #[test]
    fn exact_integers_have_zero_radius() {
        assert!(Ball::from_i64(P, 1728).is_exact());
        assert!(Ball::from_i64(P, -3375).contains_integer(&Integer::from(-3375)));
    }

    #[test]
    fn pi_and_exp_enclose_known_values() {
        let pi = Ball::pi(P);
        let dec = |s: &str| Float::with_val(P, Float::parse(s).unwrap());
        assert!(pi.lower() > dec("3.14159265358979323846264338327950288"));
        assert!(pi.upper() < dec("3.14159265358979323846264338327950289"));
        assert!(pi.rad() < &Float::with_val(64, 1e-35));
        // e^π - π = 19.99909997918947...
        let v = &pi.exp() - &pi;
        let lo = Float::with_val(64, 19.999099979189);
        let hi = Float::with_val(64, 19.999099979190);
        assert!(v.lower() > lo && v.upper() < hi);
        assert!(v.rad() < &Float::with_val(64, 1e-30));
    }

    #[test]
    fn division_by_ball_containing_zero_is_refused() {
        let z = Ball::from_interval(P, &Float::with_val(P, -1), &Float::with_val(P, 1));
        assert!(Ball::from_i64(P, 1).div(&z).is_none());
        assert!(z.ln().is_none());
        assert!(z.sqrt().is_none());
    }

    #[test]
    fn wide_balls_propagate() {
        let x = Ball::from_interval(P, &Float::with_val(P, 1.0), &Float::with_val(P, 2.0));
        let e = x.exp();
        assert!(e.contains_f64(1.0f64.exp()) && e.contains_f64(2.0f64.exp()));
        let s = x.sqrt().unwrap();
        assert!(s.contains_f64(1.0) && s.contains_f64(2.0f64.sqrt()));
        let l = x.ln().unwrap();
        assert!(l.contains_f64(0.0) && l.contains_f64(2.0f64.ln()));
        let c = x.cos();
        assert!(c.contains_f64(1.0f64.cos()) && c.contains_f64(2.0f64.cos()));
        let r = x.recip().unwrap();
        assert!(r.contains_f64(1.0) && r.contains_f64(0.5));
    }

    #[test]
    fn comparisons_are_three_valued() {
        let a = ball(1.0);
        let b = ball(2.0);
        assert_eq!(a.lt(&b), Some(true));
        assert_eq!(b.lt(&a), Some(false));
        let w = Ball::from_interval(P, &Float::with_val(P, 0.5), &Float::with_val(P, 1.5));
        assert_eq!(w.lt(&a), None);
        assert_eq!(a.le(&a), Some(true));
    }

    #[test]
    fn unique_integer_rounding() {
        let x = Ball::with_radius(Float::with_val(P, 41.9), &Float::with_val(RAD_PREC, 0.2));
        assert_eq!(x.unique_integer(), Some(Integer::from(42)));
        let y = Ball::with_radius(Float::with_val(P, 41.5), &Float::with_val(RAD_PREC, 0.5));
        assert_eq!(y.unique_integer(), None);
        let z = Ball::with_radius(Float::with_val(P, 41.5), &Float::with_val(RAD_PREC, 0.1));
        assert_eq!(z.unique_integer(), None);
    }

    #[test]
    fn complex_product() {
        let i = CertifiedValue::new(Ball::zero(P), Ball::from_i64(P, 1));
        let m = i.mul(&i);
        assert!(m.re.contains_integer(&Integer::from(-1)) && m.im.contains_zero());
        assert!(!m.contains_zero());
        assert!(m.abs_lower() >= 1);
    }

    #[test]
    fn modulus_is_euclidean() {
        let z = CertifiedValue::new(Ball::from_i64(P, 3), Ball::from_i64(P, -4));
        assert!(z.modulus().contains_integer(&Integer::from(5)));
        assert!(z.abs_upper() < 5.000001 && z.abs_lower() > 4.999999);
        let fuzzy =
            CertifiedValue::new(ball(0.0), Ball::with_radius(Float::with_val(P, 0), &Float::with_val(RAD_PREC, 1)));
        assert!(fuzzy.abs_lower() == 0 && fuzzy.abs_upper() >= 1);
    }
}
