//! Hilbert class polynomials by certified products and integer rounding.

use std::fmt;

use rug::Integer;

use super::eval::{all_singular_moduli, class_number, DEFAULT_PRECISION_BITS, PRECISION_CAP};
use crate::ball::{Ball, CertifiedValue};
use crate::{Disc, Error, Result};

/// A monic polynomial with exact integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPolynomial {
    coefficients: Vec<Integer>,
}

impl IntegerPolynomial {
    pub fn new(coefficients: Vec<Integer>) -> Self {
        assert!(coefficients.last().is_some_and(|c| *c == 1), "polynomial must be monic");
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[Integer] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Sum of the roots.
    pub fn trace(&self) -> Integer {
        -self.coefficients[self.degree() - 1].clone()
    }

    /// Discriminant of a quadratic.
    pub fn quadratic_discriminant(&self) -> Option<Integer> {
        (self.degree() == 2).then(|| {
            let c = &self.coefficients;
            Integer::from(c[1].square_ref()) - Integer::from(4) * &c[0]
        })
    }

    /// Certified value at `x`.
    pub fn eval(&self, x: &CertifiedValue) -> CertifiedValue {
        let prec = x.precision_bits();
        self.coefficients
            .iter()
            .rev()
            .fold(CertifiedValue::zero(prec), |acc, c| acc.mul(x).add_real(&Ball::from_integer(prec, c)))
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let negative = *c < 0;
            let mag = c.clone().abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "X".to_owned(),
                _ => format!("X^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn mul_linear(poly: &[Ball], root: &Ball) -> Vec<Ball> {
    let prec = root.prec();
    let mut out = vec![Ball::zero(prec); poly.len() + 1];
    for (i, c) in poly.iter().enumerate() {
        out[i + 1] = &out[i + 1] + c;
        out[i] = &out[i] - &(c * root);
    }
    out
}

fn mul_quadratic(poly: &[Ball], lin: &Ball, cst: &Ball) -> Vec<Ball> {
    let prec = lin.prec();
    let mut out = vec![Ball::zero(prec); poly.len() + 2];
    for (i, c) in poly.iter().enumerate() {
        out[i + 2] = &out[i + 2] + c;
        out[i + 1] = &out[i + 1] + &(c * lin);
        out[i] = &out[i] + &(c * cst);
    }
    out
}

fn attempt(delta: &Disc, prec: u32) -> Result<Option<IntegerPolynomial>> {
    let values = all_singular_moduli(delta, prec)?;
    let mut poly = vec![Ball::from_i64(prec, 1)];
    for v in &values {
        if v.real_class {
            poly = mul_linear(&poly, &v.value.re);
        } else if v.form.b() > 0 {
            let z = &v.value;
            let lin = -z.re.mul_i64(2);
            let cst = &z.re.sqr() + &z.im.sqr();
            poly = mul_quadratic(&poly, &lin, &cst);
        }
    }
    let rounded: Option<Vec<Integer>> = poly.iter().map(Ball::unique_integer).collect();
    Ok(rounded.map(IntegerPolynomial::new))
}

/// The class polynomial of `delta`, doubling the precision from
/// `precision_bits` until every coefficient rounds, up to `cap`.
pub fn class_polynomial_with_cap(delta: &Disc, precision_bits: u32, cap: u32) -> Result<IntegerPolynomial> {
    let mut prec = precision_bits.max(32);
    loop {
        match attempt(delta, prec) {
            Ok(Some(p)) => return Ok(p),
            Ok(None) | Err(Error::PrecisionExhausted(_)) if prec < cap => prec = (prec * 2).min(cap),
            Ok(None) => {
                return Err(Error::PrecisionExhausted(format!(
                    "class polynomial of {} did not round at {prec} bits",
                    delta.value()
                )))
            }
            Err(e) => return Err(e),
        }
    }
}

/// The class polynomial of `delta` with the default precision cap.
pub fn class_polynomial(delta: &Disc, precision_bits: u32) -> Result<IntegerPolynomial> {
    class_polynomial_with_cap(delta, precision_bits, PRECISION_CAP)
}

/// Squarefree kernel `k` of the discriminant of the class polynomial, so
/// that the singular moduli of `delta` generate `ℚ(√k)`.
///
/// Small primes are removed by trial division up to `max(|Δ|, 1000)`; the
/// kernel is certified only if the cofactor is a perfect square.
pub fn quadratic_field_kernel(delta: &Disc) -> Result<Integer> {
    let h = class_number(delta);
    if h != 2 {
        return Err(Error::WrongClassNumber { delta: delta.value(), h, expected: 2 });
    }
    let poly = class_polynomial(delta, DEFAULT_PRECISION_BITS)?;
    let disc = poly.quadratic_discriminant().expect("degree 2");
    let mut rest = disc.clone().abs();
    let mut kernel = Integer::from(disc.signum_ref());
    let limit = delta.abs().max(1000);
    let mut p = 2u64;
    while p <= limit {
        let mut e = 0u32;
        while rest.is_divisible_u(p as u32) {
            rest.div_exact_u_mut(p as u32);
            e += 1;
        }
        if e % 2 == 1 {
            kernel *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_perfect_square() {
        return Err(Error::KernelUnresolved(format!(
            "discriminant of the class polynomial of {} has a non-square cofactor {rest}",
            delta.value()
        )));
    }
    Ok(kernel)
}
