//! Certified values of `j` at the CM points of reduced forms.
//!
//! The form `(a, b, c)` of discriminant `Δ` corresponds to
//! `τ = (−b + i√|Δ|) / 2a`, where `q = e^{2πiτ} = e^{−t}(cos θ − i sin θ)`
//! with `t = π√|Δ|/a` and `θ = πb/a`. The series is truncated after `N`
//! terms and the remainder is bounded with `|c(n)| ≤ e^{4π√n}`
//! (Brisebarre and Philibert, *Effective lower and upper bounds for the
//! Fourier coefficients of powers of the modular invariant j*, J. Ramanujan
//! Math. Soc. 20 (2005)). `N` is taken large enough that the bound for term
//! `N+1` is at most `2^{−p}` relative to `e^t` and that consecutive bound
//! terms shrink by a factor of at least 2 from there on; the tail is then
//! at most twice the first omitted bound term.

use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

use super::coefficients::{coefficient_table, max_coefficients};
use crate::ball::{Ball, CertifiedValue};
use crate::discriminants::{class_profile, reduced_forms};
use crate::{Disc, Error, Form, Result};

/// Working precision used when none is requested.
pub const DEFAULT_PRECISION_BITS: u32 = 768;

/// Largest precision any automatic escalation may reach.
pub const PRECISION_CAP: u32 = 8192;

/// A singular modulus together with its form and certified value.
#[derive(Clone, Debug)]
pub struct SingularModulusValue {
    pub form: Form,
    pub delta: Disc,
    pub value: CertifiedValue,
    pub dominant: bool,
    pub real_class: bool,
}

impl SingularModulusValue {
    /// The real enclosure of a real-class value.
    pub fn real(&self) -> Option<&Ball> {
        self.real_class.then_some(&self.value.re)
    }

    pub fn denominator(&self) -> i64 {
        self.form.a()
    }
}

/// Plain summary used in reports and CLI output.
#[derive(Clone, Debug, Serialize)]
pub struct ValueSummary {
    pub form: [i64; 3],
    pub re: String,
    pub re_radius: String,
    pub im: String,
    pub im_radius: String,
}

impl From<&SingularModulusValue> for ValueSummary {
    fn from(v: &SingularModulusValue) -> Self {
        let s = |f: &Float, d| f.to_string_radix(10, Some(d));
        Self {
            form: [v.form.a(), v.form.b(), v.form.c()],
            re: s(v.value.re.mid(), 40),
            re_radius: s(v.value.re.rad(), 4),
            im: s(v.value.im.mid(), 40),
            im_radius: s(v.value.im.rad(), 4),
        }
    }
}

fn check_form(form: &Form, delta: &Disc) -> Result<()> {
    if form.discriminant_value() != delta.value() {
        return Err(Error::InvalidForm(format!("{form} does not have discriminant {}", delta.value())));
    }
    Ok(())
}

/// Exact `(cos θ, sin θ)` when `θ = πb/a` is a multiple of `π/2`.
fn exact_angle(prec: u32, a: i64, b: i64) -> Option<(Ball, Ball)> {
    let int = |v| Ball::from_i64(prec, v);
    if b == 0 {
        Some((int(1), int(0)))
    } else if b.abs() == a {
        Some((int(-1), int(0)))
    } else if 2 * b.abs() == a {
        Some((int(0), int(b.signum())))
    } else {
        None
    }
}

/// Smallest `N` whose certified tail bound meets `2^{exp − prec}`, and
/// that bound.
fn truncation(t: &Ball, prec: u32, limit: usize) -> Result<(usize, Float)> {
    let t64 = t.to_f64();
    let four_pi = 4.0 * std::f64::consts::PI;
    let ln2 = std::f64::consts::LN_2;
    let mag_bits = (t64 / ln2).ceil() + 1.0;
    let target = (mag_bits - prec as f64) * ln2 - 4.0;
    let log_term = |n: f64| four_pi * n.sqrt() - t64 * n;
    let ratio_ok = |n: f64| four_pi * ((n + 1.0).sqrt() - n.sqrt()) - t64 <= -ln2 - 0.01;

    let mut n = 0usize;
    while !(ratio_ok(n as f64 + 1.0) && log_term(n as f64 + 1.0) + ln2 <= target) {
        n += 1;
        if n > limit {
            return Err(Error::PrecisionExhausted(format!(
                "q-expansion would need more than {limit} coefficients at {prec} bits"
            )));
        }
    }

    let bp = prec.max(64);
    let four_pi_b = Ball::pi(bp).mul_i64(4);
    let ln2_b = Ball::from_i64(bp, 2).ln().expect("ln 2");
    let t = t.with_prec(bp);
    loop {
        if n > limit {
            return Err(Error::PrecisionExhausted(format!(
                "q-expansion would need more than {limit} coefficients at {prec} bits"
            )));
        }
        let m = Ball::from_i64(bp, n as i64 + 1);
        let m1 = Ball::from_i64(bp, n as i64 + 2);
        let root = m.sqrt().expect("positive");
        let step = &four_pi_b * &(&m1.sqrt().expect("positive") - &root);
        let ratio_log = &(&step - &t) + &ln2_b;
        let term = (&(&four_pi_b * &root) - &(&t * &m)).exp();
        let tail = term.upper() * 2u32;
        let bound = Float::with_val(64, 1) << (mag_bits as i32 - prec as i32);
        if ratio_log.upper() <= 0 && tail <= bound {
            return Ok((n, tail));
        }
        n += 1;
    }
}

/// Certified enclosure of the singular modulus attached to `form`.
pub fn evaluate_singular_modulus(form: &Form, delta: &Disc, precision_bits: u32) -> Result<CertifiedValue> {
    check_form(form, delta)?;
    let prec = precision_bits.max(16);
    let (a, b) = (form.a(), form.b());
    let pi = Ball::pi(prec);
    let root = Ball::from_i64(prec, delta.abs() as i64).sqrt().expect("positive");
    let t = (&pi * &root).div(&Ball::from_i64(prec, a)).expect("a > 0");

    let (n_terms, tail) = truncation(&t, prec, max_coefficients())?;
    let coeffs = coefficient_table(n_terms);

    let (cos, sin) = exact_angle(prec, a, b).unwrap_or_else(|| {
        let theta = pi.mul_i64(b).div(&Ball::from_i64(prec, a)).expect("a > 0");
        (theta.cos(), theta.sin())
    });
    let e_neg = (-&t).exp();
    let e_pos = t.exp();
    let q = CertifiedValue::new(&e_neg * &cos, -(&e_neg * &sin));
    let q_inv = CertifiedValue::new(&e_pos * &cos, &e_pos * &sin);

    let mut acc = CertifiedValue::zero(prec);
    for c in coeffs[..n_terms].iter().rev() {
        acc = acc.add_real(&Ball::from_integer(prec, c)).mul(&q);
    }
    let mut value = q_inv.add(&acc).add_real(&Ball::from_i64(prec, 744));
    value.add_error(&tail);

    if form.is_ambiguous() {
        if !value.im.contains_zero() {
            return Err(Error::NonRealValue(format!("imaginary part of j at {form} excludes zero: {}", value.im)));
        }
        value.im = Ball::zero(prec);
    }
    Ok(value)
}

fn modulus_value(form: Form, delta: Disc, value: CertifiedValue) -> SingularModulusValue {
    SingularModulusValue { dominant: form.is_principal(), real_class: form.is_ambiguous(), form, delta, value }
}

fn check_dominant_sign(v: &SingularModulusValue) -> Result<()> {
    let positive_expected = v.delta.value().rem_euclid(4) == 0;
    let re = &v.value.re;
    let ok = if v.delta.value() == -3 {
        re.contains_zero()
    } else if positive_expected {
        re.is_positive()
    } else {
        re.is_negative()
    };
    if ok {
        Ok(())
    } else {
        Err(Error::PrecisionExhausted(format!(
            "sign of the dominant modulus of {} not certified: {re}",
            v.delta.value()
        )))
    }
}

/// Every singular modulus of `delta`, in reduced-form order.
///
/// Forms `(a, −b, c)` with `0 < b < a < c` reuse the complex conjugate of
/// the value at `(a, b, c)`.
pub fn all_singular_moduli(delta: &Disc, precision_bits: u32) -> Result<Vec<SingularModulusValue>> {
    let forms = reduced_forms(delta);
    let evaluated: Vec<Result<Option<CertifiedValue>>> = forms
        .par_iter()
        .map(|f| {
            if f.b() < 0 && !f.is_ambiguous() {
                Ok(None)
            } else {
                evaluate_singular_modulus(f, delta, precision_bits).map(Some)
            }
        })
        .collect();
    let mut direct = Vec::with_capacity(forms.len());
    for e in evaluated {
        direct.push(e?);
    }
    let mut out = Vec::with_capacity(forms.len());
    for (i, f) in forms.iter().enumerate() {
        let value = match &direct[i] {
            Some(v) => v.clone(),
            None => {
                let partner =
                    forms.iter().position(|g| g.a() == f.a() && g.b() == -f.b()).expect("inverse form is reduced");
                direct[partner].as_ref().expect("evaluated").conj()
            }
        };
        let v = modulus_value(*f, *delta, value);
        if v.dominant {
            check_dominant_sign(&v)?;
        }
        out.push(v);
    }
    Ok(out)
}

/// The value at the principal form.
pub fn dominant_singular_modulus(delta: &Disc, precision_bits: u32) -> Result<SingularModulusValue> {
    let form = Form::principal(delta);
    let value = evaluate_singular_modulus(&form, delta, precision_bits)?;
    let v = modulus_value(form, *delta, value);
    check_dominant_sign(&v)?;
    Ok(v)
}

/// Values at the ambiguous non-principal forms.
pub fn real_nondominant_singular_moduli(delta: &Disc, precision_bits: u32) -> Result<Vec<SingularModulusValue>> {
    let forms: Vec<Form> = reduced_forms(delta).into_iter().filter(|f| f.is_ambiguous() && !f.is_principal()).collect();
    forms
        .par_iter()
        .map(|f| evaluate_singular_modulus(f, delta, precision_bits).map(|v| modulus_value(*f, *delta, v)))
        .collect()
}

/// Class number of `delta` (convenience for callers holding a `Disc`).
pub fn class_number(delta: &Disc) -> u64 {
    class_profile(delta).h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminants::factor_discriminant;
    use rug::Integer;

    fn disc(v: i64) -> Disc {
        factor_discriminant(v).unwrap()
    }

    #[test]
    fn rational_values() {
        for (d, j) in [(-3, 0i64), (-4, 1728), (-7, -3375), (-8, 8000), (-11, -32768), (-163, -262537412640768000)] {
            let v = dominant_singular_modulus(&disc(d), 256).unwrap();
            assert!(v.value.re.contains_integer(&Integer::from(j)), "Δ={d}: {}", v.value);
            assert!(v.value.re.rad() < &1e-20, "Δ={d}");
            assert!(v.dominant && v.real_class);
        }
    }

    #[test]
    fn neg_fifteen() {
        let vals = all_singular_moduli(&disc(-15), 256).unwrap();
        assert_eq!(vals.len(), 2);
        assert!(vals.iter().all(|v| v.real_class));
        assert_eq!(vals.iter().filter(|v| v.dominant).count(), 1);
        // roots of X² + 191025 X − 121287375
        let dom = &vals[0].value.re;
        assert!(dom.to_f64() < -191000.0 && dom.to_f64() > -191700.0);
        let sum = &vals[0].value.re + &vals[1].value.re;
        assert!(sum.contains_integer(&Integer::from(-191025)));
    }

    #[test]
    fn neg_twenty_three_has_conjugate_pair() {
        let vals = all_singular_moduli(&disc(-23), 256).unwrap();
        assert_eq!(vals.len(), 3);
        assert!(vals[0].dominant && vals[0].real_class);
        assert!(!vals[1].real_class && !vals[2].real_class);
        let direct = evaluate_singular_modulus(&vals[1].form, &disc(-23), 256).unwrap();
        let d = direct.sub(&vals[1].value);
        assert!(d.contains_zero());
        assert!(!vals[1].value.im.contains_zero());
    }

    #[test]
    fn real_nondominant() {
        let v = real_nondominant_singular_moduli(&disc(-15), 128).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].form.a(), v[0].form.b(), v[0].form.c()), (2, 1, 2));
        assert!(real_nondominant_singular_moduli(&disc(-23), 128).unwrap().is_empty());
        assert!(real_nondominant_singular_moduli(&disc(-3), 128).unwrap().is_empty());
    }

    #[test]
    fn mismatched_form_is_rejected() {
        let f = Form::principal(&disc(-7));
        assert!(matches!(evaluate_singular_modulus(&f, &disc(-8), 64), Err(Error::InvalidForm(_))));
    }

    #[test]
    fn dominant_sign_follows_residue() {
        for d in [-12i64, -15, -16, -20, -23, -24, -27, -31, -3999, -4000] {
            let v = dominant_singular_modulus(&disc(d), 128).unwrap();
            assert_eq!(v.value.re.is_positive(), d % 4 == 0, "Δ={d}");
        }
    }

    #[test]
    fn refinement_nests() {
        for d in [-23i64, -84, -1555] {
            let coarse = all_singular_moduli(&disc(d), 128).unwrap();
            let fine = all_singular_moduli(&disc(d), 256).unwrap();
            for (c, f) in coarse.iter().zip(&fine) {
                assert!(c.value.contains(&f.value), "Δ={d} {}", c.form);
            }
        }
    }

    #[test]
    fn tight_precision_is_exhausted_by_coefficient_limit() {
        let t = Ball::pi(64).mul(&Ball::from_i64(64, 3).sqrt().unwrap());
        assert!(matches!(truncation(&t, 100_000, 1500), Err(Error::PrecisionExhausted(_))));
        let (n, _) = truncation(&t, 8192, 1500).unwrap();
        assert!(n <= 1500);
    }
}
