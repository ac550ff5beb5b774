//! Certified refutation of linear relations between singular moduli.

use std::fmt;

use rug::Float;

use crate::ball::CertifiedValue;
use crate::jfun::{evaluate_singular_modulus, SingularModulusValue, PRECISION_CAP};
use crate::{Error, Result};

/// Outcome of testing `Σ sᵢ·xᵢ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// One component of the enclosure has `|midpoint| = margin > radius`,
    /// so the sum is certified nonzero.
    Refuted { margin: Float, radius: Float, precision_bits: u32 },
    /// The enclosure contains zero at every precision tried.
    Inconclusive { precision_bits: u32 },
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn precision_bits(&self) -> u32 {
        match self {
            Verdict::Refuted { precision_bits, .. } | Verdict::Inconclusive { precision_bits } => *precision_bits,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Refuted { margin, radius, precision_bits } => write!(
                f,
                "refuted at {precision_bits} bits: margin {} > radius {}",
                margin.to_string_radix(10, Some(6)),
                radius.to_string_radix(10, Some(3))
            ),
            Verdict::Inconclusive { precision_bits } => write!(f, "inconclusive at {precision_bits} bits"),
        }
    }
}

/// `Σ signs[i]·values[i]`.
pub fn combination(values: &[&CertifiedValue], signs: &[i64]) -> CertifiedValue {
    assert_eq!(values.len(), signs.len());
    let prec = values.iter().map(|v| v.precision_bits()).max().unwrap_or(64);
    values.iter().zip(signs).fold(CertifiedValue::zero(prec), |acc, (v, &s)| acc.add(&v.mul_i64(s)))
}

/// Verdict for a single enclosure of the combination.
pub fn verdict_of(sum: &CertifiedValue) -> Verdict {
    let precision_bits = sum.precision_bits();
    for part in [&sum.re, &sum.im] {
        let margin = Float::with_val(part.prec(), &*part.mid().as_abs());
        if margin > *part.rad() {
            return Verdict::Refuted { margin, radius: part.rad().clone(), precision_bits };
        }
    }
    Verdict::Inconclusive { precision_bits }
}

/// Tests the combination at `start` bits and doubles the precision up to
/// `cap` while inconclusive. `eval(p)` returns the terms at `p` bits; an
/// evaluation error ends the escalation as inconclusive.
pub fn refute_with<F>(signs: &[i64], start: u32, cap: u32, mut eval: F) -> (Verdict, Vec<u32>)
where
    F: FnMut(u32) -> Result<Vec<CertifiedValue>>,
{
    let mut prec = start.min(cap);
    let mut tried = Vec::new();
    loop {
        tried.push(prec);
        let verdict = match eval(prec) {
            Ok(values) => {
                let refs: Vec<&CertifiedValue> = values.iter().collect();
                verdict_of(&combination(&refs, signs))
            }
            Err(_) => Verdict::Inconclusive { precision_bits: prec },
        };
        if verdict.is_refuted() || prec >= cap {
            return (verdict, tried);
        }
        prec = (prec * 2).min(cap);
    }
}

fn check_signs(n_terms: usize, signs: &[i64]) -> Result<()> {
    if n_terms != signs.len() || n_terms < 2 {
        return Err(Error::Arity { id: "linear_relation".into(), expected: n_terms.max(2), got: signs.len() });
    }
    if signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::InvalidForm("signs must be ±1".into()));
    }
    Ok(())
}

/// Refutes `Σ signs[i]·terms[i] = 0`, escalating from `precision_bits` up
/// to `cap` by re-evaluating every term.
pub fn refute_linear_relation_with_cap(
    terms: &[SingularModulusValue],
    signs: &[i64],
    precision_bits: u32,
    cap: u32,
) -> Result<Verdict> {
    check_signs(terms.len(), signs)?;
    let (verdict, _) = refute_with(signs, precision_bits, cap, |p| {
        terms
            .iter()
            .map(|t| {
                if t.value.precision_bits() == p {
                    Ok(t.value.clone())
                } else {
                    evaluate_singular_modulus(&t.form, &t.delta, p).map(|v| {
                        if t.real_class {
                            CertifiedValue::real(v.re)
                        } else {
                            v
                        }
                    })
                }
            })
            .collect()
    });
    Ok(verdict)
}

/// [`refute_linear_relation_with_cap`] with the default cap.
pub fn refute_linear_relation(terms: &[SingularModulusValue], signs: &[i64], precision_bits: u32) -> Result<Verdict> {
    refute_linear_relation_with_cap(terms, signs, precision_bits, PRECISION_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminants::factor_discriminant;
    use crate::jfun::dominant_singular_modulus;

    fn dom(d: i64) -> SingularModulusValue {
        dominant_singular_modulus(&factor_discriminant(d).unwrap(), 128).unwrap()
    }

    #[test]
    fn identical_terms_are_inconclusive() {
        let x = dom(-23);
        for p in [64, 128, 512] {
            let v = refute_linear_relation_with_cap(&[x.clone(), x.clone()], &[1, -1], p, p).unwrap();
            assert_eq!(v, Verdict::Inconclusive { precision_bits: p });
        }
    }

    #[test]
    fn rational_combinations() {
        let (a, b, c) = (dom(-3), dom(-4), dom(-7));
        let v = refute_linear_relation(&[a.clone(), a.clone(), b.clone(), c], &[1, 1, -1, -1], 128).unwrap();
        match v {
            Verdict::Refuted { margin, radius, .. } => {
                assert!(margin > radius);
                assert!((margin.to_f64() - 1647.0).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
        assert!(refute_linear_relation(&[b, a], &[1, -1], 128).unwrap().is_refuted());
    }

    #[test]
    fn escalation_reaches_refutation() {
        use crate::ball::Ball;
        // 1 + 2^-100 versus 1: separable only above 100 bits.
        let (v, tried) = refute_with(&[1, -1], 32, 1024, |p| {
            let tiny = Ball::with_radius(rug::Float::with_val(p, 1) >> 100u32, &rug::Float::new(32));
            Ok(vec![CertifiedValue::real(Ball::from_i64(p, 1).add(&tiny)), CertifiedValue::from_i64(p, 1)])
        });
        assert!(v.is_refuted());
        assert_eq!(tried, vec![32, 64, 128]);
    }

    #[test]
    fn bad_signs_are_rejected() {
        let x = dom(-3);
        assert!(refute_linear_relation(std::slice::from_ref(&x), &[1], 64).is_err());
        assert!(refute_linear_relation(&[x.clone(), x], &[1, 2], 64).is_err());
    }
}
