use std::cmp::Ordering;

use rug::Rational;

use super::boundary::{boundary_zeros, smooth_sample_points};
use super::classify::KClassification;
use super::surd::QuadSurd;
use super::IfError;
use crate::polycore::Poly;

fn check_regular(k: &KClassification, x: f64) -> Result<(), IfError> {
    let hits_power = k.form.powers.iter().any(|p| !p.exponent.is_zero() && p.root.to_f64() == x);
    let hits_pole = k.form.pole.as_ref().is_some_and(|p| p.root.to_f64() == x);
    if hits_power || hits_pole {
        return Err(IfError::SingularPoint(x));
    }
    Ok(())
}

/// `log |K(x)|` for the closed form, normalized so the factors carry no constant.
pub fn log_k_eval(k: &KClassification, x: f64) -> Result<f64, IfError> {
    check_regular(k, x)?;
    let f = &k.form;
    let mut acc = f.quadratic.to_f64() * x * x + f.linear.to_f64() * x;
    for p in &f.powers {
        if !p.exponent.is_zero() {
            acc += p.exponent.to_f64() * (x - p.root.to_f64()).abs().ln();
        }
    }
    if let Some(pole) = &f.pole {
        acc += pole.coefficient.to_f64() / (x - pole.root.to_f64());
    }
    if let Some(irr) = &f.irreducible {
        let u = x - irr.center.to_f64();
        let w2 = irr.width_sq.to_f64();
        acc += irr.half_exponent.to_f64() * (u * u + w2).ln() + irr.arc.to_f64() * (u / w2.sqrt()).atan();
    }
    Ok(acc)
}

/// `|K(x)|` in double precision.
pub fn k_eval(k: &KClassification, x: f64) -> Result<f64, IfError> {
    log_k_eval(k, x).map(f64::exp)
}

/// `|K(x)|` at a rational point; the singularity test is exact.
pub fn k_eval_rational(k: &KClassification, x: &Rational) -> Result<f64, IfError> {
    let singular = k.form.powers.iter().any(|p| !p.exponent.is_zero() && p.root.cmp_rational(x) == Ordering::Equal)
        || k.form.pole.as_ref().is_some_and(|p| &p.root == x);
    if singular {
        return Err(IfError::SingularPoint(x.to_f64()));
    }
    k_eval(k, x.to_f64())
}

/// Centered difference `(log K(x + h) - log K(x - h)) / 2h`, summed factor by
/// factor so the large logarithms never cancel against each other.
pub fn log_derivative_fd(k: &KClassification, x: f64, h: f64) -> Result<f64, IfError> {
    for y in [x - h, x, x + h] {
        check_regular(k, y)?;
    }
    let f = &k.form;
    let mut acc = 2.0 * f.quadratic.to_f64() * x + f.linear.to_f64();
    for p in &f.powers {
        if !p.exponent.is_zero() {
            let d = x - h - p.root.to_f64();
            acc += p.exponent.to_f64() * (2.0 * h / d).ln_1p() / (2.0 * h);
        }
    }
    if let Some(pole) = &f.pole {
        let r = pole.root.to_f64();
        acc -= pole.coefficient.to_f64() / ((x + h - r) * (x - h - r));
    }
    if let Some(irr) = &f.irreducible {
        let u = x - irr.center.to_f64();
        let w2 = irr.width_sq.to_f64();
        let w = w2.sqrt();
        let lower = (u - h) * (u - h) + w2;
        acc += irr.half_exponent.to_f64() * (4.0 * u * h / lower).ln_1p() / (2.0 * h);
        let (a, b) = ((u + h) / w, (u - h) / w);
        acc += irr.arc.to_f64() * ((2.0 * h / w) / (1.0 + a * b)).atan() / (2.0 * h);
    }
    Ok(acc)
}

/// `d/dx log |K|` at a rational point, exactly; `None` at a singular point.
pub fn exact_log_derivative(k: &KClassification, x: &Rational) -> Option<QuadSurd> {
    let f = &k.form;
    let xq = QuadSurd::rational(x.clone());
    let mut acc = QuadSurd::rational(Rational::from(&f.quadratic * x) * 2u32 + &f.linear);
    for p in &f.powers {
        if !p.exponent.is_zero() {
            acc = acc.add(&p.exponent.div(&xq.sub(&p.root))?);
        }
    }
    if let Some(pole) = &f.pole {
        let d = Rational::from(x - &pole.root);
        if d.cmp0() == Ordering::Equal {
            return None;
        }
        let sq = Rational::from(&d * &d);
        acc = acc.add(&QuadSurd::rational(Rational::from(-&pole.coefficient) / sq));
    }
    if let Some(irr) = &f.irreducible {
        // arc * w / (u^2 + w^2) with arc * w = B(center), rational
        let u = Rational::from(x - &irr.center);
        let denom = Rational::from(&u * &u) + &irr.width_sq;
        let arc_w = irr.arc.mul(&QuadSurd::sqrt(irr.width_sq.clone()));
        let term = Rational::from(&irr.half_exponent * &u) * 2u32 / &denom;
        acc = acc.add(&QuadSurd::rational(term)).add(&arc_w.scale(&(Rational::from(1) / denom)));
    }
    Some(acc)
}

fn eval_f64(p: &Poly<Rational>, x: f64) -> f64 {
    p.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
}

pub const FD_STEP: f64 = 1e-6;
pub const SAMPLES_PER_INTERVAL: usize = 50;
/// below this `|B / A|` the error is measured absolutely
pub const NEGLIGIBLE_LOG_DERIVATIVE: f64 = 1e-8;

/// One sampled comparison of the finite difference against `B / A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDerivativeSample {
    pub x: f64,
    pub finite_difference: f64,
    pub expected: f64,
    /// relative error, or absolute where `B / A` is negligible
    pub error: f64,
    pub relative: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogDerivativeCheck {
    pub samples: Vec<LogDerivativeSample>,
    pub max_rel_error: f64,
    pub max_abs_error: f64,
}

/// Compares the finite difference of `log |K|` with `B / A` at `per_interval`
/// points in every smooth interval.
pub fn check_log_derivative(k: &KClassification, per_interval: usize) -> Result<LogDerivativeCheck, IfError> {
    let g = k.a.gcd(&k.b);
    let (a, b) = if g.degree().unwrap_or(0) > 0 {
        (k.a.divrem(&g)?.0, k.b.divrem(&g)?.0)
    } else {
        (k.a.clone(), k.b.clone())
    };
    let spec = boundary_zeros(k);
    let mut samples = Vec::new();
    for x in smooth_sample_points(k, &spec, per_interval) {
        let expected = eval_f64(&b, x) / eval_f64(&a, x);
        let fd = log_derivative_fd(k, x, FD_STEP)?;
        let relative = expected.abs() >= NEGLIGIBLE_LOG_DERIVATIVE;
        let diff = (fd - expected).abs();
        let error = if relative { diff / expected.abs() } else { diff };
        samples.push(LogDerivativeSample { x, finite_difference: fd, expected, error, relative });
    }
    if samples.is_empty() {
        return Err(IfError::NoSamples);
    }
    let max_of = |rel: bool| samples.iter().filter(|s| s.relative == rel).map(|s| s.error).fold(0.0, f64::max);
    let (max_rel_error, max_abs_error) = (max_of(true), max_of(false));
    Ok(LogDerivativeCheck { samples, max_rel_error, max_abs_error })
}

#[cfg(test)]
mod tests {
    use super::super::classify::classify;
    use super::*;
    use crate::dde::CoefficientPair;

    fn k(a: &[i64], b: &[i64]) -> KClassification {
        classify(&CoefficientPair::from_i64s(a, b).unwrap()).unwrap()
    }

    #[test]
    fn spot_values() {
        // K = x^2 - 1
        let ef = k(&[-1, 0, 1], &[0, 2]);
        assert!((k_eval(&ef, 2.0).unwrap() - 3.0).abs() < 1e-14);
        assert!((k_eval(&ef, 0.0).unwrap() - 1.0).abs() < 1e-14);
        assert!(matches!(k_eval(&ef, 1.0), Err(IfError::SingularPoint(_))));
        assert!(k_eval_rational(&ef, &Rational::from(-1)).is_err());
        let bell = k(&[0, 1], &[0, 1]);
        assert_eq!(k_eval(&bell, 0.0).unwrap(), 1.0);
        let zero = k(&[-4, 0, 1], &[]);
        for x in [-3.0, 0.0, 2.0, 7.5] {
            assert_eq!(k_eval(&zero, x).unwrap(), 1.0);
        }
        let hermite = k(&[-1], &[0, 2]);
        assert!((k_eval(&hermite, 1.5).unwrap() - (-2.25f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn pole_and_arctangent_forms() {
        // A = x^2, B = 1: K = exp(-1/x)
        let pole = k(&[0, 0, 1], &[1]);
        assert!((k_eval(&pole, 2.0).unwrap() - (-0.5f64).exp()).abs() < 1e-15);
        // A = x^2 + 1, B = 1: K = exp(atan x)
        let arc = k(&[1, 0, 1], &[1]);
        assert!((log_k_eval(&arc, 1.0).unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn log_derivative_matches_on_every_shape() {
        let pairs: [(&[i64], &[i64]); 9] = [
            (&[-1, 0, 1], &[0, 7]),
            (&[0, 1], &[0, 1]),
            (&[-1], &[0, 2]),
            (&[0, 0, 1], &[1]),
            (&[1, -2, 1], &[3, 5]),
            (&[1, 0, 1], &[1, 2]),
            (&[-2, 0, 1], &[1, -3]),
            (&[3, 1], &[4]),
            (&[-4, 0, 1], &[]),
        ];
        for (a, b) in pairs {
            let kc = k(a, b);
            let check = check_log_derivative(&kc, SAMPLES_PER_INTERVAL).unwrap();
            assert!(check.max_rel_error < 1e-5, "{:?} {:?}: {}", a, b, check.max_rel_error);
            assert!(check.max_abs_error < 1e-8);
        }
    }

    #[test]
    fn exact_derivative_equals_b_over_a() {
        let pairs: [(&[i64], &[i64]); 6] = [
            (&[-2, 0, 1], &[1, -3]),
            (&[0, 0, 1], &[1]),
            (&[1, -2, 1], &[3, 5]),
            (&[1, 2, 5], &[1, 2]),
            (&[3, 1], &[4]),
            (&[-1], &[0, 2]),
        ];
        for (a, b) in pairs {
            let kc = k(a, b);
            for x in [Rational::from((7, 3)), Rational::from((-11, 5)), Rational::from((1, 7))] {
                let want = kc.b.eval(&x) / kc.a.eval(&x) ;
                assert_eq!(exact_log_derivative(&kc, &x), Some(QuadSurd::rational(want)), "{:?} {:?}", a, b);
            }
        }
        assert_eq!(exact_log_derivative(&k(&[0, 0, 1], &[1]), &Rational::new()), None);
    }

    #[test]
    fn zero_b_is_checked_absolutely() {
        let check = check_log_derivative(&k(&[-4, 0, 1], &[]), 10).unwrap();
        assert_eq!(check.samples.len(), 10);
        assert!(check.samples.iter().all(|s| !s.relative));
        assert_eq!(check.max_abs_error, 0.0);
    }
}
