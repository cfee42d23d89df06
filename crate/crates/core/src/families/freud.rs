//! Orthonormal polynomials for the quartic Freud weight `exp(-x^4 + 2t x^2)`:
//! recurrence coefficients from the string equation and the sequence they generate.

use std::cmp::Ordering;

use rug::{Float, Rational};

use super::quadrature::integrate_half_line;
use super::special::{bessel_k, gamma};
use super::FamilyError;
use crate::dde::{admits_dde_float, sample_xy, AdmissibilityResult, PolySequence, XySamples};
use crate::polycore::{isolate_float, BigFloat, Coeff, Poly};

/// Forward iteration of the string equation loses digits with every step.
pub const FREUD_MAX_N: usize = 32;
pub const FREUD_MIN_PRECISION: u32 = 128;

#[derive(Debug, Clone, PartialEq)]
pub struct FreudData {
    pub t: Rational,
    /// `a_0 .. a_N`
    pub a: Vec<BigFloat>,
    pub precision: u32,
    /// `|n - 4 a_n^2 (a_{n+1}^2 + a_n^2 + a_{n-1}^2 - t)|`, entry `i` for `n = i + 1`
    pub residuals: Vec<BigFloat>,
}

impl FreudData {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.to_f64()).fold(0.0, f64::max)
    }
}

/// `a_1^2 = mu_2 / mu_0` for the weight, by quadrature. The shifted exponent
/// `-(x^2 - t)^2` changes only the normalization and keeps `e^{t^2}` out of range.
fn a1_squared_by_moments(t: f64) -> Result<f64, FamilyError> {
    let w = |x: f64| (-(x * x - t).powi(2)).exp();
    let m0 = integrate_half_line(w, 1e-14)?;
    let m2 = integrate_half_line(|x| x * x * w(x), 1e-14)?;
    Ok(m2 / m0)
}

fn a1_squared(t: &Rational, prec: u32) -> Result<BigFloat, FamilyError> {
    match t.cmp0() {
        Ordering::Equal => {
            let g = gamma(&Rational::from((3, 4)), prec).0;
            let pi = Float::with_val(prec, rug::float::Constant::Pi);
            let root4 = Float::with_val(prec, 2).root(4);
            let a1 = g / (root4 * pi.sqrt());
            Ok(BigFloat(Float::with_val(prec, a1.square_ref())))
        }
        Ordering::Less => {
            let tf = t.to_f64();
            let z = tf * tf / 2.0;
            let ratio = bessel_k(0.75, z)? / bessel_k(0.25, z)?;
            Ok(BigFloat::with_prec(prec, tf.abs() / 2.0 * (ratio - 1.0)))
        }
        Ordering::Greater => Ok(BigFloat::with_prec(prec, a1_squared_by_moments(t.to_f64())?)),
    }
}

/// `a_0 .. a_N` from `a_{n+1}^2 = n / (4 a_n^2) - a_n^2 - a_{n-1}^2 + t`.
pub fn freud_recurrence_coeffs(t: &Rational, n_max: usize, precision: u32) -> Result<FreudData, FamilyError> {
    if n_max > FREUD_MAX_N {
        return Err(FamilyError::InvalidParameter(format!(
            "freud recurrence limited to N <= {}, got {}",
            FREUD_MAX_N, n_max
        )));
    }
    if n_max < 1 {
        return Err(FamilyError::InvalidParameter("freud recurrence needs N >= 1".into()));
    }
    if precision < FREUD_MIN_PRECISION {
        return Err(FamilyError::InvalidParameter(format!(
            "freud recurrence needs at least {} bits, got {}",
            FREUD_MIN_PRECISION, precision
        )));
    }
    let tf = BigFloat::from_rational_prec(t, precision);
    let four = BigFloat::with_prec(precision, 4.0);
    let mut sq = vec![BigFloat::with_prec(precision, 0.0), a1_squared(t, precision)?];
    for n in 1..n_max {
        let nf = BigFloat::with_prec(precision, n as f64);
        let next = nf
            .div_ref(&four.mul_ref(&sq[n]))
            .sub_ref(&sq[n])
            .sub_ref(&sq[n - 1])
            .add_ref(&tf);
        if next.sign() != Ordering::Greater {
            return Err(FamilyError::Numeric(format!(
                "a_{}^2 = {} is not positive; the string equation iteration has lost all accuracy",
                n + 1,
                next.to_decimal(6)
            )));
        }
        sq.push(next);
    }
    if sq[1].sign() != Ordering::Greater {
        return Err(FamilyError::Numeric("a_1^2 is not positive".into()));
    }
    let residuals = (1..n_max)
        .map(|n| {
            let bracket = sq[n + 1].add_ref(&sq[n]).add_ref(&sq[n - 1]).sub_ref(&tf);
            BigFloat::with_prec(precision, n as f64)
                .sub_ref(&four.mul_ref(&sq[n]).mul_ref(&bracket))
                .abs_ref()
        })
        .collect();
    Ok(FreudData { t: t.clone(), a: sq.iter().map(BigFloat::sqrt).collect(), precision, residuals })
}

/// Checks of the closed form `P_5 = (x^5 - alpha x^3 + beta x) / (a_1 ... a_5)`.
#[derive(Debug, Clone, PartialEq)]
pub struct P5Check {
    pub alpha: BigFloat,
    pub beta: BigFloat,
    pub zeta_plus: BigFloat,
    pub zeta_minus: BigFloat,
    /// largest relative error among the scaled coefficients of `x^5`, `x^3`, `x`
    pub coefficient_error: f64,
    /// positive zeros of `P_5`, ascending
    pub positive_zeros: Vec<BigFloat>,
    /// largest relative gap between those zeros and `sqrt(zeta_-)`, `sqrt(zeta_+)`
    pub zero_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreudSequence {
    pub seq: PolySequence<BigFloat>,
    pub parity_ok: bool,
    pub p5: Option<P5Check>,
}

fn rel(a: &BigFloat, b: &BigFloat) -> f64 {
    let d = a.sub_ref(b).abs_ref();
    if b.is_zero() {
        d.to_f64()
    } else {
        d.div_ref(&b.abs_ref()).to_f64()
    }
}

fn check_p5(p5: &Poly<BigFloat>, a: &[BigFloat], prec: u32) -> Result<P5Check, FamilyError> {
    let sq: Vec<BigFloat> = a.iter().map(|v| v.mul_ref(v)).collect();
    let alpha = sq[1].add_ref(&sq[2]).add_ref(&sq[3]).add_ref(&sq[4]);
    let beta = sq[1].mul_ref(&sq[3]).add_ref(&sq[1].mul_ref(&sq[4])).add_ref(&sq[2].mul_ref(&sq[4]));
    let disc = alpha.mul_ref(&alpha).sub_ref(&BigFloat::with_prec(prec, 4.0).mul_ref(&beta));
    if disc.sign() == Ordering::Less {
        return Err(FamilyError::Numeric("alpha^2 - 4 beta is negative".into()));
    }
    let half = BigFloat::with_prec(prec, 0.5);
    let zeta_plus = alpha.add_ref(&disc.sqrt()).mul_ref(&half);
    let zeta_minus = alpha.sub_ref(&disc.sqrt()).mul_ref(&half);
    let norm = a[1..=5].iter().fold(BigFloat::with_prec(prec, 1.0), |acc, v| acc.mul_ref(v));
    let numerator = p5.scale(&norm);
    let expected = [
        (1, beta.clone()),
        (3, alpha.neg_ref()),
        (5, BigFloat::with_prec(prec, 1.0)),
    ];
    let coefficient_error = expected
        .iter()
        .map(|(k, v)| rel(&numerator.coeff(*k), v))
        .fold(0.0, f64::max);
    let width = BigFloat::epsilon(prec).sqrt();
    let roots = isolate_float(p5, &width).map_err(|e| FamilyError::Numeric(e.to_string()))?;
    let positive_zeros: Vec<BigFloat> = roots
        .midpoints()
        .into_iter()
        .filter(|x| x.sub_ref(&width).sign() == Ordering::Greater)
        .collect();
    if positive_zeros.len() != 2 {
        return Err(FamilyError::Numeric(format!("P_5 has {} positive zeros, expected 2", positive_zeros.len())));
    }
    let zero_error = rel(&positive_zeros[0], &zeta_minus.sqrt()).max(rel(&positive_zeros[1], &zeta_plus.sqrt()));
    Ok(P5Check { alpha, beta, zeta_plus, zeta_minus, coefficient_error, positive_zeros, zero_error })
}

/// `P_0 = 1`, `P_1 = x / a_1`, then `P_{n+1} = (x P_n - a_n P_{n-1}) / a_{n+1}`.
pub fn freud_sequence(data: &FreudData, n_max: usize) -> Result<FreudSequence, FamilyError> {
    if data.a.len() < n_max + 1 {
        return Err(FamilyError::InvalidParameter(format!(
            "P_{} needs a_0 .. a_{}, only {} coefficients available",
            n_max,
            n_max,
            data.a.len()
        )));
    }
    let prec = data.precision;
    let one = BigFloat::with_prec(prec, 1.0);
    let x = Poly::new(vec![BigFloat::with_prec(prec, 0.0), one.clone()]);
    let mut polys = vec![Poly::constant(one.clone())];
    if n_max >= 1 {
        polys.push(x.scale(&one.div_ref(&data.a[1])));
    }
    for k in 1..n_max {
        let next = (&(&x * &polys[k]) - &polys[k - 1].scale(&data.a[k])).scale(&one.div_ref(&data.a[k + 1]));
        polys.push(next);
    }
    let parity_ok = polys
        .iter()
        .enumerate()
        .all(|(n, p)| p.coeffs().iter().enumerate().all(|(k, c)| (k + n) % 2 == 0 || c.is_zero()));
    let p5 = if n_max >= 5 { Some(check_p5(&polys[5], &data.a, prec)?) } else { None };
    Ok(FreudSequence {
        seq: PolySequence { polys, collapsed: Vec::new(), truncated: None },
        parity_ok,
        p5,
    })
}

/// Everything needed to show that the Freud polynomials fail the
/// admissibility test at `n = 5`.
#[derive(Debug, Clone, PartialEq)]
pub struct FreudDemo {
    pub data: FreudData,
    pub sequence: FreudSequence,
    pub admissibility: AdmissibilityResult<BigFloat>,
    /// `(x_{5,k}, y_{5,k})` with `y = P_6 / P_5'`
    pub samples: XySamples<BigFloat>,
    /// interpolant of the samples, ascending coefficients, degree at most 4
    pub interpolant: Poly<BigFloat>,
    /// largest `|L(x_k) - y_k|` relative to `max |y_k|`
    pub interpolant_fit: f64,
}

impl FreudDemo {
    pub fn interpolant_degree(&self) -> Option<usize> {
        self.interpolant.degree()
    }
}

/// Solves the Vandermonde system for the interpolant through `points`.
fn interpolate(points: &[(BigFloat, BigFloat)], prec: u32) -> Result<Poly<BigFloat>, FamilyError> {
    let m = points.len();
    let mut rows: Vec<Vec<BigFloat>> = points
        .iter()
        .map(|(x, y)| {
            let mut row = Vec::with_capacity(m + 1);
            let mut p = BigFloat::with_prec(prec, 1.0);
            for _ in 0..m {
                row.push(p.clone());
                p = p.mul_ref(x);
            }
            row.push(y.clone());
            row
        })
        .collect();
    for c in 0..m {
        let pivot = (c..m)
            .max_by(|&i, &j| rows[i][c].abs_ref().partial_cmp(&rows[j][c].abs_ref()).unwrap_or(Ordering::Equal))
            .expect("nonempty");
        if rows[pivot][c].is_zero() {
            return Err(FamilyError::Numeric("interpolation nodes coincide".into()));
        }
        rows.swap(c, pivot);
        for i in c + 1..m {
            let f = rows[i][c].div_ref(&rows[c][c]);
            for j in c..=m {
                let d = f.mul_ref(&rows[c][j]);
                rows[i][j] = rows[i][j].sub_ref(&d);
            }
        }
    }
    let mut coeffs = vec![BigFloat::with_prec(prec, 0.0); m];
    for i in (0..m).rev() {
        let mut s = rows[i][m].clone();
        for j in i + 1..m {
            s = s.sub_ref(&rows[i][j].mul_ref(&coeffs[j]));
        }
        coeffs[i] = s.div_ref(&rows[i][i]);
    }
    // coefficients at rounding level are structural zeros of an even interpolant
    let scale = coeffs.iter().map(|c| c.abs_ref().to_f64()).fold(0.0, f64::max);
    let floor = BigFloat::epsilon(prec).to_f64().sqrt() * scale;
    for c in coeffs.iter_mut() {
        if c.abs_ref().to_f64() <= floor {
            *c = BigFloat::with_prec(prec, 0.0);
        }
    }
    Ok(Poly::new(coeffs))
}

/// Generates `P_0 .. P_6`, runs the admissibility test and interpolates
/// `y_{5,k} = P_6(x_{5,k}) / P_5'(x_{5,k})`.
pub fn freud_demo(t: &Rational, precision: u32, rel_tol: f64) -> Result<FreudDemo, FamilyError> {
    let data = freud_recurrence_coeffs(t, 6, precision)?;
    let sequence = freud_sequence(&data, 6)?;
    let admissibility = admits_dde_float(&sequence.seq.polys, rel_tol)?;
    let width = BigFloat::epsilon(precision).sqrt();
    let samples = sample_xy(&sequence.seq.polys[5], &sequence.seq.polys[6], &width)?;
    let interpolant = interpolate(&samples.points, precision)?;
    let ymax = samples.points.iter().map(|p| p.1.abs_ref().to_f64()).fold(0.0, f64::max);
    let interpolant_fit = samples
        .points
        .iter()
        .map(|(x, y)| interpolant.eval(x).sub_ref(y).abs_ref().to_f64() / ymax)
        .fold(0.0, f64::max);
    Ok(FreudDemo { data, sequence, admissibility, samples, interpolant, interpolant_fit })
}
