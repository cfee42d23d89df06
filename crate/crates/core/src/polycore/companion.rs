//! Float-mode root finding: eigenvalues of a balanced companion matrix give
//! starting points, which Newton's method then polishes at full working precision.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use rug::Float;

use super::poly::Poly;
use super::roots::{IsolatedRoot, RootInterval, RootSet};
use super::scalar::{BigFloat, Coeff};
use super::PolyError;

const MAX_NEWTON_ITERATIONS: usize = 100;

/// Companion matrix of the monic normalization of `coeffs` (ascending powers).
fn companion(coeffs: &[f64]) -> DMatrix<f64> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    let mut m = DMatrix::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lc;
    }
    m
}

/// Parlett–Reinsch balancing with radix 2: diagonal similarity that equalizes
/// row and column norms. Eigenvalues are unchanged.
pub fn balance(m: &mut DMatrix<f64>) {
    const RADIX: f64 = 2.0;
    let n = m.nrows();
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// Complex eigenvalues `(re, im)` of the balanced companion matrix.
pub fn companion_eigenvalues(coeffs: &[f64]) -> Vec<(f64, f64)> {
    if coeffs.len() < 2 {
        return Vec::new();
    }
    let mut m = companion(coeffs);
    balance(&mut m);
    let schur = nalgebra::linalg::Schur::new(m);
    schur
        .complex_eigenvalues()
        .iter()
        .map(|z| (z.re, z.im))
        .collect()
}

/// Newton iteration at the polynomial's working precision. Returns the root and
/// the final correction size.
fn polish(p: &Poly<BigFloat>, dp: &Poly<BigFloat>, start: f64, prec: u32) -> Result<(BigFloat, BigFloat), PolyError> {
    let mut x = BigFloat::with_prec(prec, start);
    let tiny = BigFloat::epsilon(prec);
    let mut last_step: Option<BigFloat> = None;
    for _ in 0..MAX_NEWTON_ITERATIONS {
        let v = p.eval(&x);
        if v.is_zero() {
            return Ok((x, BigFloat::with_prec(prec, 0.0)));
        }
        let d = dp.eval(&x);
        if d.is_zero() {
            return Err(PolyError::IllConditioned(format!(
                "derivative vanishes near {}",
                x.to_decimal(12)
            )));
        }
        let step = v.div_ref(&d);
        x = x.sub_ref(&step);
        let scale = if x.is_zero() { BigFloat::with_prec(prec, 1.0) } else { x.abs_ref() };
        let bound = scale.mul_ref(&tiny).mul_ref(&BigFloat::with_prec(prec, 16.0));
        let step_abs = step.abs_ref();
        // converged when the correction is at rounding level, or stopped shrinking
        // after having become small
        if step_abs <= bound {
            return Ok((x, step_abs));
        }
        if let Some(prev) = &last_step {
            let stalled = step_abs >= *prev;
            let small = step_abs.0.clone().sqrt() <= bound.0.clone().sqrt() * Float::with_val(prec, 1u32 << 16);
            if stalled && small {
                return Ok((x, step_abs));
            }
        }
        last_step = Some(step_abs);
    }
    Err(PolyError::IllConditioned(format!(
        "Newton polishing did not converge in {} iterations near {}",
        MAX_NEWTON_ITERATIONS,
        x.to_decimal(12)
    )))
}

/// Isolates the real roots of a float-mode polynomial.
///
/// Eigenvalues with an imaginary part below `1e-7 * max(1, |z|)` are treated as
/// real candidates and polished; polished candidates that agree to a relative
/// `1e-9` are merged and counted as one root with multiplicity. Each interval
/// is centred on the polished root with half-width `width / 2`, which must
/// dominate the a-posteriori bound `deg * |p(x) / p'(x)|`.
pub fn isolate_float(p: &Poly<BigFloat>, width: &BigFloat) -> Result<RootSet<BigFloat>, PolyError> {
    if width.sign() != Ordering::Greater {
        return Err(PolyError::InvalidWidth(width.to_decimal(6)));
    }
    let Some(deg) = p.degree() else {
        return Err(PolyError::ZeroPolynomial);
    };
    let prec = p.coeffs().iter().map(BigFloat::prec).max().unwrap_or(super::scalar::DEFAULT_FLOAT_PRECISION);
    if deg == 0 {
        return Ok(RootSet { roots: Vec::new(), squarefree: true, numeric: true });
    }
    let f64_coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64()).collect();
    if f64_coeffs.iter().any(|c| !c.is_finite()) {
        return Err(PolyError::IllConditioned("coefficients overflow f64".into()));
    }
    let dp = p.derivative();
    let mut found: Vec<(BigFloat, usize)> = Vec::new();
    for (re, im) in companion_eigenvalues(&f64_coeffs) {
        if im.abs() > 1e-7 * re.abs().max(1.0) {
            continue;
        }
        let (x, _) = polish(p, &dp, re, prec)?;
        let merged = found.iter_mut().find(|(y, _)| {
            let diff = x.sub_ref(y).abs_ref().to_f64();
            diff <= 1e-9 * x.to_f64().abs().max(y.to_f64().abs()).max(f64::MIN_POSITIVE)
        });
        match merged {
            Some((_, m)) => *m += 1,
            None => found.push((x, 1)),
        }
    }
    found.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
    let half = width.div_ref(&BigFloat::with_prec(prec, 2.0));
    let n = BigFloat::with_prec(prec, deg as f64);
    let mut roots = Vec::with_capacity(found.len());
    for (x, multiplicity) in found {
        let (v, d) = p.eval_with_derivative(&x);
        if multiplicity == 1 && !d.is_zero() {
            let radius = n.mul_ref(&v.div_ref(&d).abs_ref());
            if radius > half {
                return Err(PolyError::IllConditioned(format!(
                    "root near {} cannot be enclosed within width {}",
                    x.to_decimal(12),
                    width.to_decimal(6)
                )));
            }
        }
        roots.push(IsolatedRoot {
            interval: RootInterval { lo: x.sub_ref(&half), hi: x.add_ref(&half) },
            multiplicity,
        });
    }
    let squarefree = roots.iter().all(|r| r.multiplicity == 1);
    Ok(RootSet { roots, squarefree, numeric: true })
}
