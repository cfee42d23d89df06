use rug::{Float, Rational};

use super::quadrature::integrate_half_line;
use super::FamilyError;
use crate::polycore::BigFloat;

pub const BESSEL_REL_TOL: f64 = 1e-12;

/// Modified Bessel function of the second kind, `K_nu(z) = ∫_0^∞ e^{-z cosh t} cosh(nu t) dt`.
pub fn bessel_k(nu: f64, z: f64) -> Result<f64, FamilyError> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(FamilyError::InvalidParameter(format!("bessel_k needs z > 0, got {}", z)));
    }
    if !nu.is_finite() {
        return Err(FamilyError::InvalidParameter(format!("bessel_k order must be finite, got {}", nu)));
    }
    let nu = nu.abs();
    // e^{-z cosh t} cosh(nu t), arranged so neither exponential overflows
    let integrand = |t: f64| 0.5 * (-z * t.cosh() + nu * t).exp() * (1.0 + (-2.0 * nu * t).exp());
    integrate_half_line(integrand, BESSEL_REL_TOL)
}

/// Gamma function at a rational point, correctly rounded at `prec` bits.
pub fn gamma(x: &Rational, prec: u32) -> BigFloat {
    BigFloat(Float::with_val(prec, x).gamma())
}
