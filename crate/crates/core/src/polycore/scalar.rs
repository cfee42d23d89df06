//! Coefficient scalars: exact rationals and extended-precision floats.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rug::float::Round;
use rug::{Float, Integer, Rational};

use super::PolyError;

/// Working precision used for float-mode polynomials unless overridden.
pub const DEFAULT_FLOAT_PRECISION: u32 = 256;
/// Float precision never drops below this many bits.
pub const MIN_FLOAT_PRECISION: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Rational,
    Float,
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarKind::Rational => f.write_str("rational"),
            ScalarKind::Float => f.write_str("float"),
        }
    }
}

/// Field operations needed by [`Poly`](super::Poly).
///
/// Binary operations on floats run at the larger of the two operand precisions.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const KIND: ScalarKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn abs_ref(&self) -> Self;
    fn sign(&self) -> Ordering;
    fn to_f64(&self) -> f64;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Coeff for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;

    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == Ordering::Equal
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        Rational::from(self / rhs)
    }
    fn neg_ref(&self) -> Self {
        Rational::from(-self)
    }
    fn abs_ref(&self) -> Self {
        Rational::from(self.abs_ref())
    }
    fn sign(&self) -> Ordering {
        self.cmp0()
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
}

/// An MPFR float that carries its own working precision.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigFloat(pub Float);

impl BigFloat {
    pub fn with_prec(prec: u32, v: f64) -> Self {
        BigFloat(Float::with_val(prec.max(MIN_FLOAT_PRECISION), v))
    }

    pub fn from_rational_prec(q: &Rational, prec: u32) -> Self {
        BigFloat(Float::with_val(prec.max(MIN_FLOAT_PRECISION), q))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn inner(&self) -> &Float {
        &self.0
    }

    pub fn sqrt(&self) -> Self {
        BigFloat(Float::with_val(self.prec(), self.0.sqrt_ref()))
    }

    /// Relative spacing of floats at this precision, `2^(1-prec)`.
    pub fn epsilon(prec: u32) -> Self {
        let one = Float::with_val(prec, 1);
        BigFloat(one >> (prec as i32 - 1))
    }

    fn binary_prec(&self, rhs: &Self) -> u32 {
        self.prec().max(rhs.prec())
    }

    /// Decimal rendering with the given number of significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        self.0.to_string_radix_round(10, Some(digits), Round::Nearest)
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({}; {} bits)", self.to_decimal(20), self.prec())
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // enough digits to round-trip the working precision
        let digits = (self.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1;
        f.write_str(&self.to_decimal(digits))
    }
}

impl Coeff for BigFloat {
    const KIND: ScalarKind = ScalarKind::Float;

    fn zero() -> Self {
        BigFloat(Float::with_val(DEFAULT_FLOAT_PRECISION, 0))
    }
    fn one() -> Self {
        BigFloat(Float::with_val(DEFAULT_FLOAT_PRECISION, 1))
    }
    fn from_i64(v: i64) -> Self {
        BigFloat(Float::with_val(DEFAULT_FLOAT_PRECISION.max(64), v))
    }
    fn from_rational(q: &Rational) -> Self {
        BigFloat::from_rational_prec(q, DEFAULT_FLOAT_PRECISION)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        BigFloat(Float::with_val(self.binary_prec(rhs), &self.0 + &rhs.0))
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        BigFloat(Float::with_val(self.binary_prec(rhs), &self.0 - &rhs.0))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        BigFloat(Float::with_val(self.binary_prec(rhs), &self.0 * &rhs.0))
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        BigFloat(Float::with_val(self.binary_prec(rhs), &self.0 / &rhs.0))
    }
    fn neg_ref(&self) -> Self {
        BigFloat(Float::with_val(self.prec(), -&self.0))
    }
    fn abs_ref(&self) -> Self {
        BigFloat(Float::with_val(self.prec(), self.0.abs_ref()))
    }
    fn sign(&self) -> Ordering {
        self.0.cmp0().unwrap_or(Ordering::Equal)
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
}

/// A coefficient of either kind, as it appears in input documents.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Float(BigFloat),
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rational(_) => ScalarKind::Rational,
            Scalar::Float(_) => ScalarKind::Float,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(q) => q.to_f64(),
            Scalar::Float(x) => x.to_f64(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", q),
            Scalar::Float(x) => write!(f, "{}", x),
        }
    }
}

/// Parses an exact rational from `"p/q"`, an integer, or a terminating decimal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let t = s.trim();
    let bad = || PolyError::Parse(format!("not an exact rational: {:?}", s));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if t.contains('/') || t.contains(['e', 'E']) {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac_part.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{}{}", int_digits, frac_part);
        let numer = Integer::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
        let denom = Integer::from(Integer::u_pow_u(10, frac_part.len() as u32));
        let q = Rational::from((numer, denom));
        return Ok(if negative { -q } else { q });
    }
    let parsed = Rational::parse(t).map_err(|_| bad())?;
    Ok(Rational::from(parsed))
}

/// Renders a rational as `"p/q"` (or `"p"` when integral).
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}
