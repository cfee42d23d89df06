//! Built-in coefficient rules, independent oracles and special functions.

mod freud;
mod oracles;
mod quadrature;
mod rule;
mod special;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;

use crate::dde::{CoefficientPair, DdeError};
use crate::polycore::{format_rational, parse_rational, Poly, DEFAULT_FLOAT_PRECISION};

pub use freud::{
    freud_demo, freud_recurrence_coeffs, freud_sequence, FreudData, FreudDemo, FreudSequence, P5Check,
    FREUD_MAX_N, FREUD_MIN_PRECISION,
};
pub use oracles::{oracle_poly, stirling2};
pub use quadrature::integrate;
pub use rule::Rule;
pub use special::{bessel_k, gamma};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("family undefined at n = {n}: {reason}")]
    Undefined { n: usize, reason: String },
    #[error("{0}")]
    NotPolynomial(String),
    #[error("numeric abort: {0}")]
    Numeric(String),
    #[error("no oracle for family '{0}'")]
    NoOracle(String),
    #[error(transparent)]
    Dde(#[from] DdeError),
}

/// A named family with bound parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Jacobi { alpha: Rational, beta: Rational },
    Laguerre { alpha: Rational },
    Hermite,
    Bell,
    EulerFrobenius { kappa: Rule, r: Rule },
    HermiteLike { kappa: Rule },
    Vertgeim { a: Rule, b: Rule, alpha: Rational },
    Hyp2f1 { b: Rational, c: Rational },
    Freud { t: Rational, precision: u32 },
}

fn q(v: i64) -> Rational {
    Rational::from(v)
}

fn positive(name: &str, v: &Rational) -> Result<(), FamilyError> {
    if v.cmp0() == Ordering::Greater {
        Ok(())
    } else {
        Err(FamilyError::InvalidParameter(format!("{} must be positive, got {}", name, format_rational(v))))
    }
}

impl FamilySpec {
    pub const NAMES: [&'static str; 9] = [
        "jacobi",
        "laguerre",
        "hermite",
        "bell",
        "euler_frobenius",
        "hermite_like",
        "vertgeim",
        "hyp2f1",
        "freud",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Jacobi { .. } => "jacobi",
            FamilySpec::Laguerre { .. } => "laguerre",
            FamilySpec::Hermite => "hermite",
            FamilySpec::Bell => "bell",
            FamilySpec::EulerFrobenius { .. } => "euler_frobenius",
            FamilySpec::HermiteLike { .. } => "hermite_like",
            FamilySpec::Vertgeim { .. } => "vertgeim",
            FamilySpec::Hyp2f1 { .. } => "hyp2f1",
            FamilySpec::Freud { .. } => "freud",
        }
    }

    /// Builds a family from its name and `key -> value` strings. Missing
    /// parameters take the defaults listed in the README.
    pub fn from_params(name: &str, params: &BTreeMap<String, String>) -> Result<Self, FamilyError> {
        let known: &[&str] = match name {
            "jacobi" => &["alpha", "beta"],
            "laguerre" => &["alpha"],
            "hermite" | "bell" => &[],
            "euler_frobenius" => &["kappa", "r"],
            "hermite_like" => &["kappa"],
            "vertgeim" => &["a", "b", "alpha"],
            "hyp2f1" => &["b", "c"],
            "freud" => &["t", "precision"],
            other => return Err(FamilyError::UnknownFamily(other.to_string())),
        };
        if let Some(k) = params.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(FamilyError::InvalidParameter(format!("family '{}' has no parameter '{}'", name, k)));
        }
        let num = |key: &str, default: &str| -> Result<Rational, FamilyError> {
            let s = params.get(key).map(String::as_str).unwrap_or(default);
            parse_rational(s).map_err(|e| FamilyError::InvalidParameter(format!("{}: {}", key, e)))
        };
        let rule = |key: &str, default: &str| -> Result<Rule, FamilyError> {
            Rule::parse(params.get(key).map(String::as_str).unwrap_or(default))
                .map_err(|e| FamilyError::InvalidParameter(format!("{}: {}", key, e)))
        };
        let spec = match name {
            "jacobi" => FamilySpec::Jacobi { alpha: num("alpha", "0")?, beta: num("beta", "0")? },
            "laguerre" => FamilySpec::Laguerre { alpha: num("alpha", "0")? },
            "hermite" => FamilySpec::Hermite,
            "bell" => FamilySpec::Bell,
            "euler_frobenius" => FamilySpec::EulerFrobenius { kappa: rule("kappa", "1")?, r: rule("r", "n+1")? },
            "hermite_like" => FamilySpec::HermiteLike { kappa: rule("kappa", "1")? },
            "vertgeim" => FamilySpec::Vertgeim { a: rule("a", "1")?, b: rule("b", "1")?, alpha: num("alpha", "1")? },
            "hyp2f1" => FamilySpec::Hyp2f1 { b: num("b", "20")?, c: num("c", "1")? },
            _ => {
                let precision = match params.get("precision") {
                    Some(p) => p
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| FamilyError::InvalidParameter(format!("precision: '{}' is not an integer", p)))?,
                    None => DEFAULT_FLOAT_PRECISION,
                };
                FamilySpec::Freud { t: num("t", "0")?, precision }
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Parameters as `key -> value` strings, the inverse of [`FamilySpec::from_params`].
    pub fn params(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        match self {
            FamilySpec::Jacobi { alpha, beta } => {
                put("alpha", format_rational(alpha));
                put("beta", format_rational(beta));
            }
            FamilySpec::Laguerre { alpha } => put("alpha", format_rational(alpha)),
            FamilySpec::Hermite | FamilySpec::Bell => {}
            FamilySpec::EulerFrobenius { kappa, r } => {
                put("kappa", kappa.to_string());
                put("r", r.to_string());
            }
            FamilySpec::HermiteLike { kappa } => put("kappa", kappa.to_string()),
            FamilySpec::Vertgeim { a, b, alpha } => {
                put("a", a.to_string());
                put("b", b.to_string());
                put("alpha", format_rational(alpha));
            }
            FamilySpec::Hyp2f1 { b, c } => {
                put("b", format_rational(b));
                put("c", format_rational(c));
            }
            FamilySpec::Freud { t, precision } => {
                put("t", format_rational(t));
                put("precision", precision.to_string());
            }
        }
        m
    }

    /// Checks parameter-level domains; per-n constraints are checked by [`FamilySpec::pair`].
    pub fn validate(&self) -> Result<(), FamilyError> {
        match self {
            FamilySpec::Jacobi { alpha, beta } => {
                if *alpha <= -1 || *beta <= -1 {
                    return Err(FamilyError::InvalidParameter(format!(
                        "jacobi needs alpha, beta > -1, got {}, {}",
                        format_rational(alpha),
                        format_rational(beta)
                    )));
                }
            }
            FamilySpec::Laguerre { alpha } => {
                if *alpha <= -1 {
                    return Err(FamilyError::InvalidParameter(format!(
                        "laguerre needs alpha > -1, got {}",
                        format_rational(alpha)
                    )));
                }
            }
            FamilySpec::Vertgeim { alpha, .. } => positive("alpha", alpha)?,
            FamilySpec::Freud { t, precision } => {
                if *precision < FREUD_MIN_PRECISION {
                    return Err(FamilyError::InvalidParameter(format!(
                        "freud precision must be at least {} bits, got {}",
                        FREUD_MIN_PRECISION, precision
                    )));
                }
                if t.to_f64().abs() > 1e3 {
                    return Err(FamilyError::InvalidParameter(format!("freud |t| too large: {}", format_rational(t))));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Whether the coefficient pairs are exact rational polynomials.
    pub fn is_rational(&self) -> bool {
        !matches!(self, FamilySpec::Freud { .. })
    }

    pub fn is_classical(&self) -> bool {
        matches!(self, FamilySpec::Jacobi { .. } | FamilySpec::Laguerre { .. } | FamilySpec::Hermite)
    }

    pub fn pair(&self, n: usize) -> Result<CoefficientPair<Rational>, FamilyError> {
        if self.is_classical() {
            classical_coeffs(self, n)
        } else {
            model_coeffs(self, n)
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        let params = self.params();
        if !params.is_empty() {
            let inner: Vec<String> = params.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
            write!(f, "({})", inner.join(", "))?;
        }
        Ok(())
    }
}

fn pair(a: Poly<Rational>, b: Poly<Rational>) -> Result<CoefficientPair<Rational>, FamilyError> {
    Ok(CoefficientPair::new(a, b)?)
}

/// Coefficient pairs of the Jacobi, Laguerre and Hermite recurrences.
pub fn classical_coeffs(spec: &FamilySpec, n: usize) -> Result<CoefficientPair<Rational>, FamilyError> {
    let m = q(n as i64 + 1);
    match spec {
        FamilySpec::Jacobi { alpha, beta } => {
            let s = Rational::from(alpha + beta);
            let denom = Rational::from(&m + &s);
            if denom.cmp0() == Ordering::Equal {
                return Err(FamilyError::Undefined { n, reason: "n + 1 + alpha + beta = 0".into() });
            }
            // (2n+2+alpha+beta)
            let lead = Rational::from(&m * 2u32) + &s;
            let two_m = Rational::from(&m * 2u32);
            let ca = Rational::from(&lead / &two_m) / &denom;
            let a = Poly::new(vec![-ca.clone(), q(0), ca]);
            let b = Poly::new(vec![Rational::from(alpha - beta) / &two_m, lead / two_m]);
            pair(a, b)
        }
        FamilySpec::Laguerre { alpha } => {
            let a = Poly::new(vec![q(0), Rational::from(1) / &m]);
            let b = Poly::new(vec![Rational::from(alpha + &m) / &m, Rational::from(-1) / &m]);
            pair(a, b)
        }
        FamilySpec::Hermite => pair(Poly::from_i64s(&[-1]), Poly::from_i64s(&[0, 2])),
        other => Err(FamilyError::InvalidParameter(format!("'{}' is not a classical family", other.name()))),
    }
}

/// Coefficient pairs of the non-orthogonal model families.
pub fn model_coeffs(spec: &FamilySpec, n: usize) -> Result<CoefficientPair<Rational>, FamilyError> {
    let undefined = |e: FamilyError| match e {
        FamilyError::InvalidParameter(reason) => FamilyError::Undefined { n, reason },
        other => other,
    };
    match spec {
        FamilySpec::Bell => pair(Poly::from_i64s(&[0, 1]), Poly::from_i64s(&[0, 1])),
        FamilySpec::EulerFrobenius { kappa, r } => {
            let k = kappa.at(n)?;
            let rn = r.at(n)?;
            if k.cmp0() == Ordering::Equal {
                return Err(FamilyError::Undefined { n, reason: "kappa_n must be nonzero".into() });
            }
            positive("r_n", &rn).map_err(undefined)?;
            let b1 = Rational::from(&k * &rn) * -2i32;
            pair(Poly::new(vec![k.clone(), q(0), -k]), Poly::new(vec![q(0), b1]))
        }
        FamilySpec::HermiteLike { kappa } => {
            let k = kappa.at(n)?;
            if k.cmp0() == Ordering::Equal {
                return Err(FamilyError::Undefined { n, reason: "kappa_n must be nonzero".into() });
            }
            let b1 = Rational::from(&k * -2i32);
            pair(Poly::new(vec![k]), Poly::new(vec![q(0), b1]))
        }
        FamilySpec::Vertgeim { a, b, alpha } => {
            let an = a.at(n)?;
            let bn = b.at(n)?;
            positive("a_n", &an).map_err(undefined)?;
            positive("b_n", &bn).map_err(undefined)?;
            let b1 = Rational::from(alpha * &an);
            pair(Poly::new(vec![-bn, q(0), an]), Poly::new(vec![q(0), b1]))
        }
        FamilySpec::Hyp2f1 { b, c } => {
            let b0 = Rational::from(c + n as i64);
            pair(Poly::from_i64s(&[0, 1, -1]), Poly::new(vec![b0, Rational::from(-b)]))
        }
        FamilySpec::Freud { .. } => Err(FamilyError::NotPolynomial(
            "freud coefficient pairs are rational functions of x, not polynomials".into(),
        )),
        other => classical_coeffs(other, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn params(kv: &[(&str, &str)]) -> BTreeMap<String, String> {
        kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn hermite_pair_is_constant() {
        for n in [0, 3, 17] {
            let c = FamilySpec::Hermite.pair(n).unwrap();
            assert_eq!(c.a(), &Poly::from_i64s(&[-1]));
            assert_eq!(c.b(), &Poly::from_i64s(&[0, 2]));
        }
    }

    #[test]
    fn laguerre_and_jacobi_at_zero() {
        let c = FamilySpec::Laguerre { alpha: r("0") }.pair(0).unwrap();
        assert_eq!(c.a(), &Poly::from_i64s(&[0, 1]));
        assert_eq!(c.b(), &Poly::from_i64s(&[1, -1]));
        let c = FamilySpec::Jacobi { alpha: r("0"), beta: r("0") }.pair(0).unwrap();
        assert_eq!(c.a(), &Poly::from_i64s(&[-1, 0, 1]));
        assert_eq!(c.b(), &Poly::from_i64s(&[0, 1]));
    }

    #[test]
    fn model_pairs() {
        let bell = FamilySpec::Bell.pair(5).unwrap();
        assert_eq!(bell.a(), bell.b());
        let ef = FamilySpec::EulerFrobenius { kappa: Rule::constant(r("1")), r: Rule::constant(r("1")) };
        let c = ef.pair(0).unwrap();
        assert_eq!(c.a(), &Poly::from_i64s(&[1, 0, -1]));
        assert_eq!(c.b(), &Poly::from_i64s(&[0, -2]));
        let h = FamilySpec::Hyp2f1 { b: r("20"), c: r("1") }.pair(3).unwrap();
        assert_eq!(h.a(), &Poly::from_i64s(&[0, 1, -1]));
        assert_eq!(h.b(), &Poly::from_i64s(&[4, -20]));
    }

    #[test]
    fn sign_constraints_are_enforced() {
        let ef = FamilySpec::EulerFrobenius { kappa: Rule::constant(r("1")), r: Rule::parse("n-2").unwrap() };
        assert!(matches!(ef.pair(1), Err(FamilyError::Undefined { n: 1, .. })));
        assert!(ef.pair(3).is_ok());
        let hl = FamilySpec::HermiteLike { kappa: Rule::parse("n-1").unwrap() };
        assert!(hl.pair(1).is_err());
        assert!(FamilySpec::from_params("jacobi", &params(&[("alpha", "-1")])).is_err());
        assert!(FamilySpec::from_params("vertgeim", &params(&[("alpha", "0")])).is_err());
        assert!(matches!(FamilySpec::Freud { t: r("0"), precision: 256 }.pair(0), Err(FamilyError::NotPolynomial(_))));
    }

    #[test]
    fn params_round_trip() {
        let spec = FamilySpec::from_params("euler_frobenius", &params(&[("kappa", "2"), ("r", "2n+1/2")])).unwrap();
        assert_eq!(FamilySpec::from_params(spec.name(), &spec.params()).unwrap(), spec);
        assert!(matches!(FamilySpec::from_params("chebyshev", &params(&[])), Err(FamilyError::UnknownFamily(_))));
        assert!(FamilySpec::from_params("bell", &params(&[("x", "1")])).is_err());
        assert_eq!(FamilySpec::Hyp2f1 { b: r("20"), c: r("1") }.to_string(), "hyp2f1(b=20, c=1)");
    }
}
