//! Input documents: a family with `n`, an explicit polynomial table, or a
//! coefficient-pair table.

use std::collections::BTreeMap;

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::dde::CoefficientPair;
use crate::families::FamilySpec;
use crate::polycore::{parse_rational, BigFloat, Poly, ScalarKind, DEFAULT_FLOAT_PRECISION, MIN_FLOAT_PRECISION};

/// A scalar as written in a document: `"p/q"`, a decimal string, or a JSON number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Float(f64),
    Text(String),
}

impl ScalarText {
    fn is_float_literal(&self) -> bool {
        match self {
            ScalarText::Float(_) => true,
            ScalarText::Text(s) => s.contains(['e', 'E']) || s.eq_ignore_ascii_case("nan") || s.contains("inf"),
            ScalarText::Int(_) => false,
        }
    }

    fn as_param(&self) -> String {
        match self {
            ScalarText::Int(i) => i.to_string(),
            ScalarText::Float(f) => f.to_string(),
            ScalarText::Text(s) => s.clone(),
        }
    }

    fn to_rational(&self, at: &str) -> Result<Rational, CliError> {
        match self {
            ScalarText::Int(i) => Ok(Rational::from(*i)),
            ScalarText::Float(f) => Err(CliError::Input(format!(
                "{}: float {} in a rational document (write it as a string or set \"scalar\": \"float\")",
                at, f
            ))),
            ScalarText::Text(s) => parse_rational(s).map_err(|e| CliError::Input(format!("{}: {}", at, e))),
        }
    }

    fn to_float(&self, prec: u32, at: &str) -> Result<BigFloat, CliError> {
        let f = match self {
            ScalarText::Int(i) => Float::with_val(prec, *i),
            ScalarText::Float(x) => Float::with_val(prec, *x),
            ScalarText::Text(s) => match parse_rational(s) {
                Ok(q) => Float::with_val(prec, &q),
                Err(_) => Float::parse(s.trim())
                    .map(|p| Float::with_val(prec, p))
                    .map_err(|e| CliError::Input(format!("{}: not a number {:?}: {}", at, s, e)))?,
            },
        };
        if !f.is_finite() {
            return Err(CliError::Input(format!("{}: value is not finite", at)));
        }
        Ok(BigFloat(f))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, ScalarText>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    #[serde(rename = "A", alias = "a")]
    pub a: Vec<ScalarText>,
    #[serde(rename = "B", alias = "b")]
    pub b: Vec<ScalarText>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyDoc>,
    #[serde(default, alias = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<Vec<ScalarText>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<PairDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar: Option<ScalarKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// free-form; ignored on input
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

/// A polynomial table in one scalar kind.
#[derive(Debug, Clone, PartialEq)]
pub enum Table {
    Rational(Vec<Poly<Rational>>),
    Float(Vec<Poly<BigFloat>>, u32),
}

#[derive(Debug, Clone)]
pub enum Input {
    Family { spec: FamilySpec, n: Option<usize> },
    Sequence(Table),
    Coefficients { pairs: Vec<CoefficientPair<Rational>>, n: Option<usize> },
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Family { .. } => "family",
            Input::Sequence(_) => "sequence",
            Input::Coefficients { .. } => "coefficients",
        }
    }
}

pub fn family_from(name: &str, params: &BTreeMap<String, String>) -> Result<FamilySpec, CliError> {
    let spec = FamilySpec::from_params(name, params).map_err(|e| CliError::Input(e.to_string()))?;
    spec.validate().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(spec)
}

impl InputDocument {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("{}: {}", origin, e)))
    }

    fn scalar_kind(&self) -> ScalarKind {
        if let Some(k) = self.scalar {
            return k;
        }
        let seq_float = self.sequence.iter().flatten().flatten().any(ScalarText::is_float_literal);
        let pair_float = self
            .coefficients
            .iter()
            .flatten()
            .flat_map(|p| p.a.iter().chain(p.b.iter()))
            .any(ScalarText::is_float_literal);
        if seq_float || pair_float {
            ScalarKind::Float
        } else {
            ScalarKind::Rational
        }
    }

    pub fn resolve(&self) -> Result<Input, CliError> {
        let present = [self.family.is_some(), self.sequence.is_some(), self.coefficients.is_some()];
        if present.iter().filter(|&&p| p).count() != 1 {
            return Err(CliError::Input(
                "document must have exactly one of \"family\", \"sequence\", \"coefficients\"".into(),
            ));
        }
        let kind = self.scalar_kind();
        if let Some(f) = &self.family {
            let params = f.params.iter().map(|(k, v)| (k.clone(), v.as_param())).collect();
            let spec = family_from(&f.name, &params).map_err(|e| e.at("family"))?;
            return Ok(Input::Family { spec, n: self.n });
        }
        if let Some(rows) = &self.sequence {
            return match kind {
                ScalarKind::Rational => {
                    let polys = rows
                        .iter()
                        .enumerate()
                        .map(|(i, row)| rational_poly(row, &format!("sequence[{}]", i)))
                        .collect::<Result<_, _>>()?;
                    Ok(Input::Sequence(Table::Rational(polys)))
                }
                ScalarKind::Float => {
                    let prec = self.precision.unwrap_or(DEFAULT_FLOAT_PRECISION).max(MIN_FLOAT_PRECISION);
                    let polys = rows
                        .iter()
                        .enumerate()
                        .map(|(i, row)| {
                            let at = format!("sequence[{}]", i);
                            row.iter()
                                .enumerate()
                                .map(|(j, c)| c.to_float(prec, &format!("{}[{}]", at, j)))
                                .collect::<Result<Vec<_>, _>>()
                                .map(Poly::new)
                        })
                        .collect::<Result<_, _>>()?;
                    Ok(Input::Sequence(Table::Float(polys, prec)))
                }
            };
        }
        let docs = self.coefficients.as_ref().expect("checked above");
        if kind == ScalarKind::Float {
            return Err(CliError::Input("coefficients: tables must be exact rationals".into()));
        }
        let pairs = docs
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let at = format!("coefficients[{}]", i);
                let a = rational_poly(&p.a, &format!("{}.A", at))?;
                let b = rational_poly(&p.b, &format!("{}.B", at))?;
                CoefficientPair::new(a, b).map_err(|e| CliError::Input(format!("{}: {}", at, e)))
            })
            .collect::<Result<_, _>>()?;
        Ok(Input::Coefficients { pairs, n: self.n })
    }
}

fn rational_poly(row: &[ScalarText], at: &str) -> Result<Poly<Rational>, CliError> {
    row.iter()
        .enumerate()
        .map(|(j, c)| c.to_rational(&format!("{}[{}]", at, j)))
        .collect::<Result<Vec<_>, _>>()
        .map(Poly::new)
}
