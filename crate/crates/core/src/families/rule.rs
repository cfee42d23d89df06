use std::cmp::Ordering;
use std::fmt;

use rug::Rational;

use super::FamilyError;
use crate::polycore::{format_rational, parse_rational};

/// A per-n parameter: `slope * n + intercept`, or an explicit table.
#[derive(Debug, Clone, PartialEq)]
pub enum Rule {
    Affine { slope: Rational, intercept: Rational },
    Table(Vec<Rational>),
}

impl Rule {
    pub fn constant(v: Rational) -> Self {
        Rule::Affine { slope: Rational::new(), intercept: v }
    }

    pub fn affine(slope: Rational, intercept: Rational) -> Self {
        Rule::Affine { slope, intercept }
    }

    pub fn at(&self, n: usize) -> Result<Rational, FamilyError> {
        match self {
            Rule::Affine { slope, intercept } => Ok(Rational::from(slope * n as u64) + intercept),
            Rule::Table(t) => t.get(n).cloned().ok_or_else(|| FamilyError::Undefined {
                n,
                reason: format!("parameter table has {} entries", t.len()),
            }),
        }
    }

    /// Parses affine expressions such as `"3"`, `"n+1"`, `"2n-1/2"`, `"-n/2+3"` or `"1/2*n"`.
    pub fn parse(s: &str) -> Result<Self, FamilyError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(FamilyError::InvalidParameter("empty rule".into()));
        }
        let bad = || FamilyError::InvalidParameter(format!("cannot parse rule '{}'", s));
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in compact.char_indices() {
            if (c == '+' || c == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut slope = Rational::new();
        let mut intercept = Rational::new();
        for term in terms {
            let (neg, body) = match term.as_bytes()[0] {
                b'-' => (true, &term[1..]),
                b'+' => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (value, is_n) = match body.find('n') {
                None => (parse_rational(body).map_err(|_| bad())?, false),
                Some(pos) => {
                    let before = body[..pos].trim_end_matches('*');
                    let after = &body[pos + 1..];
                    let mut coef = if before.is_empty() { Rational::from(1) } else { parse_rational(before).map_err(|_| bad())? };
                    if let Some(d) = after.strip_prefix('/') {
                        let d = parse_rational(d).map_err(|_| bad())?;
                        if d.cmp0() == Ordering::Equal {
                            return Err(bad());
                        }
                        coef /= d;
                    } else if !after.is_empty() {
                        return Err(bad());
                    }
                    (coef, true)
                }
            };
            let value = if neg { -value } else { value };
            if is_n {
                slope += value;
            } else {
                intercept += value;
            }
        }
        Ok(Rule::Affine { slope, intercept })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Affine { slope, intercept } => {
                if slope.cmp0() == Ordering::Equal {
                    return f.write_str(&format_rational(intercept));
                }
                if *slope == 1 {
                    f.write_str("n")?;
                } else if *slope == -1 {
                    f.write_str("-n")?;
                } else {
                    write!(f, "{}*n", format_rational(slope))?;
                }
                match intercept.cmp0() {
                    Ordering::Greater => write!(f, "+{}", format_rational(intercept)),
                    Ordering::Less => write!(f, "{}", format_rational(intercept)),
                    Ordering::Equal => Ok(()),
                }
            }
            Rule::Table(t) => {
                let items: Vec<String> = t.iter().map(format_rational).collect();
                write!(f, "[{}]", items.join(", "))
            }
        }
    }
}
