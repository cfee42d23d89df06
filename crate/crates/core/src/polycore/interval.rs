use std::cmp::Ordering;
use std::fmt;

use super::scalar::Coeff;
use super::PolyError;

/// A point of the extended real line. Infinities are tags, never large numbers.
#[derive(Debug, Clone, PartialEq)]
pub enum Endpoint<T> {
    NegInf,
    Finite(T),
    PosInf,
}

impl<T: Coeff> Endpoint<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Endpoint::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        !matches!(self, Endpoint::Finite(_))
    }

    pub fn cmp_to(&self, other: &Self) -> Ordering {
        use Endpoint::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.sub_ref(b).sign(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Endpoint::NegInf => f64::NEG_INFINITY,
            Endpoint::PosInf => f64::INFINITY,
            Endpoint::Finite(x) => x.to_f64(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Endpoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::PosInf => f.write_str("+inf"),
            Endpoint::Finite(x) => write!(f, "{}", x),
        }
    }
}

/// An interval of the extended real line with per-end openness.
/// Infinite ends are always open.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval<T> {
    pub lo: Endpoint<T>,
    pub hi: Endpoint<T>,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl<T: Coeff> Interval<T> {
    pub fn new(lo: Endpoint<T>, hi: Endpoint<T>, lo_open: bool, hi_open: bool) -> Result<Self, PolyError> {
        if lo.cmp_to(&hi) == Ordering::Greater || matches!(lo, Endpoint::PosInf) || matches!(hi, Endpoint::NegInf) {
            return Err(PolyError::InvalidInterval(format!("{} > {}", lo, hi)));
        }
        let lo_open = lo_open || lo.is_infinite();
        let hi_open = hi_open || hi.is_infinite();
        Ok(Interval { lo, hi, lo_open, hi_open })
    }

    pub fn open(lo: T, hi: T) -> Result<Self, PolyError> {
        Interval::new(Endpoint::Finite(lo), Endpoint::Finite(hi), true, true)
    }

    pub fn closed(lo: T, hi: T) -> Result<Self, PolyError> {
        Interval::new(Endpoint::Finite(lo), Endpoint::Finite(hi), false, false)
    }

    pub fn real_line() -> Self {
        Interval {
            lo: Endpoint::NegInf,
            hi: Endpoint::PosInf,
            lo_open: true,
            hi_open: true,
        }
    }

    pub fn contains(&self, x: &T) -> bool {
        let p = Endpoint::Finite(x.clone());
        let lo_ok = match self.lo.cmp_to(&p) {
            Ordering::Less => true,
            Ordering::Equal => !self.lo_open,
            Ordering::Greater => false,
        };
        let hi_ok = match p.cmp_to(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => !self.hi_open,
            Ordering::Greater => false,
        };
        lo_ok && hi_ok
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    #[test]
    fn infinite_ends_are_open() {
        let iv: Interval<Rational> = Interval::new(Endpoint::NegInf, Endpoint::Finite(Rational::new()), false, false).unwrap();
        assert!(iv.lo_open);
        assert!(!iv.hi_open);
        assert!(iv.contains(&Rational::new()));
        assert!(iv.contains(&Rational::from(-1000)));
        assert!(!iv.contains(&Rational::from((1, 1000))));
        assert_eq!(iv.to_string(), "(-inf, 0]");
    }

    #[test]
    fn reversed_interval_rejected() {
        assert!(Interval::open(Rational::from(2), Rational::from(1)).is_err());
    }
}
