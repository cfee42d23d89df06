//! Exact real numbers `a + b sqrt(d)` with rational `a, b, d` and `d >= 0`,
//! enough to hold the roots of a rational quadratic and the exponents built from them.

use std::cmp::Ordering;
use std::fmt;

use rug::{Integer, Rational};

use crate::polycore::{format_rational, Poly};

#[derive(Clone, PartialEq, Eq)]
pub struct QuadSurd {
    a: Rational,
    b: Rational,
    /// radicand; zero whenever `b` is zero or `d` is a rational square
    d: Rational,
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let (n, d) = (q.numer(), q.denom());
    if n.cmp0() == Ordering::Less || !n.is_perfect_square() || !d.is_perfect_square() {
        return None;
    }
    Some(Rational::from((Integer::from(n.sqrt_ref()), Integer::from(d.sqrt_ref()))))
}

const SMALL_PRIMES: [u32; 25] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

/// `b sqrt(n / m) = (b / m) sqrt(n m)`, then small square factors move out of the root.
fn reduce_radicand(b: Rational, d: Rational) -> (Rational, Rational) {
    let (n, m) = d.into_numer_denom();
    let mut rad = n * &m;
    let mut coef = Rational::from((Integer::from(1), m));
    for p in SMALL_PRIMES {
        let sq = p * p;
        while rad.is_divisible_u(sq) {
            rad /= sq;
            coef *= p;
        }
    }
    (b * coef, Rational::from(rad))
}

impl QuadSurd {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        assert!(d.cmp0() != Ordering::Less, "negative radicand");
        if b.cmp0() == Ordering::Equal || d.cmp0() == Ordering::Equal {
            return QuadSurd { a, b: Rational::new(), d: Rational::new() };
        }
        if let Some(r) = rational_sqrt(&d) {
            return QuadSurd { a: a + b * r, b: Rational::new(), d: Rational::new() };
        }
        let (b, d) = reduce_radicand(b, d);
        QuadSurd { a, b, d }
    }

    pub fn rational(a: Rational) -> Self {
        QuadSurd { a, b: Rational::new(), d: Rational::new() }
    }

    pub fn from_i64(v: i64) -> Self {
        QuadSurd::rational(Rational::from(v))
    }

    /// `sqrt(d)` for rational `d >= 0`.
    pub fn sqrt(d: Rational) -> Self {
        QuadSurd::new(Rational::new(), Rational::from(1), d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_rational(&self) -> bool {
        self.b.cmp0() == Ordering::Equal
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.a.cmp0() == Ordering::Equal
    }

    /// Radicand shared by both operands; `other` is rewritten over it when the
    /// radicands differ by a rational square.
    fn align(&self, other: &Self) -> (Rational, Rational) {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => (other.d.clone(), other.b.clone()),
            (_, true) => (self.d.clone(), other.b.clone()),
            _ if self.d == other.d => (self.d.clone(), other.b.clone()),
            _ => {
                // sqrt(d2) = sqrt(d1) * r with r^2 = d2 / d1
                let ratio = Rational::from(&other.d / &self.d);
                let r = rational_sqrt(&ratio).unwrap_or_else(|| {
                    panic!("surds from different fields: sqrt({}) and sqrt({})", self.d, other.d)
                });
                (self.d.clone(), Rational::from(&other.b * &r))
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (d, ob) = self.align(other);
        QuadSurd::new(Rational::from(&self.a + &other.a), Rational::from(&self.b + &ob), d)
    }

    pub fn neg(&self) -> Self {
        QuadSurd { a: Rational::from(-&self.a), b: Rational::from(-&self.b), d: self.d.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (d, ob) = self.align(other);
        let a = Rational::from(&self.a * &other.a) + Rational::from(&self.b * &ob) * &d;
        let b = Rational::from(&self.a * &ob) + Rational::from(&self.b * &other.a);
        QuadSurd::new(a, b, d)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QuadSurd::new(Rational::from(&self.a * q), Rational::from(&self.b * q), self.d.clone())
    }

    /// `None` when dividing by zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (d, ob) = self.align(other);
        // multiply by the conjugate: (a - b sqrt d) / (a^2 - b^2 d)
        let norm = Rational::from(&other.a * &other.a) - Rational::from(&ob * &ob) * &d;
        let conj = QuadSurd::new(other.a.clone(), Rational::from(-&ob), d);
        Some(self.mul(&conj).scale(&(Rational::from(1) / norm)))
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp0();
        let sb = self.b.cmp0();
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        // opposite signs: compare a^2 with b^2 d
        let lhs = Rational::from(&self.a * &self.a);
        let rhs = Rational::from(&self.b * &self.b) * &self.d;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Exact comparison, also across different radicands.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        if self.is_rational() || other.is_rational() || self.d == other.d {
            return self.sub(other).signum();
        }
        // sign(P + Q) with P = (a1 - a2) + b1 sqrt d1 and Q = -b2 sqrt d2
        let p = QuadSurd::new(Rational::from(&self.a - &other.a), self.b.clone(), self.d.clone());
        let q_sign = other.b.cmp0().reverse();
        let p_sign = p.signum();
        if p_sign == Ordering::Equal {
            return q_sign;
        }
        if p_sign == q_sign {
            return p_sign;
        }
        let q_sq = QuadSurd::rational(Rational::from(&other.b * &other.b) * &other.d);
        match p.mul(&p).sub(&q_sq).signum() {
            Ordering::Greater => p_sign,
            Ordering::Less => q_sign,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        self.sub(&QuadSurd::rational(q.clone())).signum()
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * self.d.to_f64().sqrt()
    }

    /// Exact value of a rational polynomial at this point.
    pub fn eval_poly(&self, p: &Poly<Rational>) -> Self {
        let mut acc = QuadSurd::rational(Rational::new());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&QuadSurd::rational(c.clone()));
        }
        acc
    }

    /// Rational interval `[lo, hi]` of width at most `width` containing the value.
    pub fn bracket(&self, width: &Rational) -> (Rational, Rational) {
        if self.is_rational() {
            return (self.a.clone(), self.a.clone());
        }
        let target = Rational::from(&self.b * &self.b) * &self.d;
        // bisect sqrt(target) on [0, target + 1]
        let (mut lo, mut hi) = (Rational::new(), target.clone() + 1u32);
        let w = width.clone() / 2u32;
        while Rational::from(&hi - &lo) > w {
            let mid = Rational::from(&lo + &hi) / 2u32;
            if Rational::from(&mid * &mid) <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if self.b.cmp0() == Ordering::Greater {
            (Rational::from(&self.a + &lo), Rational::from(&self.a + &hi))
        } else {
            (Rational::from(&self.a - &hi), Rational::from(&self.a - &lo))
        }
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&format_rational(&self.a));
        }
        let b = format_rational(&Rational::from(self.b.abs_ref()));
        let coef = if b == "1" { String::new() } else { format!("{}*", b) };
        let neg = self.b.cmp0() == Ordering::Less;
        if self.a.cmp0() == Ordering::Equal {
            write!(f, "{}{}sqrt({})", if neg { "-" } else { "" }, coef, format_rational(&self.d))
        } else {
            write!(
                f,
                "{} {} {}sqrt({})",
                format_rational(&self.a),
                if neg { '-' } else { '+' },
                coef,
                format_rational(&self.d)
            )
        }
    }
}

impl fmt::Debug for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadSurd({})", self)
    }
}

/// A point of the extended real line with an exact finite part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtReal {
    NegInf,
    Finite(QuadSurd),
    PosInf,
}

impl ExtReal {
    pub fn rational(q: Rational) -> Self {
        ExtReal::Finite(QuadSurd::rational(q))
    }

    pub fn finite(&self) -> Option<&QuadSurd> {
        match self {
            ExtReal::Finite(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        !matches!(self, ExtReal::Finite(_))
    }

    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        use ExtReal::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp_exact(b),
        }
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        match self {
            ExtReal::NegInf => Ordering::Less,
            ExtReal::PosInf => Ordering::Greater,
            ExtReal::Finite(s) => s.cmp_rational(q),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::PosInf => f64::INFINITY,
            ExtReal::Finite(s) => s.to_f64(),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::PosInf => f.write_str("+inf"),
            ExtReal::Finite(s) => write!(f, "{}", s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn squares_fold_into_rationals() {
        let s = QuadSurd::sqrt(q(9, 4));
        assert_eq!(s.as_rational(), Some(&q(3, 2)));
        assert!(!QuadSurd::sqrt(q(2, 1)).is_rational());
    }

    #[test]
    fn field_arithmetic() {
        let r2 = QuadSurd::sqrt(q(2, 1));
        assert_eq!(r2.mul(&r2), QuadSurd::from_i64(2));
        let x = QuadSurd::new(q(1, 1), q(1, 1), q(2, 1));
        let inv = QuadSurd::from_i64(1).div(&x).unwrap();
        assert_eq!(inv, QuadSurd::new(q(-1, 1), q(1, 1), q(2, 1)));
        assert!(x.div(&QuadSurd::from_i64(0)).is_none());
    }

    #[test]
    fn signs_and_cross_field_order() {
        // 1 - sqrt 2 < 0 < 3/2 - sqrt 2
        assert_eq!(QuadSurd::new(q(1, 1), q(-1, 1), q(2, 1)).signum(), Ordering::Less);
        assert_eq!(QuadSurd::new(q(3, 2), q(-1, 1), q(2, 1)).signum(), Ordering::Greater);
        let r2 = QuadSurd::sqrt(q(2, 1));
        let r3 = QuadSurd::sqrt(q(3, 1));
        assert_eq!(r2.cmp_exact(&r3), Ordering::Less);
        // 1 + sqrt 2 vs sqrt 5: 2.414 > 2.236
        let a = QuadSurd::new(q(1, 1), q(1, 1), q(2, 1));
        let b = QuadSurd::sqrt(q(5, 1));
        assert_eq!(a.cmp_exact(&b), Ordering::Greater);
        assert_eq!(b.cmp_exact(&a), Ordering::Less);
        // sqrt 8 = 2 sqrt 2 across radicands
        let c = QuadSurd::sqrt(q(8, 1));
        let d = QuadSurd::new(q(0, 1), q(2, 1), q(2, 1));
        assert_eq!(c.cmp_exact(&d), Ordering::Equal);
    }

    #[test]
    fn polynomial_evaluation_is_exact() {
        let root = QuadSurd::new(q(1, 2), q(1, 2), q(5, 1));
        let golden = Poly::from_i64s(&[-1, -1, 1]);
        assert!(root.eval_poly(&golden).is_zero());
    }

    #[test]
    fn brackets_contain_value() {
        let s = QuadSurd::new(q(1, 3), q(-2, 1), q(7, 1));
        let (lo, hi) = s.bracket(&q(1, 1_000_000));
        assert_eq!(s.cmp_rational(&lo), Ordering::Greater);
        assert_eq!(s.cmp_rational(&hi), Ordering::Less);
        assert!(Rational::from(&hi - &lo) <= q(1, 1_000_000));
    }

    #[test]
    fn extended_order() {
        let one = ExtReal::rational(q(1, 1));
        assert_eq!(ExtReal::NegInf.cmp_exact(&one), Ordering::Less);
        assert_eq!(ExtReal::PosInf.cmp_exact(&one), Ordering::Greater);
        assert_eq!(one.to_string(), "1");
        assert_eq!(ExtReal::Finite(QuadSurd::new(q(1, 1), q(-1, 2), q(3, 1))).to_string(), "1 - 1/2*sqrt(3)");
    }
}
