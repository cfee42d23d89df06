use std::cmp::Ordering;
use std::fmt;

use rug::Rational;

use super::classify::{ClosedForm, KClassification};
use super::surd::{ExtReal, QuadSurd};

/// Limit of `K` or `A / K` approaching a point from one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitKind {
    Zero,
    /// finite and nonzero
    Finite,
    Infinite,
}

impl LimitKind {
    fn from_power(sign: Ordering) -> Self {
        match sign {
            Ordering::Greater => LimitKind::Zero,
            Ordering::Equal => LimitKind::Finite,
            Ordering::Less => LimitKind::Infinite,
        }
    }

    fn from_growth(sign: Ordering) -> Self {
        LimitKind::from_power(sign.reverse())
    }

    fn inverse(self) -> Self {
        match self {
            LimitKind::Zero => LimitKind::Infinite,
            LimitKind::Finite => LimitKind::Finite,
            LimitKind::Infinite => LimitKind::Zero,
        }
    }
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitKind::Zero => "zero",
            LimitKind::Finite => "finite",
            LimitKind::Infinite => "infinite",
        })
    }
}

/// A root of `A` or an infinity, with one-sided limits. `None` marks the side
/// that does not exist at an infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPoint {
    pub point: ExtReal,
    /// `K` has a zero, pole or essential singularity here
    pub singular: bool,
    pub k_left: Option<LimitKind>,
    pub k_right: Option<LimitKind>,
    pub a_over_k_left: Option<LimitKind>,
    pub a_over_k_right: Option<LimitKind>,
}

impl CriticalPoint {
    fn sides(&self) -> impl Iterator<Item = (LimitKind, LimitKind)> {
        let left = self.k_left.zip(self.a_over_k_left);
        let right = self.k_right.zip(self.a_over_k_right);
        left.into_iter().chain(right)
    }

    pub fn k_vanishes(&self) -> bool {
        self.sides().any(|(k, _)| k == LimitKind::Zero)
    }

    pub fn a_over_k_vanishes(&self) -> bool {
        self.sides().any(|(_, q)| q == LimitKind::Zero)
    }
}

/// Vanishing pattern of a candidate `(alpha, beta)`, read from inside the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pattern {
    /// `K = 0` at both ends
    KZeroBoth,
    /// `K = 0` at `alpha`, `K != 0` and `A / K = 0` at `beta`
    KZeroLeft,
    /// `K = 0` at `beta`, `K != 0` and `A / K = 0` at `alpha`
    KZeroRight,
    /// `K != 0` and `A / K = 0` at both ends
    AOverKZeroBoth,
}

impl Pattern {
    fn rank(self) -> u8 {
        match self {
            Pattern::KZeroBoth => 0,
            Pattern::KZeroLeft | Pattern::KZeroRight => 1,
            Pattern::AOverKZeroBoth => 2,
        }
    }
}

/// Which function vanishes at a candidate endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Vanishing {
    K,
    AOverK,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub alpha: ExtReal,
    pub beta: ExtReal,
    pub pattern: Pattern,
}

impl Candidate {
    pub fn alpha_vanishing(&self) -> Vanishing {
        match self.pattern {
            Pattern::KZeroBoth | Pattern::KZeroLeft => Vanishing::K,
            _ => Vanishing::AOverK,
        }
    }

    pub fn beta_vanishing(&self) -> Vanishing {
        match self.pattern {
            Pattern::KZeroBoth | Pattern::KZeroRight => Vanishing::K,
            _ => Vanishing::AOverK,
        }
    }

    /// An end is closed when it is finite and `K` does not vanish there.
    pub fn alpha_closed(&self) -> bool {
        !self.alpha.is_infinite() && self.alpha_vanishing() == Vanishing::AOverK
    }

    pub fn beta_closed(&self) -> bool {
        !self.beta.is_infinite() && self.beta_vanishing() == Vanishing::AOverK
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.alpha_closed() { '[' } else { '(' },
            self.alpha,
            self.beta,
            if self.beta_closed() { ']' } else { ')' }
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySpec {
    /// roots of `A` and both infinities, ascending
    pub points: Vec<CriticalPoint>,
    pub zeros_of_k: Vec<ExtReal>,
    pub zeros_of_a_over_k: Vec<ExtReal>,
    /// maximal open intervals on which `K` is smooth and positive
    pub smooth_intervals: Vec<(ExtReal, ExtReal)>,
    pub candidates: Vec<Candidate>,
    /// preferred candidate: pattern order `KZeroBoth`, one-sided, `AOverKZeroBoth`, then leftmost
    pub primary: Option<Candidate>,
    pub extension: bool,
}

impl BoundarySpec {
    pub fn alpha(&self) -> Option<&ExtReal> {
        self.primary.as_ref().map(|c| &c.alpha)
    }

    pub fn beta(&self) -> Option<&ExtReal> {
        self.primary.as_ref().map(|c| &c.beta)
    }

    pub fn point(&self, x: &ExtReal) -> Option<&CriticalPoint> {
        self.points.iter().find(|p| p.point.cmp_exact(x) == Ordering::Equal)
    }
}

fn root_limits(form: &ClosedForm, root: &QuadSurd, exponent: &QuadSurd, multiplicity: usize) -> [LimitKind; 4] {
    let pole = form
        .pole
        .as_ref()
        .filter(|p| root.cmp_rational(&p.root) == Ordering::Equal)
        .map(|p| p.coefficient.cmp0());
    match pole {
        Some(c) if c != Ordering::Equal => {
            // exp(c / (x - root)): from the right the exponent has the sign of c
            let right = LimitKind::from_growth(c);
            let left = right.inverse();
            [left, right, left.inverse(), right.inverse()]
        }
        _ => {
            let k = LimitKind::from_power(exponent.signum());
            let m = QuadSurd::from_i64(multiplicity as i64);
            let q = LimitKind::from_power(m.sub(exponent).signum());
            [k, k, q, q]
        }
    }
}

fn infinity_limits(form: &ClosedForm, a_degree: usize, side: Ordering) -> (LimitKind, LimitKind) {
    let q2 = form.quadratic.cmp0();
    if q2 != Ordering::Equal {
        let k = LimitKind::from_growth(q2);
        return (k, k.inverse());
    }
    let q1 = match side {
        Ordering::Less => form.linear.cmp0().reverse(),
        _ => form.linear.cmp0(),
    };
    if q1 != Ordering::Equal {
        let k = LimitKind::from_growth(q1);
        return (k, k.inverse());
    }
    let e = form.power_at_infinity();
    let k = LimitKind::from_growth(e.signum());
    let q = LimitKind::from_growth(QuadSurd::from_i64(a_degree as i64).sub(&e).signum());
    (k, q)
}

/// Limits of `K` and `A / K` at every root of `A` and at `±inf`, with the
/// candidate endpoint pairs they admit.
pub fn boundary_zeros(k: &KClassification) -> BoundarySpec {
    let a_degree = k.a.degree().unwrap_or(0);
    let mut points = Vec::new();
    let (k_lo, q_lo) = infinity_limits(&k.form, a_degree, Ordering::Less);
    points.push(CriticalPoint {
        point: ExtReal::NegInf,
        singular: false,
        k_left: None,
        k_right: Some(k_lo),
        a_over_k_left: None,
        a_over_k_right: Some(q_lo),
    });
    let mut roots: Vec<_> = k.form.powers.iter().collect();
    roots.sort_by(|x, y| x.root.cmp_exact(&y.root));
    for p in roots {
        let [kl, kr, ql, qr] = root_limits(&k.form, &p.root, &p.exponent, p.multiplicity);
        let singular = kl != LimitKind::Finite || kr != LimitKind::Finite;
        points.push(CriticalPoint {
            point: ExtReal::Finite(p.root.clone()),
            singular,
            k_left: Some(kl),
            k_right: Some(kr),
            a_over_k_left: Some(ql),
            a_over_k_right: Some(qr),
        });
    }
    let (k_hi, q_hi) = infinity_limits(&k.form, a_degree, Ordering::Greater);
    points.push(CriticalPoint {
        point: ExtReal::PosInf,
        singular: false,
        k_left: Some(k_hi),
        k_right: None,
        a_over_k_left: Some(q_hi),
        a_over_k_right: None,
    });

    let zeros_of_k = points.iter().filter(|p| p.k_vanishes()).map(|p| p.point.clone()).collect();
    let zeros_of_a_over_k = points.iter().filter(|p| p.a_over_k_vanishes()).map(|p| p.point.clone()).collect();

    // smooth intervals are cut at the singular points; the infinities bound the outermost
    let cuts: Vec<usize> = (0..points.len())
        .filter(|&i| i == 0 || i == points.len() - 1 || points[i].singular)
        .collect();
    let mut smooth_intervals = Vec::new();
    let mut candidates = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        smooth_intervals.push((points[lo].point.clone(), points[hi].point.clone()));
        for i in lo..hi {
            for j in i + 1..=hi {
                let left = &points[i];
                let right = &points[j];
                let (Some(ka), Some(qa)) = (left.k_right, left.a_over_k_right) else { continue };
                let (Some(kb), Some(qb)) = (right.k_left, right.a_over_k_left) else { continue };
                let usable = |kk: LimitKind, qq: LimitKind| kk == LimitKind::Finite && qq == LimitKind::Zero;
                let pattern = match (ka == LimitKind::Zero, kb == LimitKind::Zero) {
                    (true, true) => Some(Pattern::KZeroBoth),
                    (true, false) if usable(kb, qb) => Some(Pattern::KZeroLeft),
                    (false, true) if usable(ka, qa) => Some(Pattern::KZeroRight),
                    (false, false) if usable(ka, qa) && usable(kb, qb) => Some(Pattern::AOverKZeroBoth),
                    _ => None,
                };
                if let Some(pattern) = pattern {
                    candidates.push(Candidate { alpha: left.point.clone(), beta: right.point.clone(), pattern });
                }
            }
        }
    }
    let primary = candidates
        .iter()
        .min_by(|x, y| {
            x.pattern
                .rank()
                .cmp(&y.pattern.rank())
                .then_with(|| x.alpha.cmp_exact(&y.alpha))
                .then_with(|| x.beta.cmp_exact(&y.beta))
        })
        .cloned();
    BoundarySpec {
        points,
        zeros_of_k,
        zeros_of_a_over_k,
        smooth_intervals,
        candidates,
        primary,
        extension: k.is_extension(),
    }
}

/// Sampling window for the unbounded smooth intervals.
pub fn sampling_window(k: &KClassification) -> f64 {
    let mut m: f64 = 0.0;
    for p in &k.form.powers {
        m = m.max(p.root.to_f64().abs());
    }
    if let Some(mu) = &k.mu {
        m = m.max(mu.to_f64().abs());
    }
    if let Some(irr) = &k.form.irreducible {
        m = m.max(irr.center.to_f64().abs() + irr.width_sq.to_f64().sqrt());
    }
    4.0 + 2.0 * m
}

/// `count` evenly spaced midpoints in each smooth interval; unbounded ends are
/// truncated to the sampling window.
pub fn smooth_sample_points(k: &KClassification, spec: &BoundarySpec, count: usize) -> Vec<f64> {
    let w = sampling_window(k);
    let mut out = Vec::new();
    for (lo, hi) in &spec.smooth_intervals {
        let (l, r) = match (lo, hi) {
            (ExtReal::NegInf, ExtReal::PosInf) => (-w, w),
            (ExtReal::NegInf, h) => (h.to_f64() - w, h.to_f64()),
            (l, ExtReal::PosInf) => (l.to_f64(), l.to_f64() + w),
            (l, h) => (l.to_f64(), h.to_f64()),
        };
        for i in 0..count {
            out.push(l + (r - l) * (i as f64 + 0.5) / count as f64);
        }
    }
    out
}

/// Exact rational sample points, for checks that must not land on a root by rounding.
pub fn rational_sample_points(k: &KClassification, spec: &BoundarySpec, count: usize) -> Vec<Rational> {
    let w = Rational::from_f64(sampling_window(k).ceil()).unwrap_or_else(|| Rational::from(4));
    let bracket = |x: &ExtReal| -> Rational {
        match x.finite() {
            Some(s) => match s.as_rational() {
                Some(q) => q.clone(),
                None => s.bracket(&Rational::from((1, 1u64 << 40))).0,
            },
            None => Rational::new(),
        }
    };
    let mut out = Vec::new();
    for (lo, hi) in &spec.smooth_intervals {
        let (l, r) = match (lo, hi) {
            (ExtReal::NegInf, ExtReal::PosInf) => (Rational::from(-&w), w.clone()),
            (ExtReal::NegInf, h) => {
                let h = bracket(h);
                (Rational::from(&h - &w), h)
            }
            (l, ExtReal::PosInf) => {
                let l = bracket(l);
                (l.clone(), l + &w)
            }
            (l, h) => (bracket(l), bracket(h)),
        };
        let span = Rational::from(&r - &l);
        for i in 0..count {
            let t = Rational::from((2 * i as u64 + 1, 2 * count as u64));
            out.push(&l + Rational::from(&span * &t) );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::classify::classify;
    use super::*;
    use crate::dde::CoefficientPair;

    fn spec(a: &[i64], b: &[i64]) -> BoundarySpec {
        boundary_zeros(&classify(&CoefficientPair::from_i64s(a, b).unwrap()).unwrap())
    }

    fn pts(xs: &[ExtReal]) -> Vec<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn euler_frobenius_is_pattern_a() {
        // K = (x^2 - 1)^2
        let s = spec(&[1, 0, -1], &[0, -4]);
        assert_eq!(pts(&s.zeros_of_k), ["-1", "1"]);
        let p = s.primary.unwrap();
        assert_eq!(p.pattern, Pattern::KZeroBoth);
        assert_eq!(p.to_string(), "(-1, 1)");
    }

    #[test]
    fn bell_boundary() {
        let s = spec(&[0, 1], &[0, 1]);
        assert_eq!(pts(&s.zeros_of_k), ["-inf"]);
        assert_eq!(pts(&s.zeros_of_a_over_k), ["0", "+inf"]);
        assert_eq!(s.candidates.len(), 1);
        let p = s.primary.unwrap();
        assert_eq!(p.pattern, Pattern::KZeroLeft);
        assert_eq!(p.to_string(), "(-inf, 0]");
        assert_eq!(p.beta_vanishing(), Vanishing::AOverK);
    }

    #[test]
    fn hermite_boundary() {
        let s = spec(&[-1], &[0, 2]);
        assert_eq!(pts(&s.zeros_of_k), ["-inf", "+inf"]);
        assert_eq!(s.primary.unwrap().to_string(), "(-inf, +inf)");
    }

    #[test]
    fn laguerre_boundary() {
        // A = x, B = 2 - x: K = x^2 e^{-x}
        let s = spec(&[0, 1], &[2, -1]);
        assert_eq!(pts(&s.zeros_of_k), ["0", "+inf"]);
        assert_eq!(s.primary.unwrap().to_string(), "(0, +inf)");
    }

    #[test]
    fn pole_limits_are_one_sided() {
        // A = x^2, B = 1: K = exp(-1/x), zero from the right, infinite from the left
        let s = spec(&[0, 0, 1], &[1]);
        let p = s.point(&ExtReal::rational(Rational::new())).unwrap();
        assert_eq!(p.k_left, Some(LimitKind::Infinite));
        assert_eq!(p.k_right, Some(LimitKind::Zero));
        assert_eq!(pts(&s.zeros_of_k), ["0"]);
        assert!(p.singular);
    }

    #[test]
    fn one_sided_pattern_at_vanishing_exponent() {
        // A = x^2 - x, B = 2x - 2: exponent 2 at 0 and 0 at 1
        let s = spec(&[0, -1, 1], &[-2, 2]);
        let c: Vec<String> = s.candidates.iter().map(|c| c.to_string()).collect();
        assert_eq!(c, ["(0, 1]"]);
    }

    #[test]
    fn zero_b_gives_pattern_d() {
        let s = spec(&[-9, 0, 1], &[]);
        assert!(s.extension);
        assert!(s.zeros_of_k.is_empty());
        let p = s.primary.unwrap();
        assert_eq!(p.pattern, Pattern::AOverKZeroBoth);
        assert_eq!(p.to_string(), "[-3, 3]");
    }

    #[test]
    fn three_zeros_counting_both_infinities() {
        // exponents 1/2 at 1 and -3/2 at -1, total -1: K vanishes at 1 and at both infinities
        let s = spec(&[-1, 0, 1], &[2, -1]);
        assert_eq!(pts(&s.zeros_of_k), ["-inf", "1", "+inf"]);
    }

    #[test]
    fn irreducible_has_no_finite_points() {
        // A = x^2 + 1, B = -2x: K = 1 / (x^2 + 1)
        let s = spec(&[1, 0, 1], &[0, -2]);
        assert_eq!(pts(&s.zeros_of_k), ["-inf", "+inf"]);
        assert_eq!(s.smooth_intervals.len(), 1);
        assert_eq!(s.primary.unwrap().pattern, Pattern::KZeroBoth);
    }

    #[test]
    fn samples_avoid_singular_points() {
        let k = classify(&CoefficientPair::from_i64s(&[-1, 0, 1], &[0, 3]).unwrap()).unwrap();
        let s = boundary_zeros(&k);
        let xs = smooth_sample_points(&k, &s, 50);
        assert_eq!(xs.len(), 150);
        assert!(xs.iter().all(|x| (x.abs() - 1.0).abs() > 1e-3));
        let qs = rational_sample_points(&k, &s, 50);
        assert_eq!(qs.len(), 150);
    }
}
