use std::cmp::Ordering;
use std::fmt;

use rug::Rational;

use super::boundary::{BoundarySpec, Candidate, LimitKind, Pattern};
use super::surd::ExtReal;
use super::IfError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremCase {
    A,
    B,
    BMirror,
    C,
    CMirror,
    D,
    None,
}

impl TheoremCase {
    pub const ORDER: [TheoremCase; 6] =
        [TheoremCase::A, TheoremCase::B, TheoremCase::BMirror, TheoremCase::C, TheoremCase::CMirror, TheoremCase::D];

    fn pattern(self) -> Option<Pattern> {
        match self {
            TheoremCase::A => Some(Pattern::KZeroBoth),
            TheoremCase::B | TheoremCase::C => Some(Pattern::KZeroLeft),
            TheoremCase::BMirror | TheoremCase::CMirror => Some(Pattern::KZeroRight),
            TheoremCase::D => Some(Pattern::AOverKZeroBoth),
            TheoremCase::None => None,
        }
    }

    /// `(left, right)`: whether the endpoint must move strictly outward from `n` to `n + 1`.
    fn strict_growth(self) -> (bool, bool) {
        match self {
            TheoremCase::B => (false, true),
            TheoremCase::BMirror => (true, false),
            TheoremCase::D => (true, true),
            _ => (false, false),
        }
    }

    /// Whether `gamma` may sit on `(alpha, beta)` ends: `(at alpha, at beta)`.
    fn gamma_closed(self) -> (bool, bool) {
        match self {
            TheoremCase::C => (false, true),
            TheoremCase::CMirror => (true, false),
            _ => (false, false),
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            TheoremCase::A => "a",
            TheoremCase::B => "b",
            TheoremCase::BMirror => "b-mirror",
            TheoremCase::C => "c",
            TheoremCase::CMirror => "c-mirror",
            TheoremCase::D => "d",
            TheoremCase::None => "none",
        }
    }
}

impl fmt::Display for TheoremCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisItem {
    /// the vanishing pattern of `K` and `A / K` at the endpoints
    EndpointPattern,
    /// `alpha_{n+1} <= alpha_n < beta_n <= beta_{n+1}`, strict where the case asks
    Nesting,
    /// the zero of `P_1` lies between `alpha_1` and `beta_1`
    Gamma11Location,
    /// `K` continuous on the closed interval, limits at infinite ends
    Continuity,
    /// classification inside the proven taxonomy
    Extension,
}

impl fmt::Display for HypothesisItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HypothesisItem::EndpointPattern => "endpoint-pattern",
            HypothesisItem::Nesting => "nesting",
            HypothesisItem::Gamma11Location => "gamma11-location",
            HypothesisItem::Continuity => "continuity",
            HypothesisItem::Extension => "extension",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisCheck {
    pub n: usize,
    pub item: HypothesisItem,
    pub passed: bool,
    pub detail: String,
}

/// Predicted behaviour of the zeros for one case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conclusion {
    /// zeros of `P_n` and `P_{n+1}` interlace
    pub interlace: bool,
    /// zeros of `P_n` real and simple
    pub real_simple: bool,
    /// zeros of `P_n` in the endpoint interval
    pub contains_current: bool,
    /// zeros of `P_{n+1}` in the endpoint interval of `n`
    pub contains_next: bool,
}

impl Conclusion {
    pub fn for_case(case: TheoremCase) -> Option<Self> {
        let c = match case {
            TheoremCase::A => Conclusion { interlace: true, real_simple: true, contains_current: true, contains_next: true },
            TheoremCase::B | TheoremCase::BMirror => {
                Conclusion { interlace: true, real_simple: true, contains_current: true, contains_next: false }
            }
            TheoremCase::C | TheoremCase::CMirror => {
                Conclusion { interlace: false, real_simple: true, contains_current: true, contains_next: false }
            }
            TheoremCase::D => Conclusion { interlace: true, real_simple: true, contains_current: false, contains_next: false },
            TheoremCase::None => return None,
        };
        Some(c)
    }
}

/// Endpoints chosen at one `n`, with the openness of each end in the conclusion.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointChoice {
    pub n: usize,
    pub alpha: ExtReal,
    pub beta: ExtReal,
    pub alpha_closed: bool,
    pub beta_closed: bool,
}

impl EndpointChoice {
    fn from_candidate(n: usize, c: &Candidate, case: TheoremCase) -> Self {
        // only case (c) closes an end in its conclusion
        let (ca, cb) = case.gamma_closed();
        EndpointChoice { n, alpha: c.alpha.clone(), beta: c.beta.clone(), alpha_closed: ca, beta_closed: cb }
    }
}

impl fmt::Display for EndpointChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.alpha_closed { '[' } else { '(' },
            self.alpha,
            self.beta,
            if self.beta_closed { ']' } else { ')' }
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCaseDecision {
    pub case: TheoremCase,
    /// `alpha_n, beta_n` for `n = 1..`; for `None`, those of the attempt that got furthest
    pub endpoints: Vec<EndpointChoice>,
    pub checklist: Vec<HypothesisCheck>,
    pub conclusion: Option<Conclusion>,
    /// for `None`: the case that got furthest and the first failing `n` of every case
    pub diagnosis: Vec<String>,
    /// first `n` at which the furthest attempt failed
    pub failed_at: Option<usize>,
}

impl TheoremCaseDecision {
    pub fn failures(&self) -> impl Iterator<Item = &HypothesisCheck> {
        self.checklist.iter().filter(|c| !c.passed)
    }
}

struct Attempt {
    case: TheoremCase,
    endpoints: Vec<EndpointChoice>,
    checklist: Vec<HypothesisCheck>,
    failed_at: Option<usize>,
}

fn pattern_detail(spec: &BoundarySpec) -> String {
    let show = |p: &[ExtReal]| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    let cands = spec.candidates.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
    format!(
        "zeros of K {{{}}}, zeros of A/K {{{}}}, candidates [{}]",
        show(&spec.zeros_of_k),
        show(&spec.zeros_of_a_over_k),
        cands
    )
}

fn continuity(spec: &BoundarySpec, c: &Candidate) -> Result<(), String> {
    for (lo, hi) in &spec.smooth_intervals {
        if lo.cmp_exact(&c.alpha) != Ordering::Greater && c.beta.cmp_exact(hi) != Ordering::Greater {
            let ends_finite = [(&c.alpha, true), (&c.beta, false)].into_iter().all(|(x, from_right)| {
                spec.point(x).is_none_or(|p| {
                    let k = if from_right { p.k_right } else { p.k_left };
                    k != Some(LimitKind::Infinite)
                })
            });
            return if ends_finite { Ok(()) } else { Err(format!("K unbounded at an end of {}", c)) };
        }
    }
    Err(format!("{} crosses a singular point of K", c))
}

fn gamma_inside(c: &Candidate, gamma: &Rational, closed: (bool, bool)) -> bool {
    let lo = c.alpha.cmp_rational(gamma).reverse();
    let hi = c.beta.cmp_rational(gamma);
    let lo_ok = lo == Ordering::Greater || (closed.0 && lo == Ordering::Equal);
    let hi_ok = hi == Ordering::Greater || (closed.1 && hi == Ordering::Equal);
    lo_ok && hi_ok
}

fn nests(prev: &EndpointChoice, c: &Candidate, strict: (bool, bool)) -> bool {
    let left = prev.alpha.cmp_exact(&c.alpha);
    let right = c.beta.cmp_exact(&prev.beta);
    let ok = |o: Ordering, s: bool| if s { o == Ordering::Greater } else { o != Ordering::Less };
    ok(left, strict.0) && ok(right, strict.1)
}

fn attempt(case: TheoremCase, specs: &[BoundarySpec], gamma11: &Rational, strict_extension: bool) -> Attempt {
    let pattern = case.pattern().expect("concrete case");
    let mut out = Attempt { case, endpoints: Vec::new(), checklist: Vec::new(), failed_at: None };
    for (i, spec) in specs.iter().enumerate() {
        let n = i + 1;
        let mut check = |item, passed: bool, detail: String| {
            out.checklist.push(HypothesisCheck { n, item, passed, detail });
            passed
        };
        let matching: Vec<&Candidate> = spec.candidates.iter().filter(|c| c.pattern == pattern).collect();
        if !check(HypothesisItem::EndpointPattern, !matching.is_empty(), pattern_detail(spec)) {
            out.failed_at = Some(n);
            return out;
        }
        let admissible: Vec<&Candidate> = match out.endpoints.last() {
            None => matching.into_iter().filter(|c| gamma_inside(c, gamma11, case.gamma_closed())).collect(),
            Some(prev) => matching.into_iter().filter(|c| nests(prev, c, case.strict_growth())).collect(),
        };
        let chosen = admissible.into_iter().max_by(|x, y| {
            x.alpha.cmp_exact(&y.alpha).then_with(|| y.beta.cmp_exact(&x.beta))
        });
        let item = if n == 1 { HypothesisItem::Gamma11Location } else { HypothesisItem::Nesting };
        let detail = match (n, out.endpoints.last()) {
            (1, _) => format!("gamma_1,1 = {}", crate::polycore::format_rational(gamma11)),
            (_, Some(prev)) => format!("previous endpoints {}", prev),
            _ => String::new(),
        };
        let Some(chosen) = chosen else {
            check(item, false, detail);
            out.failed_at = Some(n);
            return out;
        };
        check(item, true, format!("{}; chose {}", detail, chosen));
        let cont = continuity(spec, chosen);
        let cont_ok = check(HypothesisItem::Continuity, cont.is_ok(), cont.err().unwrap_or_default());
        let ext_ok = check(
            HypothesisItem::Extension,
            !(strict_extension && spec.extension),
            if spec.extension { "classification is an extension case".into() } else { String::new() },
        );
        if !cont_ok || !ext_ok {
            out.failed_at = Some(n);
            return out;
        }
        out.endpoints.push(EndpointChoice::from_candidate(n, chosen, case));
    }
    out
}

/// Matches the per-`n` boundary data against the cases of the interlacing theorem.
/// `specs[i]` belongs to `n = i + 1`; `gamma11` is the zero of `P_1`.
pub fn theorem_case(
    specs: &[BoundarySpec],
    gamma11: &Rational,
    strict_extension: bool,
) -> Result<TheoremCaseDecision, IfError> {
    if specs.is_empty() {
        return Err(IfError::NoSpecs);
    }
    let mut best: Option<Attempt> = None;
    let mut diagnosis = Vec::new();
    for case in TheoremCase::ORDER {
        let a = attempt(case, specs, gamma11, strict_extension);
        let Some(n) = a.failed_at else {
            return Ok(TheoremCaseDecision {
                case,
                endpoints: a.endpoints,
                checklist: a.checklist,
                conclusion: Conclusion::for_case(case),
                diagnosis: Vec::new(),
                failed_at: None,
            });
        };
        let failure = a.checklist.iter().rev().find(|c| !c.passed).expect("failed attempt records a failure");
        diagnosis.push(format!("case ({}) fails at n = {}: {} ({})", case, n, failure.item, failure.detail));
        let progress = |t: &Attempt| (t.failed_at, t.checklist.iter().filter(|c| c.passed).count());
        if best.as_ref().is_none_or(|b| progress(b) < progress(&a)) {
            best = Some(a);
        }
    }
    let best = best.expect("at least one case attempted");
    diagnosis.insert(0, format!("furthest: case ({}) holds for n < {}", best.case, best.failed_at.unwrap_or(0)));
    Ok(TheoremCaseDecision {
        case: TheoremCase::None,
        endpoints: best.endpoints,
        checklist: best.checklist,
        conclusion: None,
        diagnosis,
        failed_at: best.failed_at,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{boundary_zeros, classify};
    use super::*;
    use crate::dde::CoefficientPair;

    fn spec(a: &[i64], b: &[i64]) -> BoundarySpec {
        boundary_zeros(&classify(&CoefficientPair::from_i64s(a, b).unwrap()).unwrap())
    }

    fn zero() -> Rational {
        Rational::new()
    }

    #[test]
    fn euler_frobenius_case_a() {
        let specs: Vec<_> = (1..=6).map(|n| spec(&[1, 0, -1], &[0, -2 * (n + 1)])).collect();
        let d = theorem_case(&specs, &zero(), false).unwrap();
        assert_eq!(d.case, TheoremCase::A);
        assert!(d.endpoints.iter().all(|e| e.to_string() == "(-1, 1)"));
        assert!(d.failures().next().is_none());
        assert!(d.conclusion.unwrap().contains_next);
    }

    #[test]
    fn bell_case_c() {
        let specs: Vec<_> = (1..=5).map(|_| spec(&[0, 1], &[0, 1])).collect();
        let d = theorem_case(&specs, &zero(), false).unwrap();
        assert_eq!(d.case, TheoremCase::C);
        assert_eq!(d.endpoints[0].to_string(), "(-inf, 0]");
        let c = d.conclusion.unwrap();
        assert!(c.real_simple && !c.interlace);
    }

    #[test]
    fn strict_growth_gives_case_b() {
        // A = B = x - n: K = e^x and beta_n = n
        let specs: Vec<_> = (1..=4).map(|n| spec(&[-n, 1], &[-n, 1])).collect();
        let d = theorem_case(&specs, &Rational::from((1, 2)), false).unwrap();
        assert_eq!(d.case, TheoremCase::B);
        let d = theorem_case(&specs, &Rational::from(1), false).unwrap();
        assert_eq!(d.case, TheoremCase::C);
    }

    #[test]
    fn synthetic_case_d() {
        let specs: Vec<_> = (1..=5).map(|n| spec(&[-(n + 1) * (n + 1), 0, 1], &[])).collect();
        let d = theorem_case(&specs, &zero(), false).unwrap();
        assert_eq!(d.case, TheoremCase::D);
        assert_eq!(d.endpoints[4].to_string(), "(-6, 6)");
        let refused = theorem_case(&specs, &zero(), true).unwrap();
        assert_eq!(refused.case, TheoremCase::None);
        assert!(refused.failures().any(|c| c.item == HypothesisItem::Extension));
    }

    #[test]
    fn hypergeometric_breaks_at_vanishing_exponent() {
        // A = x^2 - x, B = b x - (n + c) with b = 20, c = 1
        let specs: Vec<_> = (1..=25).map(|n| spec(&[0, -1, 1], &[-(n + 1), 20])).collect();
        let d = theorem_case(&specs, &Rational::from((1, 20)), false).unwrap();
        assert_eq!(d.case, TheoremCase::None);
        assert_eq!(d.failed_at, Some(19));
        assert_eq!(d.endpoints.len(), 18);
        let short = theorem_case(&specs[..10], &Rational::from((1, 20)), false).unwrap();
        assert_eq!(short.case, TheoremCase::A);
    }

    #[test]
    fn gamma_outside_fails() {
        let specs: Vec<_> = (1..=3).map(|_| spec(&[1, 0, -1], &[0, -4])).collect();
        let d = theorem_case(&specs, &Rational::from(2), false).unwrap();
        assert_eq!(d.case, TheoremCase::None);
        assert_eq!(d.failed_at, Some(1));
        assert!(d.diagnosis.iter().any(|s| s.contains("gamma11-location")));
    }

    #[test]
    fn shrinking_interval_fails_nesting() {
        let specs = vec![spec(&[-4, 0, 1], &[0, 2]), spec(&[-1, 0, 1], &[0, 2])];
        let d = theorem_case(&specs, &zero(), false).unwrap();
        assert_eq!(d.case, TheoremCase::None);
        assert_eq!(d.failed_at, Some(2));
    }

    #[test]
    fn empty_specs_rejected() {
        assert_eq!(theorem_case(&[], &zero(), false), Err(IfError::NoSpecs));
    }
}
