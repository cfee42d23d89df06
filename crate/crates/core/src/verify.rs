//! Checks the predicted zero behaviour against exactly isolated zeros.

use std::cmp::Ordering;

use rug::Rational;

use crate::dde::{generate, step, CoefficientPair, CoefficientSource, DdeError, PairSource, PolySequence};
use crate::families::FamilySpec;
use crate::integrating_factor::{
    boundary_zeros, check_log_derivative, classify, exact_log_derivative, rational_sample_points, theorem_case,
    BoundarySpec, EndpointChoice, ExtReal, IfError, KClassification, QuadSurd, TheoremCase, TheoremCaseDecision,
};
use crate::polycore::{
    halve, interlaces, is_real_simple, isolate_squarefree, InterlaceReport, InterlaceVerdict, Poly, PolyError,
    RootInterval, SturmChain,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("verification needs N >= {min}, got {got}")]
    TooShort { min: usize, got: usize },
    #[error("degree collapse leaves no usable range: {0}")]
    NoRegularRange(String),
    #[error("{0} has irrational data; only exact sources are verified")]
    NotRational(String),
    #[error(transparent)]
    Dde(#[from] DdeError),
    #[error(transparent)]
    IntegratingFactor(#[from] IfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// log2 of the width the reported zero intervals are refined to
pub const ZERO_WIDTH_BITS: u32 = 40;

fn zero_width() -> Rational {
    Rational::from((1, 1u64 << ZERO_WIDTH_BITS))
}

/// Zeros of `P_n` located against the endpoints of one interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ContainmentCheck {
    pub interval: EndpointChoice,
    pub passed: bool,
    /// zeros sitting exactly on a closed end
    pub on_closed_end: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KIdentityCheck {
    pub max_rel_error: f64,
    pub max_abs_error: f64,
    pub samples: usize,
    /// `d/dx log K = B / A` exactly at rational sample points
    pub exact: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroRecord {
    pub n: usize,
    pub degree: Option<usize>,
    pub real_simple: bool,
    pub real_simple_detail: Option<String>,
    /// distinct real zeros of `P_n`, ascending; exact points have `lo == hi`
    pub zeros: Vec<RootInterval<Rational>>,
    /// `P_{n+1} = A_n P_n' + B_n P_n` as polynomials
    pub step_exact: bool,
    pub k_identity: Option<KIdentityCheck>,
    pub containment: Option<ContainmentCheck>,
    /// zeros of `P_{n+1}` against the interval of `n`
    pub next_containment: Option<ContainmentCheck>,
    pub interlace: Option<InterlaceReport>,
    pub interlace_error: Option<String>,
    /// this record satisfies everything the decision predicts for it
    pub matches: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub source: String,
    pub n_requested: usize,
    /// last `n` checked; less than requested after a degree collapse
    pub n_checked: usize,
    pub truncation: Option<String>,
    pub gamma11: Rational,
    pub pairs: Vec<CoefficientPair<Rational>>,
    pub classifications: Vec<KClassification>,
    pub boundaries: Vec<BoundarySpec>,
    pub decision: TheoremCaseDecision,
    pub records: Vec<ZeroRecord>,
    pub agreement: bool,
    pub failures: Vec<String>,
}

impl VerificationReport {
    /// Whether the hypotheses held and the zeros agreed with the conclusion.
    pub fn confirmed(&self) -> bool {
        self.decision.case != TheoremCase::None && self.agreement && self.truncation.is_none()
    }
}

/// Position of the root isolated by `iv` relative to `e`, refining `iv` as needed.
fn locate(chain: &SturmChain, p: &Poly<Rational>, iv: &mut RootInterval<Rational>, e: &QuadSurd) -> Ordering {
    loop {
        if iv.is_exact() {
            return QuadSurd::rational(iv.lo.clone()).cmp_exact(e);
        }
        if e.cmp_rational(&iv.lo) != Ordering::Greater {
            return Ordering::Greater;
        }
        if e.cmp_rational(&iv.hi) != Ordering::Less {
            return Ordering::Less;
        }
        // e is strictly inside an interval holding exactly one root
        if e.eval_poly(p).is_zero() {
            return Ordering::Equal;
        }
        halve(chain, iv);
    }
}

/// Checks that every real zero of `p` lies in the interval, honouring closed ends.
pub fn check_containment(p: &Poly<Rational>, interval: &EndpointChoice) -> Result<ContainmentCheck, VerifyError> {
    let sqf = p.squarefree_part();
    let (chain, mut ivs) = isolate_squarefree(&sqf)?;
    let mut on_closed_end = 0;
    let mut witness = None;
    for iv in &mut ivs {
        let mut verdict = Ok(());
        if let ExtReal::Finite(a) = &interval.alpha {
            match locate(&chain, &sqf, iv, a) {
                Ordering::Greater => {}
                Ordering::Equal if interval.alpha_closed => on_closed_end += 1,
                o => verdict = Err(format!("zero {} {} alpha = {}", iv, if o == Ordering::Equal { "at open" } else { "below" }, a)),
            }
        }
        if let (Ok(()), ExtReal::Finite(b)) = (&verdict, &interval.beta) {
            match locate(&chain, &sqf, iv, b) {
                Ordering::Less => {}
                Ordering::Equal if interval.beta_closed => on_closed_end += 1,
                o => verdict = Err(format!("zero {} {} beta = {}", iv, if o == Ordering::Equal { "at open" } else { "above" }, b)),
            }
        }
        if let Err(w) = verdict {
            witness = Some(w);
            break;
        }
    }
    Ok(ContainmentCheck { interval: interval.clone(), passed: witness.is_none(), on_closed_end, witness })
}

/// Numeric and exact checks of `K' / K = B / A` for one pair.
pub fn check_k_identity(k: &KClassification, samples: usize) -> Result<KIdentityCheck, VerifyError> {
    let fd = check_log_derivative(k, samples)?;
    let spec = boundary_zeros(k);
    let exact = rational_sample_points(k, &spec, samples.min(8)).iter().all(|x| {
        let (a, b) = (k.a.eval(x), k.b.eval(x));
        a.cmp0() == Ordering::Equal
            || exact_log_derivative(k, x) == Some(QuadSurd::rational(b / a))
    });
    let passed = exact && fd.max_rel_error < 1e-5 && fd.max_abs_error < 1e-8;
    Ok(KIdentityCheck {
        max_rel_error: fd.max_rel_error,
        max_abs_error: fd.max_abs_error,
        samples: fd.samples.len(),
        exact,
        passed,
    })
}

pub fn verify_sequence(spec: &FamilySpec, n: usize) -> Result<VerificationReport, VerifyError> {
    verify_sequence_with(spec, n, false)
}

pub fn verify_sequence_with(spec: &FamilySpec, n: usize, strict_extension: bool) -> Result<VerificationReport, VerifyError> {
    if !spec.is_rational() {
        return Err(VerifyError::NotRational(spec.to_string()));
    }
    verify_source(&CoefficientSource::Family(spec.clone()), &spec.to_string(), n, strict_extension)
}

fn zeros_of(p: &Poly<Rational>) -> Result<Vec<RootInterval<Rational>>, VerifyError> {
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let sqf = p.squarefree_part();
    let (chain, mut ivs) = isolate_squarefree(&sqf)?;
    let w = zero_width();
    for iv in &mut ivs {
        while !iv.is_exact() && iv.width() > w {
            halve(&chain, iv);
        }
    }
    Ok(ivs)
}

/// Generates `P_0 .. P_{N+1}`, decides the theorem case on `n = 1..N` and checks
/// every prediction against the isolated zeros.
pub fn verify_source(
    src: &CoefficientSource,
    label: &str,
    n: usize,
    strict_extension: bool,
) -> Result<VerificationReport, VerifyError> {
    if n < 1 {
        return Err(VerifyError::TooShort { min: 1, got: n });
    }
    let seq: PolySequence<Rational> = generate(src, n + 1)?;
    let regular = seq.regular_prefix();
    let mut truncation = seq.truncated.as_ref().map(|t| t.message.clone());
    // n is checkable when P_n and P_{n+1} both have full degree
    let n_checked = n.min(regular.saturating_sub(1));
    if n_checked < 1 {
        return Err(VerifyError::NoRegularRange(
            truncation.unwrap_or_else(|| format!("degrees {:?}", seq.degrees())),
        ));
    }
    if n_checked < n && truncation.is_none() {
        truncation = Some(format!("degree collapse at P_{}; checked n <= {}", regular + 1, n_checked));
    }
    let polys = &seq.polys;
    let p1 = &polys[1];
    let gamma11 = (-p1.coeff(0)) / p1.coeff(1);

    let mut pairs = Vec::new();
    let mut classifications = Vec::new();
    let mut boundaries = Vec::new();
    for m in 1..=n_checked {
        let pair = src.pair(m)?;
        let k = classify(&pair)?;
        boundaries.push(boundary_zeros(&k));
        classifications.push(k);
        pairs.push(pair);
    }
    let decision = theorem_case(&boundaries, &gamma11, strict_extension)?;
    let conclusion = decision.conclusion;

    let mut records = Vec::new();
    for m in 1..=n_checked {
        let p = &polys[m];
        let next = &polys[m + 1];
        let pair = &pairs[m - 1];
        let mut failures = Vec::new();
        let real = is_real_simple(p)?;
        let real_simple = real.is_ok();
        let step_exact = &step(p, pair).poly == next;
        if !step_exact {
            failures.push(format!("P_{} differs from A P_{}' + B P_{}", m + 1, m, m));
        }
        let k_identity = check_k_identity(&classifications[m - 1], crate::integrating_factor::SAMPLES_PER_INTERVAL)?;
        if !k_identity.passed {
            failures.push(format!(
                "K'/K = B/A check failed (exact {}, rel {:.2e})",
                k_identity.exact, k_identity.max_rel_error
            ));
        }
        let interval = decision.endpoints.get(m - 1).filter(|_| conclusion.is_some());
        let mut containment = None;
        let mut next_containment = None;
        let (mut interlace, mut interlace_error) = (None, None);
        match interlaces(p, next) {
            Ok(r) => interlace = Some(r),
            Err(e) => interlace_error = Some(e.to_string()),
        }
        if let (Some(c), Some(iv)) = (conclusion, interval) {
            if c.real_simple && !real_simple {
                failures.push(format!("P_{} not real and simple: {}", m, real.as_ref().unwrap_err()));
            }
            if c.contains_current {
                let check = check_containment(p, iv)?;
                if !check.passed {
                    failures.push(format!("P_{}: {}", m, check.witness.clone().unwrap_or_default()));
                }
                containment = Some(check);
            }
            if c.contains_next {
                let check = check_containment(next, iv)?;
                if !check.passed {
                    failures.push(format!("P_{}: {}", m + 1, check.witness.clone().unwrap_or_default()));
                }
                next_containment = Some(check);
            }
            if c.interlace {
                match (&interlace, &interlace_error) {
                    (Some(r), _) if r.verdict != InterlaceVerdict::Fail => {}
                    (Some(r), _) => failures.push(format!(
                        "P_{} and P_{} do not interlace: {}",
                        m,
                        m + 1,
                        r.witness.as_ref().map(|w| w.message.as_str()).unwrap_or("")
                    )),
                    (None, e) => failures.push(format!("interlacing undecidable: {}", e.clone().unwrap_or_default())),
                }
            }
        }
        records.push(ZeroRecord {
            n: m,
            degree: p.degree(),
            real_simple,
            real_simple_detail: real.err().map(|w| w.to_string()),
            zeros: zeros_of(p)?,
            step_exact,
            k_identity: Some(k_identity),
            containment,
            next_containment,
            interlace,
            interlace_error,
            matches: failures.is_empty(),
            failures,
        });
    }
    let failures: Vec<String> =
        records.iter().flat_map(|r| r.failures.iter().map(move |f| format!("n = {}: {}", r.n, f))).collect();
    Ok(VerificationReport {
        source: label.to_string(),
        n_requested: n,
        n_checked,
        truncation,
        gamma11,
        pairs,
        classifications,
        boundaries,
        decision,
        agreement: failures.is_empty(),
        records,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Rule;
    use crate::polycore::parse_rational;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn euler_frobenius_case_a() {
        let spec = FamilySpec::EulerFrobenius { kappa: Rule::constant(r("1")), r: Rule::affine(r("1"), r("1")) };
        let rep = verify_sequence(&spec, 6).unwrap();
        assert_eq!(rep.decision.case, TheoremCase::A);
        assert!(rep.agreement, "{:?}", rep.failures);
        assert!(rep.confirmed());
        assert!(rep.records.iter().all(|x| x.interlace.as_ref().unwrap().verdict == InterlaceVerdict::Strict));
    }

    #[test]
    fn bell_closed_end_accepts_zero() {
        let rep = verify_sequence(&FamilySpec::Bell, 6).unwrap();
        assert_eq!(rep.decision.case, TheoremCase::C);
        assert!(rep.agreement, "{:?}", rep.failures);
        let c = rep.records[3].containment.as_ref().unwrap();
        assert_eq!(c.on_closed_end, 1);
    }

    #[test]
    fn containment_rejects_zero_past_closed_end() {
        let iv = EndpointChoice { n: 1, alpha: ExtReal::NegInf, beta: ExtReal::rational(Rational::new()), alpha_closed: false, beta_closed: true };
        assert!(check_containment(&Poly::from_i64s(&[0, 1, 1]), &iv).unwrap().passed);
        let bad = check_containment(&Poly::from_i64s(&[0, -1, 1]), &iv).unwrap();
        assert!(!bad.passed);
        let open = EndpointChoice { beta_closed: false, ..iv };
        assert!(!check_containment(&Poly::from_i64s(&[0, 1, 1]), &open).unwrap().passed);
    }

    #[test]
    fn containment_against_irrational_ends() {
        let s = QuadSurd::sqrt(r("2"));
        let iv = EndpointChoice { n: 1, alpha: ExtReal::Finite(s.neg()), beta: ExtReal::Finite(s), alpha_closed: false, beta_closed: true };
        // zeros +-sqrt 2: the right one sits on the closed end, the left one on the open end
        let check = check_containment(&Poly::from_i64s(&[-2, 0, 1]), &iv).unwrap();
        assert!(!check.passed);
        assert!(check_containment(&Poly::from_i64s(&[-1, 0, 7]), &iv).unwrap().passed);
    }

    #[test]
    fn synthetic_case_d_table() {
        let mut table = vec![CoefficientPair::from_i64s(&[0], &[0, 1]).unwrap()];
        for n in 1..=6i64 {
            table.push(CoefficientPair::from_i64s(&[-(n + 1) * (n + 1), 0, 1], &[]).unwrap());
        }
        let rep = verify_source(&CoefficientSource::Table(table), "synthetic", 5, false).unwrap();
        assert_eq!(rep.decision.case, TheoremCase::D);
        assert!(rep.agreement, "{:?}", rep.failures);
    }

    #[test]
    fn hypergeometric_within_range() {
        let rep = verify_sequence(&FamilySpec::Hyp2f1 { b: r("20"), c: r("1") }, 6).unwrap();
        assert_eq!(rep.decision.case, TheoremCase::A);
        assert!(rep.agreement);
        assert_eq!(rep.gamma11, r("1/20"));
    }

    #[test]
    fn collapse_truncates_range() {
        // A_1 = x^2, B_1 = -x sends P_2 to zero
        let table = vec![
            CoefficientPair::from_i64s(&[0], &[0, 1]).unwrap(),
            CoefficientPair::from_i64s(&[0, 0, 1], &[0, -1]).unwrap(),
            CoefficientPair::from_i64s(&[1], &[0, 1]).unwrap(),
        ];
        let err = verify_source(&CoefficientSource::Table(table), "t", 2, false).unwrap_err();
        assert!(matches!(err, VerifyError::NoRegularRange(_)));
    }
}
