//! JSON and CSV renderings of the library results. Rationals are strings.

use rug::Rational;
use serde_json::{json, Value};

use crate::dde::{AdmissibilityResult, CoefficientPair, PolySequence};
use crate::families::FreudDemo;
use crate::integrating_factor::{
    BoundarySpec, Candidate, CriticalPoint, EndpointChoice, ExtReal, KClassification, QuadSurd, TheoremCaseDecision,
};
use crate::polycore::{format_rational, Coeff, Poly, RootInterval};
use crate::verify::{ContainmentCheck, VerificationReport, ZeroRecord};

pub fn q(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn poly<T: Coeff>(p: &Poly<T>) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn surd(x: &QuadSurd) -> Value {
    Value::String(x.to_string())
}

fn ext(x: &ExtReal) -> Value {
    Value::String(x.to_string())
}

fn opt<T>(x: Option<T>, f: impl Fn(T) -> Value) -> Value {
    x.map(f).unwrap_or(Value::Null)
}

pub fn pair<T: Coeff>(c: &CoefficientPair<T>) -> Value {
    json!({ "A": poly(c.a()), "B": poly(c.b()) })
}

pub fn classification(k: &KClassification) -> Value {
    let powers: Vec<Value> = k
        .form
        .powers
        .iter()
        .map(|p| json!({ "root": surd(&p.root), "exponent": surd(&p.exponent), "multiplicity": p.multiplicity }))
        .collect();
    json!({
        "case": k.case.tag(),
        "extension": k.is_extension(),
        "normalized": { "A": poly(&k.a), "B": poly(&k.b) },
        "lambda": opt(k.lambda.as_ref(), surd),
        "xi": opt(k.xi.as_ref(), surd),
        "mu": opt(k.mu.as_ref(), q),
        "kappa": opt(k.kappa.as_ref(), q),
        "K": k.form.to_string(),
        "factors": {
            "powers": powers,
            "pole": opt(k.form.pole.as_ref(), |p| json!({ "root": q(&p.root), "coefficient": q(&p.coefficient) })),
            "quadratic": q(&k.form.quadratic),
            "linear": q(&k.form.linear),
            "irreducible": opt(k.form.irreducible.as_ref(), |i| json!({
                "center": q(&i.center),
                "width_squared": q(&i.width_sq),
                "half_exponent": q(&i.half_exponent),
                "arc": surd(&i.arc),
            })),
        },
    })
}

fn critical(p: &CriticalPoint) -> Value {
    let lim = |x: Option<crate::integrating_factor::LimitKind>| opt(x, |l| Value::String(l.to_string()));
    json!({
        "point": ext(&p.point),
        "singular": p.singular,
        "K": { "left": lim(p.k_left), "right": lim(p.k_right) },
        "A_over_K": { "left": lim(p.a_over_k_left), "right": lim(p.a_over_k_right) },
    })
}

fn candidate(c: &Candidate) -> Value {
    json!({
        "alpha": ext(&c.alpha),
        "beta": ext(&c.beta),
        "pattern": serde_json::to_value(c.pattern).unwrap_or(Value::Null),
        "alpha_vanishing": serde_json::to_value(c.alpha_vanishing()).unwrap_or(Value::Null),
        "beta_vanishing": serde_json::to_value(c.beta_vanishing()).unwrap_or(Value::Null),
        "interval": c.to_string(),
    })
}

pub fn boundary(b: &BoundarySpec) -> Value {
    json!({
        "zeros_of_K": b.zeros_of_k.iter().map(ext).collect::<Vec<_>>(),
        "zeros_of_A_over_K": b.zeros_of_a_over_k.iter().map(ext).collect::<Vec<_>>(),
        "points": b.points.iter().map(critical).collect::<Vec<_>>(),
        "smooth_intervals": b.smooth_intervals.iter().map(|(l, h)| json!([ext(l), ext(h)])).collect::<Vec<_>>(),
        "candidates": b.candidates.iter().map(candidate).collect::<Vec<_>>(),
        "alpha": opt(b.alpha(), ext),
        "beta": opt(b.beta(), ext),
        "extension": b.extension,
    })
}

fn endpoints(e: &EndpointChoice) -> Value {
    json!({
        "n": e.n,
        "alpha": ext(&e.alpha),
        "beta": ext(&e.beta),
        "alpha_closed": e.alpha_closed,
        "beta_closed": e.beta_closed,
        "interval": e.to_string(),
    })
}

pub fn decision(d: &TheoremCaseDecision) -> Value {
    json!({
        "case": d.case.letter(),
        "endpoints": d.endpoints.iter().map(endpoints).collect::<Vec<_>>(),
        "checklist": d.checklist.iter().map(|c| json!({
            "n": c.n,
            "item": c.item.to_string(),
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "conclusion": opt(d.conclusion, |c| json!({
            "interlace": c.interlace,
            "real_simple": c.real_simple,
            "zeros_of_P_n_in_interval": c.contains_current,
            "zeros_of_P_n+1_in_interval": c.contains_next,
        })),
        "failed_at": d.failed_at,
        "diagnosis": d.diagnosis,
    })
}

fn root_interval(iv: &RootInterval<Rational>) -> Value {
    json!({
        "lo": q(&iv.lo),
        "hi": q(&iv.hi),
        "exact": iv.is_exact(),
        "mid": iv.midpoint().to_f64(),
    })
}

fn containment(c: &ContainmentCheck) -> Value {
    json!({
        "interval": c.interval.to_string(),
        "passed": c.passed,
        "on_closed_end": c.on_closed_end,
        "witness": c.witness,
    })
}

fn record(r: &ZeroRecord) -> Value {
    json!({
        "n": r.n,
        "degree": r.degree,
        "real_simple": r.real_simple,
        "real_simple_detail": r.real_simple_detail,
        "zeros": r.zeros.iter().map(root_interval).collect::<Vec<_>>(),
        "step_exact": r.step_exact,
        "k_identity": opt(r.k_identity.as_ref(), |k| json!({
            "max_rel_error": k.max_rel_error,
            "max_abs_error": k.max_abs_error,
            "samples": k.samples,
            "exact": k.exact,
            "passed": k.passed,
        })),
        "containment": opt(r.containment.as_ref(), containment),
        "next_containment": opt(r.next_containment.as_ref(), containment),
        "interlace": opt(r.interlace.as_ref(), |i| serde_json::to_value(i).unwrap_or(Value::Null)),
        "interlace_error": r.interlace_error,
        "matches": r.matches,
        "failures": r.failures,
    })
}

pub fn classify_report(
    pairs: &[CoefficientPair<Rational>],
    ks: &[KClassification],
    bs: &[BoundarySpec],
    gamma11: &Rational,
    d: &TheoremCaseDecision,
) -> Value {
    let per_n: Vec<Value> = pairs
        .iter()
        .zip(ks)
        .zip(bs)
        .enumerate()
        .map(|(i, ((p, k), b))| {
            json!({ "n": i + 1, "pair": pair(p), "classification": classification(k), "boundary": boundary(b) })
        })
        .collect();
    json!({ "gamma11": q(gamma11), "per_n": per_n, "decision": decision(d) })
}

pub fn verification(r: &VerificationReport) -> Value {
    let mut v = classify_report(&r.pairs, &r.classifications, &r.boundaries, &r.gamma11, &r.decision);
    let extra = json!({
        "source": r.source,
        "n_requested": r.n_requested,
        "n_checked": r.n_checked,
        "truncation": r.truncation,
        "records": r.records.iter().map(record).collect::<Vec<_>>(),
        "agreement": r.agreement,
        "confirmed": r.confirmed(),
        "failures": r.failures,
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

pub fn admissibility<T: Coeff>(r: &AdmissibilityResult<T>) -> Value {
    json!({
        "numeric": r.numeric,
        "tolerance": r.tolerance,
        "all_admit": r.all_admit(),
        "first_failure": r.first_failure().map(|e| e.n),
        "entries": r.entries.iter().map(|e| json!({
            "n": e.n,
            "verdict": e.verdict.to_string(),
            "unique": e.unique,
            "pair": opt(e.pair.as_ref(), pair),
            "residual": e.residual,
            "witness": e.witness,
        })).collect::<Vec<_>>(),
    })
}

pub fn sequence<T: Coeff>(s: &PolySequence<T>) -> Value {
    Value::Array(s.polys.iter().map(poly).collect())
}

pub fn freud(d: &FreudDemo, reproduced: bool) -> Value {
    let p5 = d.sequence.p5.as_ref();
    json!({
        "t": q(&d.data.t),
        "precision": d.data.precision,
        "a": d.data.a.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "string_equation_residuals": d.data.residuals.iter().map(|x| x.to_decimal(6)).collect::<Vec<_>>(),
        "max_residual": d.data.max_residual(),
        "sequence": sequence(&d.sequence.seq),
        "parity_ok": d.sequence.parity_ok,
        "p5": opt(p5, |p| json!({
            "alpha": p.alpha.to_string(),
            "beta": p.beta.to_string(),
            "zeta_plus": p.zeta_plus.to_string(),
            "zeta_minus": p.zeta_minus.to_string(),
            "coefficient_error": p.coefficient_error,
            "positive_zeros": p.positive_zeros.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "zero_error": p.zero_error,
        })),
        "admissibility": admissibility(&d.admissibility),
        "samples": d.samples.points.iter().map(|(x, y)| json!([x.to_string(), y.to_string()])).collect::<Vec<_>>(),
        "sample_condition": d.samples.condition,
        "interpolant": poly(&d.interpolant),
        "interpolant_degree": d.interpolant_degree(),
        "interpolant_fit": d.interpolant_fit,
        "reproduced": reproduced,
    })
}

/// One CSV row per isolated zero.
pub struct ZeroRow {
    pub n: usize,
    pub index: usize,
    pub lo: String,
    pub hi: String,
    pub mid: f64,
}

pub const ZERO_CSV_HEADER: &str = "n,index,lo,hi,mid";

pub fn zeros_csv(rows: &[ZeroRow]) -> String {
    let mut out = String::from(ZERO_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{},{},{},{},{:e}\n", r.n, r.index, r.lo, r.hi, r.mid));
    }
    out
}

pub fn zeros_json(rows: &[ZeroRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| json!({ "n": r.n, "index": r.index, "lo": r.lo, "hi": r.hi, "mid": r.mid }))
            .collect(),
    )
}

pub fn record_rows(records: &[ZeroRecord]) -> Vec<ZeroRow> {
    records
        .iter()
        .flat_map(|r| {
            r.zeros.iter().enumerate().map(move |(i, iv)| ZeroRow {
                n: r.n,
                index: i + 1,
                lo: format_rational(&iv.lo),
                hi: format_rational(&iv.hi),
                mid: iv.midpoint().to_f64(),
            })
        })
        .collect()
}
