//! Interlacing of the zeros of two real-rooted polynomials of adjacent degree.

use std::cmp::Ordering;
use std::fmt;

use rug::Rational;

use super::companion::isolate_float;
use super::poly::Poly;
use super::roots::{halve, is_real_simple, isolate_squarefree, RootInterval, SturmChain};
use super::scalar::{BigFloat, Coeff};
use super::PolyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InterlaceVerdict {
    /// The `2n + 1` zeros alternate strictly.
    Strict,
    /// Alternation holds once the zeros shared at an extreme position are
    /// counted for both polynomials.
    WeakSharedEndpoint,
    Fail,
}

impl fmt::Display for InterlaceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InterlaceVerdict::Strict => "strict",
            InterlaceVerdict::WeakSharedEndpoint => "weak-shared-endpoint",
            InterlaceVerdict::Fail => "fail",
        })
    }
}

/// First ordering violation found.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct InterlaceWitness {
    pub message: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct InterlaceReport {
    pub verdict: InterlaceVerdict,
    pub witness: Option<InterlaceWitness>,
    /// Widest isolating interval at the point the ordering was decided.
    pub resolution_width: f64,
    pub shared_roots: usize,
    pub numeric: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    /// zero of the lower-degree polynomial only
    P,
    /// zero of the higher-degree polynomial only
    Q,
    /// common zero
    S,
}

/// Decides the verdict from the merged, sorted zero labels.
fn judge(labels: &[(Label, f64)]) -> (InterlaceVerdict, Option<InterlaceWitness>) {
    let last = labels.len().saturating_sub(1);
    let mut expanded: Vec<(Label, f64)> = Vec::with_capacity(labels.len() + 2);
    for (i, &(l, v)) in labels.iter().enumerate() {
        match l {
            Label::S if i == 0 && i == last => {
                expanded.push((Label::Q, v));
                expanded.push((Label::P, v));
            }
            Label::S if i == 0 => {
                expanded.push((Label::Q, v));
                expanded.push((Label::P, v));
            }
            Label::S if i == last => {
                expanded.push((Label::P, v));
                expanded.push((Label::Q, v));
            }
            Label::S => {
                return (
                    InterlaceVerdict::Fail,
                    Some(InterlaceWitness {
                        message: format!("shared zero near {} is not at an extreme position", v),
                        values: vec![v],
                    }),
                );
            }
            _ => expanded.push((l, v)),
        }
    }
    let fail = |message: String, values: Vec<f64>| (InterlaceVerdict::Fail, Some(InterlaceWitness { message, values }));
    let q_values: Vec<f64> = expanded.iter().filter(|e| e.0 == Label::Q).map(|e| e.1).collect();
    if let (Some(first), Some(&q_min)) = (expanded.first(), q_values.first()) {
        if first.0 == Label::P {
            return fail(format!("{} < {}: zero of p below the smallest zero of q", first.1, q_min), vec![first.1, q_min]);
        }
    }
    if let (Some(end), Some(&q_max)) = (expanded.last(), q_values.last()) {
        if end.0 == Label::P {
            return fail(format!("{} > {}: zero of p above the largest zero of q", end.1, q_max), vec![end.1, q_max]);
        }
    }
    for w in expanded.windows(2) {
        if w[0].0 == w[1].0 {
            let (other, this) = if w[0].0 == Label::Q { ("p", "q") } else { ("q", "p") };
            return fail(
                format!("no zero of {} between the zeros of {} near {} and {}", other, this, w[0].1, w[1].1),
                vec![w[0].1, w[1].1],
            );
        }
    }
    let shared = labels.iter().any(|l| l.0 == Label::S);
    (if shared { InterlaceVerdict::WeakSharedEndpoint } else { InterlaceVerdict::Strict }, None)
}

fn check_degrees<T: Coeff>(p: &Poly<T>, q: &Poly<T>) -> Result<(), PolyError> {
    match (p.degree(), q.degree()) {
        (Some(dp), Some(dq)) if dq == dp + 1 => Ok(()),
        (dp, dq) => Err(PolyError::DegreeMismatch(format!(
            "interlacing needs deg q = deg p + 1, got deg p = {:?}, deg q = {:?}",
            dp, dq
        ))),
    }
}

/// Exact interlacing test for real-simple rational polynomials with
/// `deg q = deg p + 1`. Common zeros are found with `gcd(p, q)`; the remaining
/// isolating intervals are refined until every pair is ordered.
pub fn interlaces(p: &Poly<Rational>, q: &Poly<Rational>) -> Result<InterlaceReport, PolyError> {
    check_degrees(p, q)?;
    for (name, f) in [("p", p), ("q", q)] {
        if let Err(why) = is_real_simple(f)? {
            return Err(PolyError::NotRealSimple(format!("{}: {}", name, why)));
        }
    }
    let g = p.gcd(q);
    let p_only = p.divrem(&g)?.0;
    let q_only = q.divrem(&g)?.0;
    let mut chains: Vec<SturmChain> = Vec::new();
    let mut items: Vec<(Label, usize, RootInterval<Rational>)> = Vec::new();
    for (label, f) in [(Label::P, &p_only), (Label::Q, &q_only), (Label::S, &g)] {
        if f.is_constant() {
            continue;
        }
        let (chain, ivs) = isolate_squarefree(f)?;
        let idx = chains.len();
        chains.push(chain);
        items.extend(ivs.into_iter().map(|iv| (label, idx, iv)));
    }
    loop {
        items.sort_by(|a, b| a.2.lo.cmp(&b.2.lo).then_with(|| a.2.hi.cmp(&b.2.hi)));
        let mut clean = true;
        for i in 1..items.len() {
            if !items[i - 1].2.precedes(&items[i].2) {
                clean = false;
                let (a, b) = items.split_at_mut(i);
                let left = &mut a[i - 1];
                let right = &mut b[0];
                halve(&chains[left.1], &mut left.2);
                halve(&chains[right.1], &mut right.2);
            }
        }
        if clean {
            break;
        }
    }
    let resolution_width = items.iter().map(|it| it.2.width().to_f64()).fold(0.0, f64::max);
    let labels: Vec<(Label, f64)> = items.iter().map(|it| (it.0, it.2.midpoint().to_f64())).collect();
    let (verdict, witness) = judge(&labels);
    Ok(InterlaceReport {
        verdict,
        witness,
        resolution_width,
        shared_roots: g.degree().unwrap_or(0),
        numeric: false,
    })
}

/// Float-mode interlacing. Zeros closer than `rel_tol` relative to the larger
/// magnitude (floored at `rel_tol` times the largest zero of `q`) count as shared.
/// Verdicts are tagged numeric.
pub fn interlaces_float(
    p: &Poly<BigFloat>,
    q: &Poly<BigFloat>,
    rel_tol: f64,
    width: &BigFloat,
) -> Result<InterlaceReport, PolyError> {
    check_degrees(p, q)?;
    let rp = isolate_float(p, width)?;
    let rq = isolate_float(q, width)?;
    for (name, rs, f) in [("p", &rp, p), ("q", &rq, q)] {
        let deg = f.degree().unwrap_or(0);
        if !rs.squarefree || rs.count() != deg {
            return Err(PolyError::NotRealSimple(format!(
                "{}: {} distinct real zeros for degree {}",
                name,
                rs.count(),
                deg
            )));
        }
    }
    let xs_p: Vec<f64> = rp.midpoints().iter().map(|x| x.to_f64()).collect();
    let xs_q: Vec<f64> = rq.midpoints().iter().map(|x| x.to_f64()).collect();
    let scale = xs_q.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut merged: Vec<(Label, f64)> = xs_p
        .iter()
        .map(|&x| (Label::P, x))
        .chain(xs_q.iter().map(|&x| (Label::Q, x)))
        .collect();
    merged.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal));
    let mut labels: Vec<(Label, f64)> = Vec::with_capacity(merged.len());
    let mut shared = 0;
    for (l, x) in merged {
        if let Some(prev) = labels.last_mut() {
            let close = (x - prev.1).abs() <= rel_tol * x.abs().max(prev.1.abs()).max(scale);
            if close && prev.0 != l && prev.0 != Label::S {
                prev.0 = Label::S;
                shared += 1;
                continue;
            }
        }
        labels.push((l, x));
    }
    let (verdict, witness) = judge(&labels);
    Ok(InterlaceReport {
        verdict,
        witness,
        resolution_width: width.to_f64(),
        shared_roots: shared,
        numeric: true,
    })
}
