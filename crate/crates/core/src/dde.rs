//! Sequence generation from `P_{n+1} = A_n P_n' + B_n P_n` and the converse
//! admissibility test: given a sequence, recover quadratic `A_n` and linear `B_n`.

use std::cmp::Ordering;
use std::fmt;

use rug::Rational;

use crate::families::FamilySpec;
use crate::polycore::{isolate_roots, BigFloat, Coeff, Poly, PolyError, RootEngine};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DdeError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("coefficient {which} has degree {degree}, at most {bound} allowed")]
    DegreeBound { which: char, degree: usize, bound: usize },
    #[error("at least one step must be requested")]
    EmptyRequest,
    #[error("coefficient source undefined at n = {n}: {reason}")]
    SourceUndefined { n: usize, reason: String },
    #[error("sequence must start with the constant polynomial 1")]
    BadStart,
    #[error("sequence entry {n} has degree {found:?}, expected {n}")]
    InconsistentDegree { n: usize, found: Option<usize> },
    #[error("sequence too short: need at least two polynomials")]
    TooShort,
    #[error("polynomial of degree {degree} has {real} distinct real zeros")]
    ComplexRoots { real: usize, degree: usize },
    #[error("multiple zero near {0}")]
    MultipleRoot(String),
}

/// The pair `(A_n, B_n)` with `deg A <= 2` and `deg B <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientPair<T> {
    a: Poly<T>,
    b: Poly<T>,
}

impl<T: Coeff> CoefficientPair<T> {
    pub fn new(a: Poly<T>, b: Poly<T>) -> Result<Self, DdeError> {
        for (which, p, bound) in [('A', &a, 2), ('B', &b, 1)] {
            if let Some(degree) = p.degree() {
                if degree > bound {
                    return Err(DdeError::DegreeBound { which, degree, bound });
                }
            }
        }
        Ok(CoefficientPair { a, b })
    }

    pub fn a(&self) -> &Poly<T> {
        &self.a
    }

    pub fn b(&self) -> &Poly<T> {
        &self.b
    }

    pub fn into_parts(self) -> (Poly<T>, Poly<T>) {
        (self.a, self.b)
    }
}

impl CoefficientPair<Rational> {
    /// Ascending integer coefficients, for tests and tables.
    pub fn from_i64s(a: &[i64], b: &[i64]) -> Result<Self, DdeError> {
        CoefficientPair::new(Poly::from_i64s(a), Poly::from_i64s(b))
    }
}

impl<T: Coeff> fmt::Display for CoefficientPair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A = {}, B = {}", self.a, self.b)
    }
}

/// Anything that yields a coefficient pair for each step index.
pub trait PairSource<T> {
    fn pair(&self, n: usize) -> Result<CoefficientPair<T>, DdeError>;
}

impl<T: Coeff> PairSource<T> for [CoefficientPair<T>] {
    fn pair(&self, n: usize) -> Result<CoefficientPair<T>, DdeError> {
        self.get(n).cloned().ok_or_else(|| DdeError::SourceUndefined {
            n,
            reason: format!("table has {} entries", self.len()),
        })
    }
}

impl<T: Coeff> PairSource<T> for Vec<CoefficientPair<T>> {
    fn pair(&self, n: usize) -> Result<CoefficientPair<T>, DdeError> {
        self.as_slice().pair(n)
    }
}

/// Exact coefficient source: a built-in family rule or an explicit table.
#[derive(Debug, Clone)]
pub enum CoefficientSource {
    Family(FamilySpec),
    Table(Vec<CoefficientPair<Rational>>),
}

impl PairSource<Rational> for CoefficientSource {
    fn pair(&self, n: usize) -> Result<CoefficientPair<Rational>, DdeError> {
        match self {
            CoefficientSource::Family(spec) => spec
                .pair(n)
                .map_err(|e| DdeError::SourceUndefined { n, reason: e.to_string() }),
            CoefficientSource::Table(t) => t.pair(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step<T> {
    pub poly: Poly<T>,
    /// `deg P_{n+1} = deg P_n + 1`
    pub degree_raised: bool,
}

pub fn step<T: Coeff>(p: &Poly<T>, c: &CoefficientPair<T>) -> Step<T> {
    let poly = &(&c.a * &p.derivative()) + &(&c.b * p);
    let degree_raised = match (p.degree(), poly.degree()) {
        (Some(d), Some(e)) => e == d + 1,
        _ => false,
    };
    Step { poly, degree_raised }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Truncation {
    pub n: usize,
    pub message: String,
}

/// `P_0 .. P_N`. `collapsed` lists every `n` with `deg P_{n+1} != n + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySequence<T> {
    pub polys: Vec<Poly<T>>,
    pub collapsed: Vec<usize>,
    pub truncated: Option<Truncation>,
}

impl<T: Coeff> PolySequence<T> {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn degrees(&self) -> Vec<Option<usize>> {
        self.polys.iter().map(Poly::degree).collect()
    }

    /// Largest `m` such that `deg P_k = k` for every `k <= m`.
    pub fn regular_prefix(&self) -> usize {
        self.polys
            .iter()
            .enumerate()
            .take_while(|(k, p)| p.degree() == Some(*k))
            .count()
            .saturating_sub(1)
    }
}

/// Runs the recurrence from `P_0 = 1` for `n = 0 .. N-1`. A zero polynomial
/// stops generation with a diagnostic; a degree collapse is only recorded.
pub fn generate<T: Coeff, S: PairSource<T> + ?Sized>(src: &S, n_max: usize) -> Result<PolySequence<T>, DdeError> {
    if n_max < 1 {
        return Err(DdeError::EmptyRequest);
    }
    let mut polys = vec![Poly::one()];
    let mut collapsed = Vec::new();
    let mut truncated = None;
    for n in 0..n_max {
        let pair = src.pair(n)?;
        let s = step(&polys[n], &pair);
        if s.poly.is_zero() {
            truncated = Some(Truncation {
                n,
                message: format!("P_{} is the zero polynomial ({})", n + 1, pair),
            });
            break;
        }
        if s.poly.degree() != Some(n + 1) {
            collapsed.push(n);
        }
        polys.push(s.poly);
    }
    Ok(PolySequence { polys, collapsed, truncated })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdmitVerdict {
    Admits,
    Fails,
    SkippedDegenerate,
}

impl fmt::Display for AdmitVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdmitVerdict::Admits => "admits",
            AdmitVerdict::Fails => "fails",
            AdmitVerdict::SkippedDegenerate => "skipped-degenerate",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmitEntry<T> {
    pub n: usize,
    pub verdict: AdmitVerdict,
    pub pair: Option<CoefficientPair<T>>,
    /// solution space of the remainder system is a single point
    pub unique: bool,
    /// relative least-squares residual, float mode only
    pub residual: Option<f64>,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityResult<T> {
    pub entries: Vec<AdmitEntry<T>>,
    pub numeric: bool,
    pub tolerance: Option<f64>,
}

impl<T: Coeff> AdmissibilityResult<T> {
    pub fn all_admit(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == AdmitVerdict::Admits)
    }

    pub fn first_failure(&self) -> Option<&AdmitEntry<T>> {
        self.entries.iter().find(|e| e.verdict != AdmitVerdict::Admits)
    }

    pub fn entry(&self, n: usize) -> Option<&AdmitEntry<T>> {
        self.entries.iter().find(|e| e.n == n)
    }
}

fn check_shape<T: Coeff>(seq: &[Poly<T>]) -> Result<(), DdeError> {
    if seq.len() < 2 {
        return Err(DdeError::TooShort);
    }
    if !seq[0].is_one_poly() {
        return Err(DdeError::BadStart);
    }
    for (n, p) in seq.iter().enumerate() {
        if p.degree() != Some(n) {
            return Err(DdeError::InconsistentDegree { n, found: p.degree() });
        }
    }
    Ok(())
}

trait OnePoly {
    fn is_one_poly(&self) -> bool;
}

impl<T: Coeff> OnePoly for Poly<T> {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.coeffs()[0].is_one()
    }
}

/// The pairs for `n = 0` and `n = 1`, where the solution is not unique:
/// `A_0 = 0, B_0 = P_1`, and for `n = 1` the constant `A_1` that makes
/// `P_1 | P_2 - A_1 P_1'`.
fn base_pair<T: Coeff>(n: usize, p: &Poly<T>, next: &Poly<T>) -> Result<CoefficientPair<T>, DdeError> {
    if n == 0 {
        return CoefficientPair::new(Poly::zero(), next.clone());
    }
    let slope = p.derivative().coeff(0);
    let root = p.coeff(0).neg_ref().div_ref(&p.coeff(1));
    let a = Poly::constant(next.eval(&root).div_ref(&slope));
    let (b, _) = (next - &a.scale(&slope)).divrem(p)?;
    CoefficientPair::new(a, b)
}

/// Columns `rem(x^k P', P)` for `k = 0, 1, 2` and right-hand side `rem(P_{n+1}, P)`.
fn remainder_system<T: Coeff>(p: &Poly<T>, next: &Poly<T>) -> Result<(Vec<Vec<T>>, Vec<T>), PolyError> {
    let n = p.degree().unwrap_or(0);
    let dp = p.derivative();
    let mut cols = Vec::with_capacity(3);
    for k in 0..3 {
        let (_, r) = (&Poly::monomial(T::one(), k) * &dp).divrem(p)?;
        cols.push((0..n).map(|i| r.coeff(i)).collect::<Vec<T>>());
    }
    let (_, t) = next.divrem(p)?;
    Ok((cols, (0..n).map(|i| t.coeff(i)).collect()))
}

fn finish_pair<T: Coeff>(a_coeffs: Vec<T>, p: &Poly<T>, next: &Poly<T>) -> Result<(CoefficientPair<T>, Poly<T>), DdeError> {
    let a = Poly::new(a_coeffs);
    let (b, r) = (next - &(&a * &p.derivative())).divrem(p)?;
    Ok((CoefficientPair::new(a, b)?, r))
}

/// Exact Gaussian elimination on the `n x 3` remainder system. Returns the
/// particular solution with free unknowns set to zero and the rank, or the index
/// of an inconsistent row.
fn solve_exact(cols: &[Vec<Rational>], rhs: &[Rational]) -> Result<(Vec<Rational>, usize), usize> {
    let rows = rhs.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..3 {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = Rational::from(1) / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..4 {
                    let d = Rational::from(&f * &m[r][j]);
                    m[i][j] -= d;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    if let Some(bad) = (r..rows).find(|&i| !m[i][3].is_zero()) {
        return Err(bad);
    }
    let mut x = vec![Rational::new(); 3];
    for &(row, col) in &pivots {
        x[col] = m[row][3].clone();
    }
    Ok((x, pivots.len()))
}

/// Exact admissibility test. Non-squarefree `P_n` with `n >= 2` is reported as
/// skipped, since the recovery relies on simple zeros.
pub fn admits_dde(seq: &[Poly<Rational>]) -> Result<AdmissibilityResult<Rational>, DdeError> {
    check_shape(seq)?;
    let mut entries = Vec::with_capacity(seq.len() - 1);
    for n in 0..seq.len() - 1 {
        let (p, next) = (&seq[n], &seq[n + 1]);
        if n < 2 {
            entries.push(AdmitEntry {
                n,
                verdict: AdmitVerdict::Admits,
                pair: Some(base_pair(n, p, next)?),
                unique: false,
                residual: None,
                witness: None,
            });
            continue;
        }
        if !p.is_squarefree() {
            entries.push(AdmitEntry {
                n,
                verdict: AdmitVerdict::SkippedDegenerate,
                pair: None,
                unique: false,
                residual: None,
                witness: Some(format!("P_{} has a repeated zero: gcd(P, P') = {}", n, p.gcd(&p.derivative()))),
            });
            continue;
        }
        let (cols, rhs) = remainder_system(p, next)?;
        let entry = match solve_exact(&cols, &rhs) {
            Ok((a, rank)) => {
                let (pair, r) = finish_pair(a, p, next)?;
                debug_assert!(r.is_zero());
                AdmitEntry {
                    n,
                    verdict: AdmitVerdict::Admits,
                    pair: Some(pair),
                    unique: rank == 3,
                    residual: None,
                    witness: None,
                }
            }
            Err(row) => AdmitEntry {
                n,
                verdict: AdmitVerdict::Fails,
                pair: None,
                unique: false,
                residual: None,
                witness: Some(format!(
                    "coefficient of x^{} in rem(P_{} - A P_{}', P_{}) cannot vanish for any quadratic A",
                    row,
                    n + 1,
                    n,
                    n
                )),
            },
        };
        entries.push(entry);
    }
    Ok(AdmissibilityResult { entries, numeric: false, tolerance: None })
}

fn norm(v: &[BigFloat], prec: u32) -> BigFloat {
    let mut s = BigFloat::with_prec(prec, 0.0);
    for x in v {
        s = s.add_ref(&x.mul_ref(x));
    }
    s.sqrt()
}

/// Householder least squares on the `n x 3` remainder system.
/// Returns the solution, the numerical rank and the residual 2-norm.
fn solve_least_squares(cols: &[Vec<BigFloat>], rhs: &[BigFloat], prec: u32) -> (Vec<BigFloat>, usize, BigFloat) {
    let rows = rhs.len();
    let zero = BigFloat::with_prec(prec, 0.0);
    let mut a: Vec<Vec<BigFloat>> = cols.to_vec();
    let mut b = rhs.to_vec();
    let ncols = 3.min(rows);
    for k in 0..ncols {
        let alpha = norm(&a[k][k..], prec);
        if alpha.is_zero() {
            continue;
        }
        let alpha = if a[k][k].sign() == Ordering::Less { alpha } else { alpha.neg_ref() };
        let mut v: Vec<BigFloat> = a[k][k..].to_vec();
        v[0] = v[0].sub_ref(&alpha);
        let vv = v.iter().fold(zero.clone(), |s, x| s.add_ref(&x.mul_ref(x)));
        if vv.is_zero() {
            continue;
        }
        let reflect = |col: &mut Vec<BigFloat>| {
            let dot = v.iter().zip(&col[k..]).fold(zero.clone(), |s, (x, y)| s.add_ref(&x.mul_ref(y)));
            let f = dot.mul_ref(&BigFloat::with_prec(prec, 2.0)).div_ref(&vv);
            for (i, x) in v.iter().enumerate() {
                col[k + i] = col[k + i].sub_ref(&f.mul_ref(x));
            }
        };
        for col in a.iter_mut().skip(k) {
            reflect(col);
        }
        reflect(&mut b);
    }
    let scale = (0..ncols).map(|k| a[k][k].abs_ref().to_f64()).fold(0.0, f64::max);
    let tiny = BigFloat::epsilon(prec).to_f64().sqrt() * scale;
    let mut x = vec![zero.clone(); 3];
    let mut rank = 0;
    for k in (0..ncols).rev() {
        if a[k][k].abs_ref().to_f64() <= tiny {
            continue;
        }
        rank += 1;
        let mut s = b[k].clone();
        for j in k + 1..3 {
            s = s.sub_ref(&a[j][k].mul_ref(&x[j]));
        }
        x[k] = s.div_ref(&a[k][k]);
    }
    let mut resid = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut s = rhs[i].clone();
        for (j, c) in cols.iter().enumerate() {
            s = s.sub_ref(&c[i].mul_ref(&x[j]));
        }
        resid.push(s);
    }
    (x, rank, norm(&resid, prec))
}

/// A multiple of `anchor` that carries `P_n` to `next`, if one exists.
fn scaled_pair(
    anchor: &Poly<Rational>,
    p: &Poly<Rational>,
    next: &Poly<Rational>,
) -> Result<Option<CoefficientPair<Rational>>, DdeError> {
    let (_, target) = next.divrem(p)?;
    let (_, unit) = (anchor * &p.derivative()).divrem(p)?;
    let Some(k) = (0..p.degree().unwrap_or(0)).find(|&i| unit.coeff(i) != 0) else {
        return Ok(None);
    };
    let scale = target.coeff(k) / unit.coeff(k);
    if target != unit.scale(&scale) {
        return Ok(None);
    }
    let a = anchor.scale(&scale);
    let (b, r) = (next - &(&a * &p.derivative())).divrem(p)?;
    if !r.is_zero() || b.degree().unwrap_or(0) > 1 {
        return Ok(None);
    }
    Ok(Some(CoefficientPair::new(a, b)?))
}

/// One pair per step of an admissible sequence, or the first failing entry.
/// Where the pair is not unique, a multiple of the first unique `A` is used
/// when one fits, so the recovered pairs vary with `n` like the true ones.
pub fn recover_pairs(
    seq: &[Poly<Rational>],
) -> Result<Result<Vec<CoefficientPair<Rational>>, AdmitEntry<Rational>>, DdeError> {
    let adm = admits_dde(seq)?;
    if let Some(e) = adm.entries.iter().find(|e| e.pair.is_none()) {
        return Ok(Err(e.clone()));
    }
    let anchor = adm.entries.iter().find(|e| e.unique).and_then(|e| e.pair.as_ref()).map(|p| p.a().clone());
    let mut pairs = Vec::with_capacity(adm.entries.len());
    for e in &adm.entries {
        let fallback = e.pair.clone().expect("checked above");
        let aligned = match (&anchor, e.unique, e.n) {
            (Some(a), false, n) if n >= 1 => scaled_pair(a, &seq[n], &seq[n + 1])?,
            _ => None,
        };
        pairs.push(aligned.unwrap_or(fallback));
    }
    Ok(Ok(pairs))
}

/// Float-mode admissibility. The remainder system is solved in the least-squares
/// sense; a step admits when the residual relative to `|P_{n+1}|` is at most `rel_tol`.
pub fn admits_dde_float(seq: &[Poly<BigFloat>], rel_tol: f64) -> Result<AdmissibilityResult<BigFloat>, DdeError> {
    check_shape(seq)?;
    let mut entries = Vec::with_capacity(seq.len() - 1);
    for n in 0..seq.len() - 1 {
        let (p, next) = (&seq[n], &seq[n + 1]);
        if n < 2 {
            entries.push(AdmitEntry {
                n,
                verdict: AdmitVerdict::Admits,
                pair: Some(base_pair(n, p, next)?),
                unique: false,
                residual: Some(0.0),
                witness: None,
            });
            continue;
        }
        let prec = p.coeffs().iter().chain(next.coeffs()).map(BigFloat::prec).max().unwrap_or(64);
        let (cols, rhs) = remainder_system(p, next)?;
        let (a, rank, res) = solve_least_squares(&cols, &rhs, prec);
        let scale = norm(next.coeffs(), prec);
        let rel = res.div_ref(&scale).to_f64();
        let (pair, _) = finish_pair(a, p, next)?;
        let admits = rel <= rel_tol;
        entries.push(AdmitEntry {
            n,
            verdict: if admits { AdmitVerdict::Admits } else { AdmitVerdict::Fails },
            pair: if admits { Some(pair) } else { None },
            unique: rank == 3,
            residual: Some(rel),
            witness: (!admits).then(|| {
                format!(
                    "least-squares residual {:.3e} exceeds tolerance {:.1e}: no quadratic A_{} interpolates P_{}/P_{}' at the zeros of P_{}",
                    rel,
                    rel_tol,
                    n,
                    n + 1,
                    n,
                    n
                )
            }),
        });
    }
    Ok(AdmissibilityResult { entries, numeric: true, tolerance: Some(rel_tol) })
}

/// Zeros `x_k` of `P_n` paired with `y_k = P_{n+1}(x_k) / P_n'(x_k)`.
///
/// `condition` bounds how far `A(x_k)` may sit from `y_k` per unit of isolation
/// width: `1 + max |g'(x_k)| + max |L'(x_k)|` with `g = P_{n+1} / P_n'` and `L`
/// the interpolant of the samples.
#[derive(Debug, Clone, PartialEq)]
pub struct XySamples<T> {
    pub points: Vec<(T, T)>,
    pub condition: f64,
}

pub fn sample_xy<T: RootEngine>(pn: &Poly<T>, pn1: &Poly<T>, width: &T) -> Result<XySamples<T>, DdeError> {
    let degree = pn.degree().ok_or(PolyError::ZeroPolynomial)?;
    let roots = isolate_roots(pn, width)?;
    if let Some(r) = roots.roots.iter().find(|r| r.multiplicity > 1) {
        return Err(DdeError::MultipleRoot(r.interval.midpoint().to_string()));
    }
    if roots.count() != degree {
        return Err(DdeError::ComplexRoots { real: roots.count(), degree });
    }
    let dp = pn.derivative();
    let ddp = dp.derivative();
    let dpn1 = pn1.derivative();
    let mut points = Vec::with_capacity(degree);
    let mut g_slope = 0.0f64;
    for r in &roots.roots {
        let x = r.interval.midpoint();
        let d = dp.eval(&x);
        // the Newton correction estimates the distance to the zero; beyond the
        // isolation width the derivative is too small to trust
        if d.is_zero() || pn.eval(&x).div_ref(&d).abs_ref().sub_ref(width).sign() == Ordering::Greater {
            return Err(DdeError::MultipleRoot(x.to_string()));
        }
        let y = pn1.eval(&x).div_ref(&d);
        let slope = dpn1.eval(&x).to_f64() / d.to_f64() - pn1.eval(&x).to_f64() * ddp.eval(&x).to_f64() / (d.to_f64() * d.to_f64());
        g_slope = g_slope.max(slope.abs());
        points.push((x, y));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.to_f64()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.to_f64()).collect();
    let l_slope = xs
        .iter()
        .map(|&x| interpolant_slope(&xs, &ys, x).abs())
        .fold(0.0, f64::max);
    Ok(XySamples { points, condition: 1.0 + g_slope + l_slope })
}

/// Derivative at `x` of the Newton-form interpolant through `(xs, ys)`.
fn interpolant_slope(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
        }
    }
    let (mut v, mut dv) = (dd[n - 1], 0.0);
    for i in (0..n - 1).rev() {
        dv = dv * (x - xs[i]) + v;
        v = v * (x - xs[i]) + dd[i];
    }
    dv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::from_i64s(c)
    }

    fn hermite_pair() -> CoefficientPair<Rational> {
        CoefficientPair::from_i64s(&[-1], &[0, 2]).unwrap()
    }

    #[test]
    fn hermite_steps() {
        let s = step(&Poly::one(), &hermite_pair());
        assert_eq!(s.poly, p(&[0, 2]));
        assert!(s.degree_raised);
        assert_eq!(step(&s.poly, &hermite_pair()).poly, p(&[-2, 0, 4]));
    }

    #[test]
    fn step_can_collapse() {
        let c = CoefficientPair::from_i64s(&[0, 0, 1], &[0, -1]).unwrap();
        let s = step(&p(&[0, 1]), &c);
        assert!(s.poly.is_zero());
        assert!(!s.degree_raised);
    }

    #[test]
    fn degree_bounds_enforced() {
        assert!(matches!(
            CoefficientPair::from_i64s(&[0, 0, 0, 1], &[1]),
            Err(DdeError::DegreeBound { which: 'A', degree: 3, .. })
        ));
        assert!(CoefficientPair::from_i64s(&[1], &[0, 0, 1]).is_err());
    }

    #[test]
    fn zero_step_truncates() {
        let table = vec![CoefficientPair::from_i64s(&[1], &[]).unwrap()];
        let seq = generate(&table, 1).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq.truncated.as_ref().unwrap().n, 0);
    }

    #[test]
    fn generate_requires_steps() {
        let table: Vec<CoefficientPair<Rational>> = Vec::new();
        assert_eq!(generate(&table, 0), Err(DdeError::EmptyRequest));
        assert!(matches!(generate(&table, 1), Err(DdeError::SourceUndefined { n: 0, .. })));
    }

    #[test]
    fn hermite_round_trip_is_unique_from_three() {
        let table = vec![hermite_pair(); 6];
        let seq = generate(&table, 6).unwrap();
        let res = admits_dde(&seq.polys).unwrap();
        assert!(res.all_admit());
        for e in &res.entries {
            let pair = e.pair.as_ref().unwrap();
            assert_eq!(step(&seq.polys[e.n], pair).poly, seq.polys[e.n + 1]);
            if e.n >= 2 {
                assert_eq!(pair, &hermite_pair(), "n = {}", e.n);
            }
            assert_eq!(e.unique, e.n >= 3);
        }
    }

    #[test]
    fn planted_products_admit_with_zero_a() {
        let mut seq = vec![Poly::one()];
        for k in 1..=6 {
            let next = &seq[k - 1] * &p(&[-(k as i64), 1]);
            seq.push(next);
        }
        let res = admits_dde(&seq).unwrap();
        for e in res.entries.iter().filter(|e| e.n >= 3) {
            let pair = e.pair.as_ref().unwrap();
            assert!(pair.a().is_zero());
            assert_eq!(pair.b(), &p(&[-(e.n as i64 + 1), 1]));
        }
    }

    #[test]
    fn inconsistent_sequences_fail_with_witness() {
        // four zeros of P_4 cannot in general be matched by a quadratic
        let seq = vec![p(&[1]), p(&[0, 1]), p(&[-1, 0, 1]), p(&[0, -1, 0, 1]), p(&[4, 0, -5, 0, 1]), p(&[7, 3, 0, 0, 1, 1])];
        let res = admits_dde(&seq).unwrap();
        assert_eq!(res.entry(3).unwrap().verdict, AdmitVerdict::Admits);
        let e = res.entry(4).unwrap();
        assert_eq!(e.verdict, AdmitVerdict::Fails);
        assert!(e.witness.is_some());
    }

    #[test]
    fn repeated_zero_is_skipped_and_bad_degree_errors() {
        let seq = vec![p(&[1]), p(&[0, 1]), p(&[1, -2, 1]), p(&[0, 0, 0, 1])];
        let res = admits_dde(&seq).unwrap();
        assert_eq!(res.entry(2).unwrap().verdict, AdmitVerdict::SkippedDegenerate);
        let bad = vec![p(&[1]), p(&[0, 0, 1])];
        assert!(matches!(admits_dde(&bad), Err(DdeError::InconsistentDegree { n: 1, .. })));
        assert_eq!(admits_dde(&[p(&[2]), p(&[0, 1])]), Err(DdeError::BadStart));
    }

    #[test]
    fn float_mode_recovers_hermite() {
        let table = vec![hermite_pair(); 6];
        let seq = generate(&table, 6).unwrap();
        let fseq: Vec<Poly<BigFloat>> = seq
            .polys
            .iter()
            .map(|q| q.map(|c| BigFloat::from_rational_prec(c, 256)))
            .collect();
        let res = admits_dde_float(&fseq, 1e-12).unwrap();
        assert!(res.all_admit());
        let a = res.entry(4).unwrap().pair.as_ref().unwrap().a().coeff(0).to_f64();
        assert!((a + 1.0).abs() < 1e-40);
        assert!(res.entries.iter().all(|e| e.residual.unwrap() < 1e-60));
    }

    #[test]
    fn samples_of_h1_h2() {
        let s = sample_xy(&p(&[0, 2]), &p(&[-2, 0, 4]), &Rational::from((1, 1000))).unwrap();
        assert_eq!(s.points, vec![(Rational::new(), Rational::from(-1))]);
    }

    #[test]
    fn samples_reject_multiple_and_complex_zeros() {
        let w = Rational::from((1, 1000));
        assert!(matches!(sample_xy(&p(&[1, -2, 1]), &p(&[0, 0, 0, 1]), &w), Err(DdeError::MultipleRoot(_))));
        assert!(matches!(sample_xy(&p(&[1, 0, 1]), &p(&[0, 0, 0, 1]), &w), Err(DdeError::ComplexRoots { .. })));
    }

    #[test]
    fn samples_track_recovered_a() {
        let table = vec![hermite_pair(); 6];
        let seq = generate(&table, 6).unwrap();
        let w = Rational::from((1, 1 << 20));
        let s = sample_xy(&seq.polys[5], &seq.polys[6], &w).unwrap();
        for (_, y) in &s.points {
            assert!((Rational::from(-1) - y).abs().to_f64() < w.to_f64() * s.condition);
        }
    }

    #[test]
    fn recovered_pairs_follow_the_family() {
        let spec = FamilySpec::Laguerre { alpha: Rational::from(1) };
        let seq = generate(&CoefficientSource::Family(spec.clone()), 9).unwrap();
        let pairs = recover_pairs(&seq.polys).unwrap().unwrap();
        for n in 1..pairs.len() {
            assert_eq!(pairs[n], spec.pair(n).unwrap(), "n = {}", n);
        }
        let bad = vec![p(&[1]), p(&[0, 1]), p(&[-1, 0, 1]), p(&[0, -3, 0, 1]), p(&[1, 0, 0, 0, 1]), p(&[7, 0, 1, 0, 0, 1])];
        assert_eq!(recover_pairs(&bad).unwrap().unwrap_err().n, 4);
    }
}
