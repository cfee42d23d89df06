//! Exact real-root counting and isolation with Sturm chains.

use std::cmp::Ordering;
use std::fmt;

use rug::{Integer, Rational};

use super::interval::{Endpoint, Interval};
use super::poly::{sign_of_integer_poly, Poly};
use super::scalar::Coeff;
use super::PolyError;

/// Isolating interval for one distinct real root.
///
/// `lo == hi` marks a root known exactly. Otherwise the root lies strictly
/// inside `(lo, hi)` and neither end is a root.
#[derive(Debug, Clone, PartialEq)]
pub struct RootInterval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Coeff> RootInterval<T> {
    pub fn exact(x: T) -> Self {
        RootInterval { lo: x.clone(), hi: x }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> T {
        self.hi.sub_ref(&self.lo)
    }

    pub fn midpoint(&self) -> T {
        self.lo.add_ref(&self.hi).div_ref(&T::from_i64(2))
    }

    pub fn to_interval(&self) -> Interval<T> {
        let open = !self.is_exact();
        Interval {
            lo: Endpoint::Finite(self.lo.clone()),
            hi: Endpoint::Finite(self.hi.clone()),
            lo_open: open,
            hi_open: open,
        }
    }

    /// Strictly left of `other`, with no shared point.
    pub fn precedes(&self, other: &Self) -> bool {
        match self.hi.sub_ref(&other.lo).sign() {
            Ordering::Less => true,
            // touching ends are disjoint unless both sides are the same exact point
            Ordering::Equal => !(self.is_exact() && other.is_exact()),
            Ordering::Greater => false,
        }
    }
}

impl<T: fmt::Display + Coeff> fmt::Display for RootInterval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "({}, {})", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsolatedRoot<T> {
    pub interval: RootInterval<T>,
    pub multiplicity: usize,
}

/// Distinct real roots in increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet<T> {
    pub roots: Vec<IsolatedRoot<T>>,
    pub squarefree: bool,
    /// Set when the roots come from floating-point computation.
    pub numeric: bool,
}

impl<T: Coeff> RootSet<T> {
    /// Number of distinct real roots.
    pub fn count(&self) -> usize {
        self.roots.len()
    }

    /// Number of real roots counted with multiplicity.
    pub fn count_with_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn midpoints(&self) -> Vec<T> {
        self.roots.iter().map(|r| r.interval.midpoint()).collect()
    }
}

/// Sturm chain of a squarefree rational polynomial, stored as primitive
/// integer polynomials (positive rescaling preserves every sign).
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<Vec<Integer>>,
    degrees: Vec<usize>,
}

impl SturmChain {
    pub fn new(p: &Poly<Rational>) -> Result<Self, PolyError> {
        if p.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut polys = vec![p.primitive_part()];
        let dp = p.derivative();
        if !dp.is_zero() {
            polys.push(dp.primitive_part());
            loop {
                let n = polys.len();
                let (_, r) = polys[n - 2].divrem(&polys[n - 1])?;
                if r.is_zero() {
                    break;
                }
                polys.push((-&r).primitive_part());
            }
        }
        let last = polys.last().expect("chain is nonempty");
        if !last.is_constant() {
            return Err(PolyError::NotSquarefree(format!(
                "gcd(p, p') has degree {}",
                last.degree().unwrap_or(0)
            )));
        }
        Ok(SturmChain {
            degrees: polys.iter().map(|q| q.degree().unwrap_or(0)).collect(),
            chain: polys.iter().map(|q| q.to_primitive_integers()).collect(),
        })
    }

    fn signs_at(&self, x: &Endpoint<Rational>) -> Vec<Ordering> {
        self.chain
            .iter()
            .zip(&self.degrees)
            .map(|(c, &d)| match x {
                Endpoint::Finite(v) => sign_of_integer_poly(c, v),
                Endpoint::PosInf => c.last().map_or(Ordering::Equal, |a| a.cmp0()),
                Endpoint::NegInf => {
                    let s = c.last().map_or(Ordering::Equal, |a| a.cmp0());
                    if d % 2 == 1 {
                        s.reverse()
                    } else {
                        s
                    }
                }
            })
            .collect()
    }

    /// Sign changes along the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &Endpoint<Rational>) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in self.signs_at(x) {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Sign of the chain's first member (the polynomial itself) at a finite point.
    pub fn sign_of_poly(&self, x: &Rational) -> Ordering {
        sign_of_integer_poly(&self.chain[0], x)
    }

    /// Distinct roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Endpoint<Rational>, b: &Endpoint<Rational>) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Distinct roots in `iv`, honouring open and closed ends.
    pub fn count(&self, iv: &Interval<Rational>) -> usize {
        let is_root = |e: &Endpoint<Rational>| e.finite().is_some_and(|x| self.sign_of_poly(x) == Ordering::Equal);
        if iv.lo.cmp_to(&iv.hi) == Ordering::Equal {
            return usize::from(!iv.lo_open && !iv.hi_open && is_root(&iv.lo));
        }
        let mut n = self.count_half_open(&iv.lo, &iv.hi);
        if !iv.lo_open && is_root(&iv.lo) {
            n += 1;
        }
        if iv.hi_open && is_root(&iv.hi) {
            n -= 1;
        }
        n
    }
}

/// Exact number of distinct real roots of a squarefree polynomial in `iv`.
pub fn sturm_count(p: &Poly<Rational>, iv: &Interval<Rational>) -> Result<usize, PolyError> {
    Ok(SturmChain::new(p)?.count(iv))
}

/// Power of two strictly above every root's magnitude (Cauchy bound).
fn root_bound(p: &Poly<Rational>) -> Rational {
    let c = p.coeffs();
    let lc = Rational::from(c[c.len() - 1].abs_ref());
    let mut m = Rational::new();
    for a in &c[..c.len() - 1] {
        let r = Rational::from(a.abs_ref()) / &lc;
        if r > m {
            m = r;
        }
    }
    m += 1;
    let mut b = Rational::from(1);
    while b <= m {
        b *= 2;
    }
    b
}

/// Splits `(lo, hi)` until every piece holds exactly one root of the chain's
/// polynomial. Split points are never roots, so every returned end is a nonroot.
fn bisect_isolate(chain: &SturmChain, lo: Rational, hi: Rational) -> Vec<RootInterval<Rational>> {
    let mut out = Vec::new();
    let total = chain.count_half_open(&Endpoint::Finite(lo.clone()), &Endpoint::Finite(hi.clone()));
    let mut stack = vec![(lo, hi, total)];
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mut mid = Rational::from(&lo + &hi) / 2;
                while chain.sign_of_poly(&mid) == Ordering::Equal {
                    mid = Rational::from(&lo + &mid) / 2;
                }
                let v_lo = chain.variations(&Endpoint::Finite(lo.clone()));
                let v_mid = chain.variations(&Endpoint::Finite(mid.clone()));
                let v_hi = chain.variations(&Endpoint::Finite(hi.clone()));
                stack.push((lo, mid.clone(), v_lo - v_mid));
                stack.push((mid, hi, v_mid - v_hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Halves an isolating interval of a root of `chain`'s polynomial.
pub(crate) fn halve(chain: &SturmChain, iv: &mut RootInterval<Rational>) {
    if iv.is_exact() {
        return;
    }
    let mid = Rational::from(&iv.lo + &iv.hi) / 2;
    let s_mid = chain.sign_of_poly(&mid);
    if s_mid == Ordering::Equal {
        *iv = RootInterval::exact(mid);
    } else if s_mid == chain.sign_of_poly(&iv.lo) {
        iv.lo = mid;
    } else {
        iv.hi = mid;
    }
}

pub(crate) fn refine_to(chain: &SturmChain, iv: &mut RootInterval<Rational>, width: &Rational) {
    while !iv.is_exact() && iv.width() > *width {
        halve(chain, iv);
    }
}

/// Sturm chain and coarse isolating intervals of a squarefree polynomial.
pub(crate) fn isolate_squarefree(p: &Poly<Rational>) -> Result<(SturmChain, Vec<RootInterval<Rational>>), PolyError> {
    let chain = SturmChain::new(p)?;
    if p.is_constant() {
        return Ok((chain, Vec::new()));
    }
    let b = root_bound(p);
    let intervals = bisect_isolate(&chain, Rational::from(-&b), b);
    Ok((chain, intervals))
}

/// Isolates the distinct real roots of a nonzero rational polynomial and refines
/// each interval to at most `width`. Multiplicities come from the squarefree
/// decomposition.
pub fn isolate_rational(p: &Poly<Rational>, width: &Rational) -> Result<RootSet<Rational>, PolyError> {
    if width.cmp0() != Ordering::Greater {
        return Err(PolyError::InvalidWidth(width.to_string()));
    }
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(RootSet { roots: Vec::new(), squarefree: true, numeric: false });
    }
    let factors = p.squarefree_decomposition();
    let squarefree = factors.len() <= 1;
    let sqf = p.squarefree_part();
    let chain = SturmChain::new(&sqf)?;
    let b = root_bound(&sqf);
    let mut intervals = bisect_isolate(&chain, Rational::from(-&b), b);
    for iv in &mut intervals {
        refine_to(&chain, iv, width);
    }
    let factor_chains: Vec<Poly<Rational>> = factors;
    let roots = intervals
        .into_iter()
        .map(|iv| {
            let multiplicity = factor_chains
                .iter()
                .position(|f| {
                    if iv.is_exact() {
                        f.sign_at(&iv.lo) == Ordering::Equal
                    } else {
                        f.sign_at(&iv.lo) != f.sign_at(&iv.hi)
                    }
                })
                .map_or(1, |i| i + 1);
            IsolatedRoot { interval: iv, multiplicity }
        })
        .collect();
    Ok(RootSet { roots, squarefree, numeric: false })
}

/// Why a polynomial failed the real-and-simple test.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum RealSimpleFailure {
    /// `gcd(p, p')` is not constant.
    NotSquarefree { gcd_degree: usize },
    /// Fewer distinct real roots than the degree.
    MissingRealRoots { real_roots: usize, degree: usize },
}

impl fmt::Display for RealSimpleFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealSimpleFailure::NotSquarefree { gcd_degree } => {
                write!(f, "not squarefree: gcd(p, p') has degree {}", gcd_degree)
            }
            RealSimpleFailure::MissingRealRoots { real_roots, degree } => {
                write!(f, "only {} real roots for degree {}", real_roots, degree)
            }
        }
    }
}

/// `Ok(())` when every root of `p` is real and simple, otherwise the failed condition.
pub fn is_real_simple(p: &Poly<Rational>) -> Result<Result<(), RealSimpleFailure>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let degree = p.degree().unwrap_or(0);
    let g = p.gcd(&p.derivative());
    if !g.is_constant() {
        return Ok(Err(RealSimpleFailure::NotSquarefree { gcd_degree: g.degree().unwrap_or(0) }));
    }
    let real_roots = sturm_count(p, &Interval::real_line())?;
    if real_roots != degree {
        return Ok(Err(RealSimpleFailure::MissingRealRoots { real_roots, degree }));
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn sturm_counts_sqrt2() {
        let iv = Interval::open(q(0, 1), q(2, 1)).unwrap();
        assert_eq!(sturm_count(&p(&[-2, 0, 1]), &iv).unwrap(), 1);
    }

    #[test]
    fn sturm_counts_nothing_for_x2_plus_1() {
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &Interval::real_line()).unwrap(), 0);
    }

    #[test]
    fn sturm_counts_planted_roots() {
        let roots: Vec<Rational> = (1..=8).map(Rational::from).collect();
        let f = Poly::from_roots(&roots);
        assert_eq!(sturm_count(&f, &Interval::real_line()).unwrap(), 8);
    }

    #[test]
    fn sturm_respects_closed_ends() {
        let f = p(&[-1, 0, 1]); // roots ±1
        let closed = Interval::closed(q(-1, 1), q(1, 1)).unwrap();
        let open = Interval::open(q(-1, 1), q(1, 1)).unwrap();
        let half = Interval::new(Endpoint::Finite(q(-1, 1)), Endpoint::Finite(q(1, 1)), true, false).unwrap();
        assert_eq!(sturm_count(&f, &closed).unwrap(), 2);
        assert_eq!(sturm_count(&f, &open).unwrap(), 0);
        assert_eq!(sturm_count(&f, &half).unwrap(), 1);
    }

    #[test]
    fn sturm_rejects_bad_input() {
        assert!(matches!(sturm_count(&p(&[1, -2, 1]), &Interval::real_line()), Err(PolyError::NotSquarefree(_))));
        assert!(matches!(sturm_count(&Poly::zero(), &Interval::real_line()), Err(PolyError::ZeroPolynomial)));
    }

    #[test]
    fn isolates_x2_minus_x() {
        let w = q(1, 1000);
        let rs = isolate_rational(&p(&[0, -1, 1]), &w).unwrap();
        assert_eq!(rs.count(), 2);
        assert!(rs.squarefree);
        for (r, target) in rs.roots.iter().zip([q(0, 1), q(1, 1)]) {
            assert_eq!(r.multiplicity, 1);
            assert!(r.interval.lo <= target && target <= r.interval.hi);
            assert!(r.interval.width() <= w);
        }
    }

    #[test]
    fn isolates_h3() {
        // 8x^3 - 12x = 4x(2x^2 - 3), roots 0 and ±sqrt(3/2)
        let w = q(1, 1 << 20);
        let rs = isolate_rational(&p(&[0, -12, 0, 8]), &w).unwrap();
        let mids: Vec<f64> = rs.midpoints().iter().map(|m| m.to_f64()).collect();
        let s = 1.5f64.sqrt();
        assert_eq!(mids.len(), 3);
        for (m, t) in mids.iter().zip([-s, 0.0, s]) {
            assert!((m - t).abs() < 1e-6, "{} vs {}", m, t);
        }
    }

    #[test]
    fn double_root_multiplicity() {
        let rs = isolate_rational(&p(&[1, -2, 1]), &q(1, 100)).unwrap();
        assert_eq!(rs.count(), 1);
        assert_eq!(rs.roots[0].multiplicity, 2);
        assert!(!rs.squarefree);
        assert!(rs.roots[0].interval.lo <= q(1, 1) && q(1, 1) <= rs.roots[0].interval.hi);
    }

    #[test]
    fn nonpositive_width_rejected() {
        assert!(matches!(isolate_rational(&p(&[0, 1]), &q(0, 1)), Err(PolyError::InvalidWidth(_))));
    }

    #[test]
    fn real_simple_verdicts() {
        assert_eq!(is_real_simple(&p(&[-1, 0, 1])).unwrap(), Ok(()));
        assert_eq!(
            is_real_simple(&p(&[1, 0, 1])).unwrap(),
            Err(RealSimpleFailure::MissingRealRoots { real_roots: 0, degree: 2 })
        );
        assert_eq!(
            is_real_simple(&p(&[1, -2, 1])).unwrap(),
            Err(RealSimpleFailure::NotSquarefree { gcd_degree: 1 })
        );
    }
}
