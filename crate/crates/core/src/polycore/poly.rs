//! Dense univariate polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use super::scalar::Coeff;
use super::PolyError;

/// Dense polynomial with coefficients stored by ascending power.
///
/// The coefficient list never ends in a zero, so the zero polynomial is the
/// empty list and has no degree.
#[derive(Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![T::zero(), T::one()])
    }

    /// `c * x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    /// `∏ (x - r)` over the given roots.
    pub fn from_roots(roots: &[T]) -> Self {
        roots.iter().fold(Poly::one(), |acc, r| {
            &acc * &Poly::new(vec![r.neg_ref(), T::one()])
        })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Divides every coefficient by the leading one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => {
                let lc = lc.clone();
                Poly::new(self.coeffs.iter().map(|a| a.div_ref(&lc)).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a.mul_ref(&T::from_i64(k as i64)))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, a| acc.mul_ref(x).add_ref(a))
    }

    /// Value and first derivative at `x` in one pass.
    pub fn eval_with_derivative(&self, x: &T) -> (T, T) {
        let mut p = T::zero();
        let mut dp = T::zero();
        for a in self.coeffs.iter().rev() {
            dp = dp.mul_ref(x).add_ref(&p);
            p = p.mul_ref(x).add_ref(a);
        }
        (p, dp)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if sd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = rem[k + dd].div_ref(&lc);
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].sub_ref(&c.mul_ref(d));
                }
            }
            // the leading term cancels exactly in exact arithmetic; pin it for floats
            rem[k + dd] = T::zero();
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Largest absolute coefficient, as f64.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl Poly<Rational> {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn from_ratios(coeffs: &[(i64, i64)]) -> Self {
        Poly::new(coeffs.iter().map(|&(p, q)| Rational::from((p, q))).collect())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    /// True when `gcd(p, p')` is constant. The zero polynomial is not squarefree.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).expect("gcd is nonzero").0.monic()
    }

    /// Yun's algorithm: returns `(f_1, f_2, ...)` with `p = lc * ∏ f_i^i`,
    /// each `f_i` monic, squarefree and pairwise coprime (some may be 1).
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let p = self.monic();
        let dp = p.derivative();
        let a = p.gcd(&dp);
        let mut b = p.divrem(&a).expect("gcd nonzero").0;
        let mut c = dp.divrem(&a).expect("gcd nonzero").0;
        let mut d = &c - &b.derivative();
        loop {
            let g = b.gcd(&d);
            out.push(g.clone());
            b = b.divrem(&g).expect("gcd nonzero").0;
            if b.is_constant() {
                break;
            }
            c = d.divrem(&g).expect("gcd nonzero").0;
            d = &c - &b.derivative();
        }
        // trailing ones carry no information
        while out.last().is_some_and(|f| f.is_constant()) {
            out.pop();
        }
        out
    }

    /// Scales by a positive rational so that all coefficients are coprime integers.
    /// The sign of the polynomial at every point is unchanged.
    pub fn primitive_part(&self) -> Self {
        let ints = self.to_primitive_integers();
        Poly::new(ints.into_iter().map(Rational::from).collect())
    }

    /// Coprime integer coefficients of a positive multiple of `self`.
    pub fn to_primitive_integers(&self) -> Vec<Integer> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut lcm = Integer::from(1);
        for c in &self.coeffs {
            lcm.lcm_mut(c.denom());
        }
        let mut ints: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * Integer::from(&lcm / c.denom()))
            .collect();
        let mut g = Integer::new();
        for c in &ints {
            g.gcd_mut(c);
        }
        if g.cmp0() != Ordering::Equal {
            for c in &mut ints {
                c.div_exact_mut(&g);
            }
        }
        ints
    }

    /// Sign of `p(x)`, evaluated on the primitive integer form without building rationals.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        sign_of_integer_poly(&self.to_primitive_integers(), x)
    }
}

/// Sign of `Σ a_i x^i` for integer `a_i` and rational `x = p/q`, via the
/// homogenized sum `Σ a_i p^i q^(d-i)` which has the same sign since `q > 0`.
pub(crate) fn sign_of_integer_poly(coeffs: &[Integer], x: &Rational) -> Ordering {
    if coeffs.is_empty() {
        return Ordering::Equal;
    }
    let (p, q) = (x.numer(), x.denom());
    let mut acc = Integer::new();
    let mut qpow = Integer::from(1);
    // Horner in p with q powers accumulated from the top: value = Σ a_i p^i q^(d-i)
    for a in coeffs.iter().rev() {
        acc *= p;
        acc += Integer::from(a * &qpow);
        qpow *= q;
    }
    // the loop above multiplied the k-th coefficient from the top by q^k; that is
    // exactly the homogenization
    acc.cmp0()
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a.add_ref(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a.sub_ref(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.neg_ref(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(out)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|a| a.neg_ref()).collect())
    }
}

impl<T: Coeff> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.sign() == Ordering::Less;
            let mag = c.abs_ref();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{}", mag)?,
                1 if unit => f.write_str("x")?,
                1 => write!(f, "({})x", mag)?,
                _ if unit => write!(f, "x^{}", k)?,
                _ => write!(f, "({})x^{}", mag, k)?,
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::from_i64s(c)
    }

    #[test]
    fn derivative_of_linear() {
        assert_eq!(p(&[0, 2]).derivative(), p(&[2]));
        assert!(p(&[5]).derivative().is_zero());
    }

    #[test]
    fn gcd_of_shared_factor() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        // monic even when inputs are scaled
        assert_eq!(p(&[-3, 0, 3]).gcd(&p(&[-2, 2])), p(&[-1, 1]));
    }

    #[test]
    fn divrem_one_step() {
        let (q, r) = p(&[0, 0, 0, 1]).divrem(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(q, p(&[0, 1]));
        assert_eq!(r, p(&[0, 1]));
    }

    #[test]
    fn divrem_by_zero_is_an_error() {
        assert!(matches!(
            p(&[1, 1]).divrem(&Poly::zero()),
            Err(PolyError::DivisionByZero)
        ));
    }

    #[test]
    fn degree_and_trimming() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[0]).is_zero());
    }

    #[test]
    fn eval_and_derivative_agree() {
        let q = p(&[3, -1, 0, 2]);
        let x = Rational::from((3, 2));
        let (v, dv) = q.eval_with_derivative(&x);
        assert_eq!(v, q.eval(&x));
        assert_eq!(dv, q.derivative().eval(&x));
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^2 (x+2)
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], p(&[2, 1]));
        assert_eq!(parts[1], p(&[-1, 1]));
        assert_eq!(f.squarefree_part(), p(&[-2, 1, 1]));
        assert!(!f.is_squarefree());
        assert!(p(&[-2, 1, 1]).is_squarefree());
    }

    #[test]
    fn integer_sign_evaluation() {
        let q = Poly::from_ratios(&[(-1, 3), (0, 1), (1, 2)]); // x^2/2 - 1/3
        for (num, den) in [(0, 1), (1, 1), (-4, 5), (5, 6)] {
            let x = Rational::from((num, den));
            assert_eq!(q.sign_at(&x), q.eval(&x).cmp0());
        }
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[-2, 0, 4]).to_string(), "(4)x^2 - 2");
        assert_eq!(p(&[0, 1, 1]).to_string(), "x^2 + x");
    }
}
