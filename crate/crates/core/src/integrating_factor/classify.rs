use std::cmp::Ordering;
use std::fmt;

use rug::Rational;

use super::surd::QuadSurd;
use super::IfError;
use crate::dde::CoefficientPair;
use crate::polycore::Poly;

/// Scales `(A, B)` so that `A` is monic; `B / A` and hence `K` are unchanged.
pub fn normalize(c: &CoefficientPair<Rational>) -> Result<CoefficientPair<Rational>, IfError> {
    let lead = c.a().leading().ok_or(IfError::ZeroA)?.clone();
    let inv = Rational::from(1) / lead;
    Ok(CoefficientPair::new(c.a().scale(&inv), c.b().scale(&inv))?)
}

/// Root structure of monic `A` and its coincidences with the root of `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KCase {
    DistinctRootsConstantB,
    EqualRootsConstantB,
    DistinctRootsLinearB,
    EqualRootsLinearB,
    BRootMatchesARoot,
    LinearADistinct,
    LinearAEqual,
    ConstantA,
    IrreducibleQuadraticA,
    /// `A` linear and `B` a nonzero constant
    LinearAConstantB,
    /// `A` and `B` both constant
    ConstantAConstantB,
    /// `B = 0`, so `K = 1`
    ZeroB,
}

impl KCase {
    /// Cases outside the taxonomy of the classification proof.
    pub fn is_extension(self) -> bool {
        matches!(
            self,
            KCase::IrreducibleQuadraticA | KCase::LinearAConstantB | KCase::ConstantAConstantB | KCase::ZeroB
        )
    }

    pub fn tag(self) -> &'static str {
        match self {
            KCase::DistinctRootsConstantB => "distinct-roots-constant-B",
            KCase::EqualRootsConstantB => "equal-roots-constant-B",
            KCase::DistinctRootsLinearB => "distinct-roots-linear-B",
            KCase::EqualRootsLinearB => "equal-roots-linear-B",
            KCase::BRootMatchesARoot => "B-root-matches-A-root",
            KCase::LinearADistinct => "linear-A-distinct",
            KCase::LinearAEqual => "linear-A-equal",
            KCase::ConstantA => "constant-A",
            KCase::IrreducibleQuadraticA => "irreducible-quadratic-A",
            KCase::LinearAConstantB => "linear-A-constant-B",
            KCase::ConstantAConstantB => "constant-A-constant-B",
            KCase::ZeroB => "zero-B",
        }
    }
}

impl fmt::Display for KCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `|x - root|^exponent`
#[derive(Debug, Clone, PartialEq)]
pub struct PowerFactor {
    pub root: QuadSurd,
    pub exponent: QuadSurd,
    /// multiplicity of `root` as a zero of `A`
    pub multiplicity: usize,
}

/// `exp(coefficient / (x - root))`
#[derive(Debug, Clone, PartialEq)]
pub struct PoleFactor {
    pub root: Rational,
    pub coefficient: Rational,
}

/// `((x - center)^2 + width^2)^half_exponent * exp(arc * atan((x - center) / width))`
#[derive(Debug, Clone, PartialEq)]
pub struct IrreducibleFactor {
    pub center: Rational,
    pub width_sq: Rational,
    pub half_exponent: Rational,
    pub arc: QuadSurd,
}

/// `log |K| = quadratic x^2 + linear x + sum of the factor logarithms`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub powers: Vec<PowerFactor>,
    pub pole: Option<PoleFactor>,
    pub quadratic: Rational,
    pub linear: Rational,
    pub irreducible: Option<IrreducibleFactor>,
}

impl ClosedForm {
    fn empty() -> Self {
        ClosedForm { powers: Vec::new(), pole: None, quadratic: Rational::new(), linear: Rational::new(), irreducible: None }
    }

    /// Total power of `|x|` as `x -> ±inf`.
    pub fn power_at_infinity(&self) -> QuadSurd {
        let mut e = QuadSurd::rational(Rational::new());
        for p in &self.powers {
            e = e.add(&p.exponent);
        }
        if let Some(irr) = &self.irreducible {
            e = e.add(&QuadSurd::rational(Rational::from(&irr.half_exponent * 2u32)));
        }
        e
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for p in &self.powers {
            if !p.exponent.is_zero() {
                parts.push(format!("|x - ({})|^({})", p.root, p.exponent));
            }
        }
        let mut exp_terms = Vec::new();
        if self.quadratic.cmp0() != Ordering::Equal {
            exp_terms.push(format!("({})x^2", self.quadratic));
        }
        if self.linear.cmp0() != Ordering::Equal {
            exp_terms.push(format!("({})x", self.linear));
        }
        if let Some(pole) = &self.pole {
            exp_terms.push(format!("({})/(x - ({}))", pole.coefficient, pole.root));
        }
        if let Some(irr) = &self.irreducible {
            parts.push(format!("((x - ({}))^2 + {})^({})", irr.center, irr.width_sq, irr.half_exponent));
            if !irr.arc.is_zero() {
                exp_terms.push(format!("({}) atan((x - ({}))/sqrt({}))", irr.arc, irr.center, irr.width_sq));
            }
        }
        if !exp_terms.is_empty() {
            parts.push(format!("exp({})", exp_terms.join(" + ")));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KClassification {
    pub case: KCase,
    /// normalized pair
    pub a: Poly<Rational>,
    pub b: Poly<Rational>,
    /// larger (or only) root of `A`
    pub lambda: Option<QuadSurd>,
    /// smaller root of `A` when there are two
    pub xi: Option<QuadSurd>,
    /// root of `B` when `B` is linear
    pub mu: Option<Rational>,
    /// leading coefficient of `B` when `B` is linear
    pub kappa: Option<Rational>,
    pub form: ClosedForm,
}

impl KClassification {
    pub fn is_extension(&self) -> bool {
        self.case.is_extension()
    }

    /// `B / A` at `x`, in double precision.
    pub fn log_derivative(&self, x: f64) -> f64 {
        let eval = |p: &Poly<Rational>| p.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64());
        eval(&self.b) / eval(&self.a)
    }
}

/// Classifies `K = exp ∫ B / A` for a pair with nonzero `A`.
pub fn classify(c: &CoefficientPair<Rational>) -> Result<KClassification, IfError> {
    let n = normalize(c)?;
    let a = n.a().clone();
    let b = n.b().clone();
    let b0 = b.coeff(0);
    let b1 = b.coeff(1);
    let linear_b = b1.cmp0() != Ordering::Equal;
    let kappa = linear_b.then(|| b1.clone());
    let mu = linear_b.then(|| Rational::from(-&b0) / &b1);
    let bq = |x: &QuadSurd| x.eval_poly(&b);
    let mut form = ClosedForm::empty();
    let (mut lambda, mut xi) = (None, None);

    if b.is_zero() {
        let roots = real_roots(&a);
        let mult = if roots.len() == 1 && a.degree() == Some(2) { 2 } else { 1 };
        for r in roots {
            form.powers.push(PowerFactor { root: r, exponent: QuadSurd::from_i64(0), multiplicity: mult });
        }
        let mut rs = form.powers.iter().map(|p| p.root.clone());
        lambda = rs.next();
        xi = rs.next();
        if let (Some(l), Some(x)) = (&lambda, &xi) {
            if l.cmp_exact(x) == Ordering::Less {
                std::mem::swap(&mut lambda, &mut xi);
            }
        }
        return Ok(KClassification { case: KCase::ZeroB, a, b, lambda, xi, mu, kappa, form });
    }

    let case = match a.degree() {
        Some(0) => {
            form.quadratic = Rational::from(&b1 / 2u32);
            form.linear = b0.clone();
            if linear_b {
                KCase::ConstantA
            } else {
                KCase::ConstantAConstantB
            }
        }
        Some(1) => {
            let l = -a.coeff(0) ;
            let at_root = QuadSurd::rational(Rational::from(&b1 * &l) + &b0);
            form.linear = b1.clone();
            form.powers.push(PowerFactor { root: QuadSurd::rational(l.clone()), exponent: at_root.clone(), multiplicity: 1 });
            lambda = Some(QuadSurd::rational(l));
            if !linear_b {
                KCase::LinearAConstantB
            } else if at_root.is_zero() {
                KCase::LinearAEqual
            } else {
                KCase::LinearADistinct
            }
        }
        Some(2) => {
            let p = a.coeff(1);
            let q = a.coeff(0);
            let disc = Rational::from(&p * &p) - Rational::from(&q * 4u32);
            let center = Rational::from(-&p) / 2u32;
            match disc.cmp0() {
                Ordering::Greater => {
                    let half_sqrt = QuadSurd::sqrt(disc.clone()).scale(&Rational::from((1, 2)));
                    let l = QuadSurd::rational(center.clone()).add(&half_sqrt);
                    let x = QuadSurd::rational(center).sub(&half_sqrt);
                    let gap = l.sub(&x);
                    let el = bq(&l).div(&gap).expect("distinct roots");
                    let ex = bq(&x).div(&gap.neg()).expect("distinct roots");
                    let matched = el.is_zero() || ex.is_zero();
                    form.powers.push(PowerFactor { root: x.clone(), exponent: ex, multiplicity: 1 });
                    form.powers.push(PowerFactor { root: l.clone(), exponent: el, multiplicity: 1 });
                    lambda = Some(l);
                    xi = Some(x);
                    if !linear_b {
                        KCase::DistinctRootsConstantB
                    } else if matched {
                        KCase::BRootMatchesARoot
                    } else {
                        KCase::DistinctRootsLinearB
                    }
                }
                Ordering::Equal => {
                    let at_root = Rational::from(&b1 * &center) + &b0;
                    form.powers.push(PowerFactor {
                        root: QuadSurd::rational(center.clone()),
                        exponent: QuadSurd::rational(b1.clone()),
                        multiplicity: 2,
                    });
                    if at_root.cmp0() != Ordering::Equal {
                        form.pole = Some(PoleFactor { root: center.clone(), coefficient: -at_root.clone() });
                    }
                    lambda = Some(QuadSurd::rational(center.clone()));
                    xi = lambda.clone();
                    if !linear_b {
                        KCase::EqualRootsConstantB
                    } else if at_root.cmp0() == Ordering::Equal {
                        KCase::BRootMatchesARoot
                    } else {
                        KCase::EqualRootsLinearB
                    }
                }
                Ordering::Less => {
                    let width_sq = Rational::from(-&disc) / 4u32;
                    let at_center = Rational::from(&b1 * &center) + &b0;
                    let arc = QuadSurd::rational(at_center)
                        .div(&QuadSurd::sqrt(width_sq.clone()))
                        .expect("positive width");
                    form.irreducible = Some(IrreducibleFactor {
                        center,
                        width_sq,
                        half_exponent: Rational::from(&b1 / 2u32),
                        arc,
                    });
                    KCase::IrreducibleQuadraticA
                }
            }
        }
        _ => return Err(IfError::ZeroA),
    };
    Ok(KClassification { case, a, b, lambda, xi, mu, kappa, form })
}

/// Real roots of a monic polynomial of degree at most 2, ascending, without repetition.
fn real_roots(a: &Poly<Rational>) -> Vec<QuadSurd> {
    match a.degree() {
        Some(1) => vec![QuadSurd::rational(-a.coeff(0) )],
        Some(2) => {
            let p = a.coeff(1);
            let disc = Rational::from(&p * &p) - Rational::from(&a.coeff(0) * 4u32);
            let center = QuadSurd::rational(Rational::from(-&p) / 2u32);
            match disc.cmp0() {
                Ordering::Greater => {
                    let h = QuadSurd::sqrt(disc).scale(&Rational::from((1, 2)));
                    vec![center.sub(&h), center.add(&h)]
                }
                Ordering::Equal => vec![center],
                Ordering::Less => Vec::new(),
            }
        }
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: &[i64], b: &[i64]) -> CoefficientPair<Rational> {
        CoefficientPair::from_i64s(a, b).unwrap()
    }

    fn r(n: i64) -> QuadSurd {
        QuadSurd::from_i64(n)
    }

    #[test]
    fn normalization() {
        let n = normalize(&pair(&[-2, 0, 2], &[0, 4])).unwrap();
        assert_eq!(n.a(), &Poly::from_i64s(&[-1, 0, 1]));
        assert_eq!(n.b(), &Poly::from_i64s(&[0, 2]));
        let h = normalize(&pair(&[-1], &[0, 2])).unwrap();
        assert_eq!(h.a(), &Poly::from_i64s(&[1]));
        assert_eq!(h.b(), &Poly::from_i64s(&[0, -2]));
        assert_eq!(normalize(&pair(&[], &[0, 1])), Err(IfError::ZeroA));
    }

    #[test]
    fn euler_frobenius_exponents() {
        // kappa (1 - x^2), -2 kappa r x with kappa = 3, r = 5/2
        let c = CoefficientPair::new(
            Poly::from_i64s(&[3, 0, -3]),
            Poly::from_ratios(&[(0, 1), (-15, 1)]),
        )
        .unwrap();
        let k = classify(&c).unwrap();
        assert_eq!(k.case, KCase::DistinctRootsLinearB);
        assert_eq!(k.mu, Some(Rational::new()));
        let half5 = QuadSurd::rational(Rational::from((5, 2)));
        for p in &k.form.powers {
            assert_eq!(p.exponent, half5);
        }
        assert_eq!(k.lambda, Some(r(1)));
        assert_eq!(k.xi, Some(r(-1)));
    }

    #[test]
    fn bell_is_linear_a_equal() {
        let k = classify(&pair(&[0, 1], &[0, 1])).unwrap();
        assert_eq!(k.case, KCase::LinearAEqual);
        assert_eq!(k.kappa, Some(Rational::from(1)));
        assert_eq!(k.mu, Some(Rational::new()));
        assert_eq!(k.form.linear, 1);
        assert!(k.form.powers[0].exponent.is_zero());
    }

    #[test]
    fn constant_a_quadratic_exponent() {
        // A = 1, B = 3 (x - 2): K = exp(3x (x/2 - 2))
        let k = classify(&pair(&[1], &[-6, 3])).unwrap();
        assert_eq!(k.case, KCase::ConstantA);
        assert_eq!(k.form.quadratic, Rational::from((3, 2)));
        assert_eq!(k.form.linear, -6);
        assert_eq!(k.mu, Some(Rational::from(2)));
    }

    #[test]
    fn hypergeometric_exponents() {
        // A = x (1 - x), B = n + c - b x with b = 20, c = 1, n = 3
        let k = classify(&pair(&[0, 1, -1], &[4, -20])).unwrap();
        let at = |root: i64| k.form.powers.iter().find(|p| p.root == r(root)).unwrap().exponent.clone();
        assert_eq!(at(0), r(4));
        assert_eq!(at(1), r(16));
    }

    #[test]
    fn remaining_taxonomy() {
        assert_eq!(classify(&pair(&[-1, 0, 1], &[3])).unwrap().case, KCase::DistinctRootsConstantB);
        let eq = classify(&pair(&[1, -2, 1], &[3])).unwrap();
        assert_eq!(eq.case, KCase::EqualRootsConstantB);
        assert_eq!(eq.form.pole.as_ref().unwrap().coefficient, -3);
        assert_eq!(classify(&pair(&[1, -2, 1], &[0, 2])).unwrap().case, KCase::EqualRootsLinearB);
        assert_eq!(classify(&pair(&[1, -2, 1], &[-2, 2])).unwrap().case, KCase::BRootMatchesARoot);
        assert_eq!(classify(&pair(&[-1, 0, 1], &[-1, 1])).unwrap().case, KCase::BRootMatchesARoot);
        assert_eq!(classify(&pair(&[-1, 1], &[0, 1])).unwrap().case, KCase::LinearADistinct);
        let irr = classify(&pair(&[1, 0, 1], &[1, 2])).unwrap();
        assert_eq!(irr.case, KCase::IrreducibleQuadraticA);
        assert!(irr.is_extension());
        let zero = classify(&pair(&[-4, 0, 1], &[])).unwrap();
        assert_eq!(zero.case, KCase::ZeroB);
        assert_eq!(zero.lambda, Some(r(2)));
        assert_eq!(zero.form.to_string(), "1");
    }

    #[test]
    fn irrational_roots_stay_exact() {
        // A = x^2 - 2, B = x: exponents 1/2 at both roots
        let k = classify(&pair(&[-2, 0, 1], &[0, 1])).unwrap();
        assert_eq!(k.lambda.as_ref().unwrap().to_string(), "sqrt(2)");
        for p in &k.form.powers {
            assert_eq!(p.exponent, QuadSurd::rational(Rational::from((1, 2))));
        }
    }

    #[test]
    fn scaling_invariance() {
        let base = pair(&[2, -3, 1], &[5, 7]);
        let scaled = CoefficientPair::new(
            base.a().scale(&Rational::from((-7, 3))),
            base.b().scale(&Rational::from((-7, 3))),
        )
        .unwrap();
        assert_eq!(classify(&base).unwrap(), classify(&scaled).unwrap());
    }
}
