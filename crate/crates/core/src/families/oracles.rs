//! Reference polynomials built without the differential-difference recurrence.

use std::sync::{LazyLock, RwLock};

use rug::{Integer, Rational};

use super::{FamilyError, FamilySpec};
use crate::polycore::Poly;

static STIRLING: LazyLock<RwLock<Vec<Vec<Integer>>>> = LazyLock::new(|| RwLock::new(vec![vec![Integer::from(1)]]));

/// Stirling number of the second kind `S(n, k)`, from the memoized triangle
/// `S(n+1, k) = k S(n, k) + S(n, k-1)`.
pub fn stirling2(n: usize, k: usize) -> Result<Integer, FamilyError> {
    if k > n {
        return Err(FamilyError::InvalidParameter(format!("stirling2 needs k <= n, got n = {}, k = {}", n, k)));
    }
    {
        let table = STIRLING.read().unwrap_or_else(|e| e.into_inner());
        if let Some(row) = table.get(n) {
            return Ok(row[k].clone());
        }
    }
    let mut table = STIRLING.write().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n {
        let prev = table.last().expect("table starts with S(0, 0)");
        let m = prev.len();
        let mut row = vec![Integer::new(); m + 1];
        for (j, slot) in row.iter_mut().enumerate() {
            if j < m {
                *slot += Integer::from(&prev[j] * j as u64);
            }
            if j >= 1 {
                *slot += &prev[j - 1];
            }
        }
        table.push(row);
    }
    Ok(table[n][k].clone())
}

/// Rising factorial `(x)_k`.
fn pochhammer(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::from(1);
    for i in 0..k {
        acc *= Rational::from(x + i as u64);
    }
    acc
}

fn hyp2f1_poly(b: &Rational, c: &Rational, n: usize) -> Poly<Rational> {
    let minus_n = Rational::from(-(n as i64));
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut factorial = Rational::from(1);
    for k in 0..=n {
        if k > 0 {
            factorial *= k as u64;
        }
        // (c)_n / (c)_k = (c + k)_{n-k}, which stays defined when (c)_k vanishes
        let tail = pochhammer(&Rational::from(c + k as u64), n - k);
        coeffs.push(pochhammer(&minus_n, k) * pochhammer(b, k) * tail / &factorial);
    }
    Poly::new(coeffs)
}

fn three_term(
    n: usize,
    p1: Poly<Rational>,
    next: impl Fn(usize, &Poly<Rational>, &Poly<Rational>) -> Poly<Rational>,
) -> Poly<Rational> {
    if n == 0 {
        return Poly::one();
    }
    let (mut prev, mut cur) = (Poly::one(), p1);
    for k in 1..n {
        let new = next(k, &cur, &prev);
        prev = std::mem::replace(&mut cur, new);
    }
    cur
}

/// `P_n` of a family by an independent route: Stirling numbers for Bell, the
/// terminating series for the hypergeometric family, and the standard three-term
/// recurrences for Hermite, Laguerre and Jacobi.
pub fn oracle_poly(spec: &FamilySpec, n: usize) -> Result<Poly<Rational>, FamilyError> {
    spec.validate()?;
    let x = Poly::<Rational>::x();
    let c = |v: Rational| Poly::constant(v);
    let poly = match spec {
        FamilySpec::Bell => Poly::new((0..=n).map(|k| stirling2(n, k).map(Rational::from)).collect::<Result<_, _>>()?),
        FamilySpec::Hyp2f1 { b, c } => hyp2f1_poly(b, c, n),
        FamilySpec::Hermite => three_term(n, Poly::from_i64s(&[0, 2]), |k, cur, prev| {
            // H_{k+1} = 2x H_k - 2k H_{k-1}
            &(&Poly::from_i64s(&[0, 2]) * cur) - &prev.scale(&Rational::from(2 * k as i64))
        }),
        FamilySpec::Laguerre { alpha } => {
            let p1 = Poly::new(vec![Rational::from(alpha + 1u32), Rational::from(-1)]);
            three_term(n, p1, |k, cur, prev| {
                // (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}
                let lin = Poly::new(vec![Rational::from(alpha + (2 * k + 1) as u64), Rational::from(-1)]);
                let num = &(&lin * cur) - &prev.scale(&Rational::from(alpha + k as u64));
                num.scale(&Rational::from((1, k as u64 + 1)))
            })
        }
        FamilySpec::Jacobi { alpha, beta } => {
            let s = Rational::from(alpha + beta);
            let p1 = Poly::new(vec![
                Rational::from(alpha - beta) / 2u32,
                Rational::from(&s + 2u32) / 2u32,
            ]);
            three_term(n, p1, |k, cur, prev| {
                let k = Rational::from(k as u64);
                let t = Rational::from(&k * 2u32) + &s;
                let a1 = Rational::from(&k + 1u32) * 2u32 * (Rational::from(&k + &s) + 1u32) * &t;
                let a2 = Rational::from(&t + 1u32)
                    * (Rational::from(alpha * alpha) - Rational::from(beta * beta));
                let a3 = Rational::from(&t + 1u32) * Rational::from(&t + 2u32) * &t;
                let a4 = Rational::from(&k + alpha) * Rational::from(&k + beta) * 2u32 * Rational::from(&t + 2u32);
                let lin = &c(a2) + &x.scale(&a3);
                let num = &(&lin * cur) - &prev.scale(&a4);
                num.scale(&(Rational::from(1) / a1))
            })
        }
        other => return Err(FamilyError::NoOracle(other.name().to_string())),
    };
    Ok(poly)
}
