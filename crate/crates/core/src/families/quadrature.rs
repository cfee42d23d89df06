//! Adaptive Gauss–Kronrod (7/15) quadrature in double precision.

use super::FamilyError;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_SEGMENTS: usize = 2000;

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let d = h * XGK[i];
        let s = f(c - d) + f(c + d);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    Segment { a, b, value: k * h, error: ((k - g) * h).abs() }
}

/// `∫_a^b f` to relative accuracy `rel_tol` by bisecting the segment with the
/// largest error estimate. `initial` equal pieces seed the subdivision.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64, initial: usize) -> Result<f64, FamilyError> {
    let pieces = initial.max(1);
    let step = (b - a) / pieces as f64;
    let mut segs: Vec<Segment> = (0..pieces)
        .map(|i| {
            let lo = a + step * i as f64;
            let hi = if i + 1 == pieces { b } else { lo + step };
            kronrod(&f, lo, hi)
        })
        .collect();
    loop {
        let total: f64 = segs.iter().map(|s| s.value).sum();
        let err: f64 = segs.iter().map(|s| s.error).sum();
        if !total.is_finite() {
            return Err(FamilyError::Numeric("quadrature produced a non-finite value".into()));
        }
        if err <= rel_tol * total.abs() || err <= f64::MIN_POSITIVE {
            return Ok(total);
        }
        if segs.len() >= MAX_SEGMENTS {
            return Err(FamilyError::Numeric(format!(
                "quadrature did not converge: error estimate {:.2e} for value {:.6e}",
                err, total
            )));
        }
        let (worst, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one segment");
        let s = segs.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            return Err(FamilyError::Numeric("quadrature segment cannot be split further".into()));
        }
        segs.push(kronrod(&f, s.a, mid));
        segs.push(kronrod(&f, mid, s.b));
    }
}

/// `∫_0^∞ f` for a nonnegative integrand that eventually decays faster than any
/// power: the range is cut where `f` drops below `1e-30` of its largest sample.
pub fn integrate_half_line(f: impl Fn(f64) -> f64, rel_tol: f64) -> Result<f64, FamilyError> {
    let mut peak = f(0.0).abs();
    let mut end = 1.0;
    loop {
        let v = f(end).abs();
        peak = peak.max(v).max(f(0.5 * end).abs());
        if v <= 1e-30 * peak || v == 0.0 {
            break;
        }
        end *= 2.0;
        if end > 1e6 {
            return Err(FamilyError::Numeric("integrand does not decay on the half line".into()));
        }
    }
    integrate(f, 0.0, end, rel_tol, 16)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let v = integrate(|x| x.powi(6) - 3.0 * x, 0.0, 2.0, 1e-14, 1).unwrap();
        assert!((v - (128.0 / 7.0 - 6.0)).abs() < 1e-13);
    }

    #[test]
    fn gaussian_half_line() {
        let v = integrate_half_line(|x| (-x * x).exp(), 1e-13).unwrap();
        assert!((v - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-13);
    }

    #[test]
    fn endpoint_singularity_converges() {
        let v = integrate(|x| x.sqrt(), 0.0, 1.0, 1e-12, 1).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-11);
    }
}
