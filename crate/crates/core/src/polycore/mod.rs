//! Exact and extended-precision polynomial arithmetic, Sturm-sequence root
//! isolation and interlacing decisions.

mod companion;
mod interlace;
mod interval;
mod poly;
mod roots;
mod scalar;

pub use companion::{balance, companion_eigenvalues, isolate_float};
pub use interlace::{interlaces, interlaces_float, InterlaceReport, InterlaceVerdict, InterlaceWitness};
pub use interval::{Endpoint, Interval};
pub use poly::Poly;
pub(crate) use roots::{halve, isolate_squarefree};
pub use roots::{
    is_real_simple, isolate_rational, sturm_count, IsolatedRoot, RealSimpleFailure, RootInterval, RootSet,
    SturmChain,
};
pub use scalar::{
    format_rational, parse_rational, BigFloat, Coeff, Scalar, ScalarKind, DEFAULT_FLOAT_PRECISION,
    MIN_FLOAT_PRECISION,
};

use rug::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolyError {
    #[error("scalar kind mismatch: {0}")]
    KindMismatch(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree: {0}")]
    NotSquarefree(String),
    #[error("isolation width must be positive, got {0}")]
    InvalidWidth(String),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("ill-conditioned root finding: {0}")]
    IllConditioned(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("not real-rooted with simple zeros: {0}")]
    NotRealSimple(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Root isolation for each scalar kind: Sturm bisection for rationals,
/// companion eigenvalues plus Newton polishing for floats.
pub trait RootEngine: Coeff {
    fn isolate(p: &Poly<Self>, width: &Self) -> Result<RootSet<Self>, PolyError>;
}

impl RootEngine for Rational {
    fn isolate(p: &Poly<Self>, width: &Self) -> Result<RootSet<Self>, PolyError> {
        isolate_rational(p, width)
    }
}

impl RootEngine for BigFloat {
    fn isolate(p: &Poly<Self>, width: &Self) -> Result<RootSet<Self>, PolyError> {
        isolate_float(p, width)
    }
}

/// Disjoint sorted isolating intervals of the real zeros of `p`, each at most `width` wide.
pub fn isolate_roots<T: RootEngine>(p: &Poly<T>, width: &T) -> Result<RootSet<T>, PolyError> {
    T::isolate(p, width)
}
