//! The integrating factor `K = exp ∫ B / A` of a coefficient pair: closed form,
//! limits on the extended real line, and the interlacing-theorem case it selects.

mod boundary;
mod classify;
mod keval;
mod surd;
mod theorem;

pub use boundary::{
    boundary_zeros, rational_sample_points, sampling_window, smooth_sample_points, BoundarySpec, Candidate,
    CriticalPoint, LimitKind, Pattern, Vanishing,
};
pub use classify::{
    classify, normalize, ClosedForm, IrreducibleFactor, KCase, KClassification, PoleFactor, PowerFactor,
};
pub use keval::{
    check_log_derivative, exact_log_derivative, k_eval, k_eval_rational, log_derivative_fd, log_k_eval, LogDerivativeCheck,
    LogDerivativeSample, FD_STEP, NEGLIGIBLE_LOG_DERIVATIVE, SAMPLES_PER_INTERVAL,
};
pub use surd::{ExtReal, QuadSurd};
pub use theorem::{
    theorem_case, Conclusion, EndpointChoice, HypothesisCheck, HypothesisItem, TheoremCase, TheoremCaseDecision,
};

use crate::dde::DdeError;
use crate::polycore::PolyError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IfError {
    #[error("A is the zero polynomial")]
    ZeroA,
    #[error("K is singular at x = {0}")]
    SingularPoint(f64),
    #[error("no sample points in any smooth interval")]
    NoSamples,
    #[error("no boundary data to decide a case")]
    NoSpecs,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Dde(#[from] DdeError),
}
