//! Recognition, canonical forms and classification of Dupin cyclides given as
//! Darboux cyclides, exactly over the rationals or in floating point.

pub mod acceptance;
pub mod canonical;
pub mod classify;
pub mod darboux;
pub mod genkit;
pub mod invariants;
pub mod io;
pub mod moebius;
pub mod recognize;
pub mod scalar;

pub use darboux::{DarbouxCoefficients, Degree, EuclideanMotion, Permutation, TriPoly};
pub use scalar::{Mode, Rational, Scalar, TolerancePolicy};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("not a Darboux cyclide: {0}")]
    NotDarboux(String),
    #[error("rotation matrix is not orthogonal")]
    NotOrthogonal,
    #[error("leading coefficient a0 vanishes")]
    NotQuartic,
    #[error("not a Dupin cyclide")]
    NotDupin,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("spectral data matches no class")]
    NoMatch,
    #[error("torus ratio is degenerate")]
    DegenerateRatio,
    #[error("cyclide has no real points")]
    NoRealPoints,
    #[error("J0 formulas disagree: {0}")]
    FormulaDisagreement(String),
    #[error("map is not defined over the reals: {0}")]
    NotRealOverR(String),
    #[error("point is the inversion center")]
    PoleInput,
    #[error("no Mobius convention fits the samples (best residual {0:e})")]
    CalibrationFailed(f64),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}
