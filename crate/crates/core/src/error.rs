use alloc::string::String;

use crate::lie::RootKind;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    Dimension {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("non-regular point: root {root} takes value {value:e}")]
    Regularity { root: RootKind, value: f64 },
    #[error("constraint xi_l_M + xi_r_M = 0 violated (residual {residual:e})")]
    Constraint { residual: f64 },
    #[error("orbit consistency condition violated: {inequality}")]
    Consistency { inequality: String },
    #[error("factorization failed: {0}")]
    Factorization(String),
    #[error("least-squares fit is ill-conditioned (condition number {condition:e})")]
    IllConditioned { condition: f64 },
    #[error("finite-difference step too small: step-halving estimates differ by {disagreement:e}")]
    StepTooSmall { disagreement: f64 },
    #[error("analytic force disagrees with finite differences by {deviation:e}")]
    ForceCheck { deviation: f64 },
    #[error("trajectory time grids differ")]
    GridMismatch,
    #[error("iteration did not converge: {0}")]
    NoConvergence(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
