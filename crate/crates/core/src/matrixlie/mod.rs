//! Numerical verification on `U = SU(n)`.
//!
//! Realizations of `sl(n,R)` and `su(p,q)`, the bivectors `pi_U` and `pi_0`,
//! the Iwasawa action, charts, and the checks that compare all of it with the
//! exact leaf atlas.

pub mod bivector;
pub mod chart;
pub mod checks;
pub mod iwasawa;
pub mod linalg;
pub mod realform;

use num_complex::Complex64;
use thiserror::Error;

pub use bivector::{killing, lambda, root_vectors, PoissonStructure};
pub use chart::{chart_su2, compare_su2, jacobiator, su2_point, ExpChart, SU2_CHART_CONSTANT};
pub use iwasawa::{g_act, iwasawa};
pub use realform::{Kind, MatrixRealForm, SuBasis};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixLieError {
    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("matrix is ill-conditioned (condition number {condition:e})")]
    IllConditioned { condition: f64 },
    #[error("matrix does not have determinant 1 (det = {det})")]
    NotSpecialLinear { det: Complex64 },
    #[error("chart singularity")]
    ChartSingular,
    #[error("no matrix realization shipped for {0}")]
    NoRealization(String),
    #[error("{0} is not Hermitian symmetric with a shipped fit")]
    NotHermitian(String),
    #[error("no representative found: {0}")]
    NoRepresentative(String),
}
