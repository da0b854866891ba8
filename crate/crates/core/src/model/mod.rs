//! Domain types, least-squares fitting, covariance estimators and design
//! criteria for the line `y = β0 + β1 x + ε` with interest in `θ = β1/β0`.

mod criterion;
mod fit;
mod matrix;
mod types;

pub use criterion::{criterion_hetero, criterion_homo};
pub(crate) use fit::weighted_line;
pub use fit::{
    fit_least_squares, fit_weighted_least_squares, homo_variance_matrix, pooled_omega, sandwich_variance_matrix,
    sandwich_with_omega, Coefficients, FitResult, OlsProjector,
};
pub use matrix::Sym2;
pub(crate) use types::distinct_count;
pub use types::{Dataset, ExperimentDomain, HFunction, ModelParams, TabulatedScale, VarianceModel};
