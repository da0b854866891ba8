//! Confidence intervals for `θ = β1/β0`: two delta-method intervals and four
//! percentile bootstraps.
//!
//! Bootstrap replicate `b` always draws from the substream `(seed, b)`, so a
//! replicate stream is a pure function of `(data, method, B, seed)` whatever
//! the thread count.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{
    fit_least_squares, homo_variance_matrix, sandwich_variance_matrix, weighted_line, Dataset, FitResult, OlsProjector,
    Sym2,
};
use crate::rng::{substream, tag, StreamRng};
use crate::stats::{quantile_sorted, sort_ascending, z_two_sided};

pub const DEFAULT_REPLICATES: usize = 5000;
pub const MIN_REPLICATES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    NormalHomo,
    NormalHetero,
    BayesianBootstrap,
    ParametricBootstrap,
    ResidualBootstrap,
    WildBootstrap,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::NormalHomo,
        Method::NormalHetero,
        Method::BayesianBootstrap,
        Method::ParametricBootstrap,
        Method::ResidualBootstrap,
        Method::WildBootstrap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::NormalHomo => "normal-homo",
            Method::NormalHetero => "normal-hetero",
            Method::BayesianBootstrap => "bayes",
            Method::ParametricBootstrap => "param",
            Method::ResidualBootstrap => "resid",
            Method::WildBootstrap => "wild",
        }
    }

    pub fn is_bootstrap(self) -> bool {
        !matches!(self, Method::NormalHomo | Method::NormalHetero)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown interval method '{s}'")))
    }
}

/// Half-width of the delta-method intervals.
///
/// `Variance` is the published construction, `θ̂ ± z·v`, which places the
/// delta-method variance itself after the normal quantile; its intervals are
/// far too narrow and cover rarely. `StdError` is the usual `θ̂ ± z·√v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormalHalfWidth {
    #[default]
    Variance,
    StdError,
}

impl FromStr for NormalHalfWidth {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "variance" => Ok(NormalHalfWidth::Variance),
            "se" => Ok(NormalHalfWidth::StdError),
            _ => Err(Error::invalid(format!("unknown normal half-width '{s}' (variance|se)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalRequest {
    pub method: Method,
    pub alpha: f64,
    pub replicates: usize,
    pub seed: u64,
    pub normal_half_width: NormalHalfWidth,
}

impl IntervalRequest {
    pub fn new(method: Method, alpha: f64, replicates: usize, seed: u64) -> Result<Self> {
        let req = Self { method, alpha, replicates, seed, normal_half_width: NormalHalfWidth::default() };
        req.validate()?;
        Ok(req)
    }

    pub fn with_half_width(mut self, width: NormalHalfWidth) -> Self {
        self.normal_half_width = width;
        self
    }

    pub fn validate(&self) -> Result<()> {
        validate_alpha(self.alpha)?;
        if self.method.is_bootstrap() && self.replicates < MIN_REPLICATES {
            return Err(Error::invalid(format!(
                "bootstrap needs at least {MIN_REPLICATES} replicates, got {}",
                self.replicates
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalEstimate {
    pub lower: f64,
    pub upper: f64,
    pub theta_hat: f64,
    pub method: Method,
    /// Replicates excluded because their refit had `b0 = 0` or a non-finite
    /// ratio. Always zero for the normal intervals.
    pub degenerate_replicates: usize,
    pub replicates: usize,
}

impl IntervalEstimate {
    pub fn contains(&self, theta: f64) -> bool {
        self.lower <= theta && theta <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

fn validate_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    Ok(())
}

fn require_three(data: &Dataset) -> Result<()> {
    if data.len() < 3 {
        return Err(Error::invalid(format!("intervals need at least 3 rows, got {}", data.len())));
    }
    Ok(())
}

/// Delta-method variance `(1/b0²) [-θ̂ 1] V [-θ̂ 1]'`.
pub fn delta_variance(fit: &FitResult, coef_cov: Sym2) -> f64 {
    coef_cov.quad(fit.gradient()) / (fit.b0 * fit.b0)
}

fn normal_interval(fit: &FitResult, v: f64, alpha: f64, width: NormalHalfWidth, method: Method) -> IntervalEstimate {
    let spread = match width {
        NormalHalfWidth::Variance => v,
        NormalHalfWidth::StdError => v.sqrt(),
    };
    let half = z_two_sided(alpha) * spread;
    IntervalEstimate {
        lower: fit.theta_hat - half,
        upper: fit.theta_hat + half,
        theta_hat: fit.theta_hat,
        method,
        degenerate_replicates: 0,
        replicates: 0,
    }
}

pub fn ci_normal_homo(data: &Dataset, alpha: f64) -> Result<IntervalEstimate> {
    ci_normal_homo_with(data, alpha, NormalHalfWidth::default())
}

pub fn ci_normal_homo_with(data: &Dataset, alpha: f64, width: NormalHalfWidth) -> Result<IntervalEstimate> {
    validate_alpha(alpha)?;
    require_three(data)?;
    let fit = fit_least_squares(data)?;
    let v = delta_variance(&fit, homo_variance_matrix(&fit)?);
    Ok(normal_interval(&fit, v, alpha, width, Method::NormalHomo))
}

pub fn ci_normal_hetero(data: &Dataset, alpha: f64) -> Result<IntervalEstimate> {
    ci_normal_hetero_with(data, alpha, NormalHalfWidth::default())
}

pub fn ci_normal_hetero_with(data: &Dataset, alpha: f64, width: NormalHalfWidth) -> Result<IntervalEstimate> {
    validate_alpha(alpha)?;
    require_three(data)?;
    let fit = fit_least_squares(data)?;
    let v = delta_variance(&fit, sandwich_variance_matrix(&fit, data)?);
    Ok(normal_interval(&fit, v, alpha, width, Method::NormalHetero))
}

/// Flat Dirichlet weights as normalised unit exponentials.
pub fn dirichlet_weights(rng: &mut StreamRng, n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= total);
    w
}

fn replicate_rng(seed: u64, b: usize) -> StreamRng {
    substream(seed, &[tag::REPLICATE, b as u64])
}

fn ratio_or_nan(theta: Option<f64>) -> f64 {
    theta.unwrap_or(f64::NAN)
}

/// Bootstrap replicate ratios `θ̂⁽ᵇ⁾`, `b = 0..replicates`, in order.
/// Degenerate replicates are `NaN`.
pub fn bootstrap_replicates(data: &Dataset, method: Method, replicates: usize, seed: u64) -> Result<Vec<f64>> {
    require_three(data)?;
    let fit = fit_least_squares(data)?;
    let xs = data.x();
    let n = data.len();
    let fitted: Vec<f64> = xs.iter().map(|x| fit.b0 + fit.b1 * x).collect();
    let proj = OlsProjector::new(xs)?;

    let values = match method {
        Method::NormalHomo | Method::NormalHetero => {
            return Err(Error::invalid(format!("{method} is not a bootstrap method")));
        }
        Method::BayesianBootstrap => (0..replicates)
            .into_par_iter()
            .map(|b| {
                let w = dirichlet_weights(&mut replicate_rng(seed, b), n);
                ratio_or_nan(weighted_line(xs, data.y(), &w).and_then(|(c, _, _)| c.theta()))
            })
            .collect(),
        Method::ParametricBootstrap => {
            // Noise scale is the regression mean squared error, SSE / (n - 2).
            let sd = (fit.sse() / (n - 2) as f64).sqrt();
            (0..replicates)
                .into_par_iter()
                .map(|b| {
                    let mut rng = replicate_rng(seed, b);
                    let y: Vec<f64> = fitted.iter().map(|m| m + sd * rng.sample::<f64, _>(StandardNormal)).collect();
                    ratio_or_nan(proj.coefficients(&y).theta())
                })
                .collect()
        }
        Method::ResidualBootstrap => (0..replicates)
            .into_par_iter()
            .map(|b| {
                let mut rng = replicate_rng(seed, b);
                let y: Vec<f64> = data.y().iter().map(|y| y + fit.residuals[rng.random_range(0..n)]).collect();
                ratio_or_nan(proj.coefficients(&y).theta())
            })
            .collect(),
        Method::WildBootstrap => (0..replicates)
            .into_par_iter()
            .map(|b| {
                let mut rng = replicate_rng(seed, b);
                let y: Vec<f64> = fitted
                    .iter()
                    .zip(&fit.residuals)
                    .map(|(m, e)| if rng.random::<bool>() { m + e } else { m - e })
                    .collect();
                ratio_or_nan(proj.coefficients(&y).theta())
            })
            .collect(),
    };
    Ok(values)
}

/// Central `1 - alpha` percentile interval of the finite replicates.
/// Returns `(lower, upper, degenerate_count)`.
pub fn percentile_interval(replicates: &[f64], alpha: f64) -> Result<(f64, f64, usize)> {
    validate_alpha(alpha)?;
    let mut finite: Vec<f64> = replicates.iter().copied().filter(|v| v.is_finite()).collect();
    let degenerate = replicates.len() - finite.len();
    if finite.is_empty() {
        return Err(Error::Numeric("every bootstrap replicate was degenerate".into()));
    }
    sort_ascending(&mut finite);
    Ok((quantile_sorted(&finite, alpha / 2.0), quantile_sorted(&finite, 1.0 - alpha / 2.0), degenerate))
}

fn ci_bootstrap(data: &Dataset, req: &IntervalRequest, method: Method) -> Result<IntervalEstimate> {
    req.validate()?;
    let fit = fit_least_squares(data)?;
    let reps = bootstrap_replicates(data, method, req.replicates, req.seed)?;
    let (lower, upper, degenerate) = percentile_interval(&reps, req.alpha)?;
    Ok(IntervalEstimate {
        lower,
        upper,
        theta_hat: fit.theta_hat,
        method,
        degenerate_replicates: degenerate,
        replicates: req.replicates,
    })
}

/// Dirichlet-weighted refits.
pub fn ci_bayesian_bootstrap(data: &Dataset, req: &IntervalRequest) -> Result<IntervalEstimate> {
    ci_bootstrap(data, req, Method::BayesianBootstrap)
}

/// Refits of `b0 + b1 x + N(0, SSE/(n-2))`.
pub fn ci_param_bootstrap(data: &Dataset, req: &IntervalRequest) -> Result<IntervalEstimate> {
    ci_bootstrap(data, req, Method::ParametricBootstrap)
}

/// Refits of `y + e*` where `e*` resamples the residuals with replacement.
/// The resampled residuals are added to the observed responses, not the
/// fitted values.
pub fn ci_residual_bootstrap(data: &Dataset, req: &IntervalRequest) -> Result<IntervalEstimate> {
    ci_bootstrap(data, req, Method::ResidualBootstrap)
}

/// Refits of `b0 + b1 x + δ e` with independent fair signs `δ`.
pub fn ci_wild_bootstrap(data: &Dataset, req: &IntervalRequest) -> Result<IntervalEstimate> {
    ci_bootstrap(data, req, Method::WildBootstrap)
}

/// Dispatches on `req.method`.
pub fn confidence_interval(data: &Dataset, req: &IntervalRequest) -> Result<IntervalEstimate> {
    req.validate()?;
    match req.method {
        Method::NormalHomo => ci_normal_homo_with(data, req.alpha, req.normal_half_width),
        Method::NormalHetero => ci_normal_hetero_with(data, req.alpha, req.normal_half_width),
        m => ci_bootstrap(data, req, m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_point() -> Dataset {
        Dataset::from_rows(&[(1.0, 2.0), (2.0, 3.0), (3.0, 5.0)]).unwrap()
    }

    fn exact_line() -> Dataset {
        Dataset::from_rows(&[(1.0, 3.0), (2.0, 5.0), (3.0, 7.0), (5.0, 11.0)]).unwrap()
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("rows".parse::<Method>().is_err());
    }

    #[test]
    fn request_validation() {
        assert!(IntervalRequest::new(Method::WildBootstrap, 0.05, 99, 1).is_err());
        assert!(IntervalRequest::new(Method::NormalHomo, 0.05, 0, 1).is_ok());
        assert!(IntervalRequest::new(Method::NormalHomo, 1.0, 0, 1).is_err());
        assert!(IntervalRequest::new(Method::NormalHomo, 0.0, 0, 1).is_err());
    }

    #[test]
    fn normal_homo_three_point_by_hand() {
        // s2_e = 1/18, (X'X)^{-1} = [[7/3, -1], [-1, 1/2]], θ̂ = 4.5, b0 = 1/3.
        let g: [f64; 2] = [-4.5, 1.0];
        let quad = 7.0 / 3.0 * g[0] * g[0] + 2.0 * -1.0 * g[0] * g[1] + 0.5 * g[1] * g[1];
        let v: f64 = (1.0 / 18.0) / (1.0 / 9.0) * quad;
        let z = 1.959_963_984_540_054;

        let se = ci_normal_homo_with(&three_point(), 0.05, NormalHalfWidth::StdError).unwrap();
        assert!((se.lower - (4.5 - z * v.sqrt())).abs() < 1e-8);
        assert!((se.upper - (4.5 + z * v.sqrt())).abs() < 1e-8);

        let lit = ci_normal_homo(&three_point(), 0.05).unwrap();
        assert!((lit.lower - (4.5 - z * v)).abs() < 1e-8);
        assert!((lit.upper - (4.5 + z * v)).abs() < 1e-8);
    }

    #[test]
    fn normal_intervals_collapse_without_residuals() {
        for width in [NormalHalfWidth::Variance, NormalHalfWidth::StdError] {
            let a = ci_normal_homo_with(&exact_line(), 0.05, width).unwrap();
            let b = ci_normal_hetero_with(&exact_line(), 0.05, width).unwrap();
            for ci in [a, b] {
                assert!((ci.lower - 2.0).abs() < 1e-12 && (ci.upper - 2.0).abs() < 1e-12);
                assert!((ci.theta_hat - 2.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn normal_requires_three_rows() {
        let d = Dataset::from_rows(&[(1.0, 3.0), (2.0, 5.5)]).unwrap();
        assert!(ci_normal_homo(&d, 0.05).is_err());
    }

    #[test]
    fn bootstraps_collapse_on_exact_line() {
        for m in
            [Method::BayesianBootstrap, Method::ParametricBootstrap, Method::ResidualBootstrap, Method::WildBootstrap]
        {
            let req = IntervalRequest::new(m, 0.05, 200, 3).unwrap();
            let ci = confidence_interval(&exact_line(), &req).unwrap();
            assert!((ci.upper - ci.lower).abs() < 1e-12, "{m}: {ci:?}");
            assert!((ci.lower - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dirichlet_weights_normalised() {
        let mut rng = substream(11, &[0]);
        for n in [3, 10, 24] {
            let w = dirichlet_weights(&mut rng, n);
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(w.iter().all(|v| *v > 0.0));
        }
    }

    #[test]
    fn percentile_counts_degenerates() {
        let (lo, hi, bad) = percentile_interval(&[1.0, f64::NAN, 3.0, 2.0], 0.5).unwrap();
        assert_eq!(bad, 1);
        assert_eq!((lo, hi), (1.5, 2.5));
        assert!(percentile_interval(&[f64::NAN], 0.05).is_err());
    }
}
