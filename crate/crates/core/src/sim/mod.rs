//! Seeded Monte Carlo studies of the ratio estimator under the straight-line
//! model: single-design distributions, design bake-offs, robustness to the
//! prior guess, interval coverage and efficiency loss of published setups.
//!
//! Replicate `r` of a simulation always draws its errors from the substream
//! `(seed, r)`. Designs compared within one call therefore see common random
//! numbers, and results are identical for any worker count.

mod studies;

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::design::{count_at_min, optimal_design_homo, rho_star};
use crate::error::{Error, Result};
use crate::inference::{confidence_interval, IntervalRequest, Method, NormalHalfWidth};
use crate::model::{distinct_count, Dataset, ExperimentDomain, ModelParams, OlsProjector};
use crate::rng::{derive_seed, substream, tag};
use crate::stats::{mean, quantile_sorted, sample_variance, sort_ascending};

pub use studies::{prior_studies, prior_study, PriorStudy};

pub const MIN_SIMULATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErrorDistribution {
    #[default]
    Normal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub params: ModelParams,
    pub design: Vec<f64>,
    pub n_sim: usize,
    pub seed: u64,
    pub error_distribution: ErrorDistribution,
}

impl SimConfig {
    pub fn new(params: ModelParams, design: Vec<f64>, n_sim: usize, seed: u64) -> Result<Self> {
        let cfg = Self { params, design, n_sim, seed, error_distribution: ErrorDistribution::Normal };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.n_sim < MIN_SIMULATIONS {
            return Err(Error::invalid(format!("need at least {MIN_SIMULATIONS} simulations, got {}", self.n_sim)));
        }
        if let Some(x) = self.design.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return Err(Error::invalid(format!("design points must be positive, got {x}")));
        }
        if distinct_count(&self.design) < 2 {
            return Err(Error::SingularDesign);
        }
        Ok(())
    }
}

/// Summary of a simulated `θ̂` distribution over its finite replicates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSummary {
    pub median: f64,
    pub mean: f64,
    /// Sample standard deviation of `θ̂`.
    pub stderr: f64,
    pub q01: f64,
    pub q25: f64,
    pub q75: f64,
    pub q99: f64,
    /// `q99 - q01`.
    pub intercentile_range: f64,
    pub samples_retained: usize,
    pub degenerate_count: usize,
}

impl SimSummary {
    pub fn variance(&self) -> f64 {
        self.stderr * self.stderr
    }
}

/// Raw replicate ratios of one simulation; degenerate replicates removed
/// and counted.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaSamples {
    pub thetas: Vec<f64>,
    pub degenerate_count: usize,
}

impl ThetaSamples {
    pub fn summary(&self) -> Result<SimSummary> {
        if self.thetas.is_empty() {
            return Err(Error::Numeric("every simulated replicate was degenerate".into()));
        }
        let mut sorted = self.thetas.clone();
        sort_ascending(&mut sorted);
        let q01 = quantile_sorted(&sorted, 0.01);
        let q99 = quantile_sorted(&sorted, 0.99);
        Ok(SimSummary {
            median: quantile_sorted(&sorted, 0.5),
            mean: mean(&self.thetas),
            stderr: sample_variance(&self.thetas).sqrt(),
            q01,
            q25: quantile_sorted(&sorted, 0.25),
            q75: quantile_sorted(&sorted, 0.75),
            q99,
            intercentile_range: q99 - q01,
            samples_retained: self.thetas.len(),
            degenerate_count: self.degenerate_count,
        })
    }
}

/// One simulated response vector for `design` from substream `(seed, key)`.
fn simulate_responses(params: &ModelParams, design: &[f64], seed: u64, key: &[u64]) -> Vec<f64> {
    let mut rng = substream(seed, key);
    design
        .iter()
        .map(|&x| {
            let eps: f64 = rng.sample(StandardNormal);
            params.beta0 + params.beta1() * x + params.variance.sigma_at(x) * eps
        })
        .collect()
}

pub fn simulate_theta_samples(cfg: &SimConfig) -> Result<ThetaSamples> {
    cfg.validate()?;
    let proj = OlsProjector::new(&cfg.design)?;
    let raw: Vec<Option<f64>> = (0..cfg.n_sim)
        .into_par_iter()
        .map(|r| {
            let y = simulate_responses(&cfg.params, &cfg.design, cfg.seed, &[tag::REPLICATE, r as u64]);
            proj.coefficients(&y).theta()
        })
        .collect();
    let thetas: Vec<f64> = raw.iter().flatten().copied().collect();
    Ok(ThetaSamples { degenerate_count: raw.len() - thetas.len(), thetas })
}

pub fn simulate_theta_distribution(cfg: &SimConfig) -> Result<SimSummary> {
    simulate_theta_samples(cfg)?.summary()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BakeoffReport {
    pub a: SimSummary,
    pub b: SimSummary,
    /// `a / b` ratios.
    pub intercentile_ratio: f64,
    pub stderr_ratio: f64,
    pub variance_ratio: f64,
}

/// Simulates both designs under the same parameters and seed and compares
/// their `θ̂` spreads.
pub fn design_bakeoff(
    design_a: &[f64],
    design_b: &[f64],
    params: &ModelParams,
    n_sim: usize,
    seed: u64,
) -> Result<BakeoffReport> {
    let a = simulate_theta_distribution(&SimConfig::new(params.clone(), design_a.to_vec(), n_sim, seed)?)?;
    let b = simulate_theta_distribution(&SimConfig::new(params.clone(), design_b.to_vec(), n_sim, seed)?)?;
    Ok(BakeoffReport {
        intercentile_ratio: a.intercentile_range / b.intercentile_range,
        stderr_ratio: a.stderr / b.stderr,
        variance_ratio: a.variance() / b.variance(),
        a,
        b,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobustnessRow {
    pub theta0: f64,
    pub rho_star: f64,
    pub count_at_min: usize,
    pub intercentile_range: f64,
    /// Percentage by which this design's intercentile range exceeds that of
    /// the design built at the true θ.
    pub error_pct: f64,
}

/// `count` log-spaced values from `lo` to `hi`, both included.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && count >= 2) {
        return Err(Error::invalid("log grid needs 0 < lo < hi and at least two points"));
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..count)
        .map(|i| match i {
            0 => lo,
            _ if i == count - 1 => hi,
            _ => (a + (b - a) * i as f64 / (count - 1) as f64).exp(),
        })
        .collect())
}

/// Default robustness grid: 500 log-spaced guesses from θ/50 to 20θ.
pub fn default_theta0_grid(theta_true: f64) -> Result<Vec<f64>> {
    log_grid(theta_true / 50.0, theta_true * 20.0, 500)
}

/// Cost of designing with a wrong guess: for each `θ₀` in the grid, the
/// closed-form design is simulated under `theta_true` (replacing
/// `params.theta`) and its intercentile range compared with the design
/// built at `theta_true`. Grid points sharing an allocation share one
/// simulation.
pub fn robustness_curve(
    theta_true: f64,
    theta0_grid: &[f64],
    domain: &ExperimentDomain,
    params: &ModelParams,
    n_sim_per_point: usize,
    seed: u64,
) -> Result<Vec<RobustnessRow>> {
    if theta0_grid.is_empty() {
        return Err(Error::invalid("theta0 grid is empty"));
    }
    let truth = params.with_theta(theta_true);
    truth.validate()?;
    let reference_k = count_at_min(theta_true, domain)?;
    let counts: Vec<usize> = theta0_grid.iter().map(|&t| count_at_min(t, domain)).collect::<Result<_>>()?;

    let mut distinct: Vec<usize> = counts.clone();
    distinct.push(reference_k);
    distinct.sort_unstable();
    distinct.dedup();
    let spreads: BTreeMap<usize, f64> = distinct
        .par_iter()
        .map(|&k| {
            let mut design = vec![domain.x_min(); k];
            design.resize(domain.n(), domain.x_max());
            let cfg = SimConfig::new(truth.clone(), design, n_sim_per_point, seed)?;
            Ok((k, simulate_theta_distribution(&cfg)?.intercentile_range))
        })
        .collect::<Result<_>>()?;

    let reference = spreads[&reference_k];
    theta0_grid
        .iter()
        .zip(counts)
        .map(|(&theta0, k)| {
            Ok(RobustnessRow {
                theta0,
                rho_star: rho_star(theta0, domain)?,
                count_at_min: k,
                intercentile_range: spreads[&k],
                error_pct: 100.0 * (spreads[&k] / reference - 1.0),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageReport {
    pub method: Method,
    /// Fraction of simulated datasets whose interval contains the true θ.
    pub coverage: f64,
    pub mean_lower: f64,
    pub mean_upper: f64,
    pub mean_width: f64,
    pub n_sim: usize,
    /// Datasets for which no interval could be formed (counted as misses).
    pub failed: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageSettings {
    pub alpha: f64,
    pub n_sim: usize,
    pub replicates: usize,
    pub seed: u64,
    pub normal_half_width: NormalHalfWidth,
}

/// Coverage of one interval method over `n_sim` datasets simulated on
/// `design`. Dataset `i` uses substream `(seed, i)`; its bootstrap seed is
/// derived from the same pair.
pub fn coverage_study(
    method: Method,
    design: &[f64],
    params: &ModelParams,
    settings: &CoverageSettings,
) -> Result<CoverageReport> {
    let check = SimConfig::new(params.clone(), design.to_vec(), settings.n_sim, settings.seed)?;
    let replicates = if method.is_bootstrap() { settings.replicates } else { 0 };
    IntervalRequest::new(method, settings.alpha, replicates, 0)?;

    let outcomes: Vec<Option<(f64, f64)>> = (0..settings.n_sim)
        .into_par_iter()
        .map(|i| {
            let y = simulate_responses(&check.params, design, settings.seed, &[tag::DATASET, i as u64]);
            let data = Dataset::new(design.to_vec(), y).ok()?;
            let req = IntervalRequest {
                method,
                alpha: settings.alpha,
                replicates,
                seed: derive_seed(settings.seed, &[tag::INTERVAL, i as u64]),
                normal_half_width: settings.normal_half_width,
            };
            confidence_interval(&data, &req).ok().map(|ci| (ci.lower, ci.upper))
        })
        .collect();

    let formed: Vec<(f64, f64)> = outcomes.iter().flatten().copied().collect();
    let covered = formed.iter().filter(|(lo, hi)| *lo <= params.theta && params.theta <= *hi).count();
    let k = formed.len().max(1) as f64;
    let mean_lower = formed.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_upper = formed.iter().map(|p| p.1).sum::<f64>() / k;
    Ok(CoverageReport {
        method,
        coverage: covered as f64 / settings.n_sim as f64,
        mean_lower,
        mean_upper,
        mean_width: formed.iter().map(|p| p.1 - p.0).sum::<f64>() / k,
        n_sim: settings.n_sim,
        failed: settings.n_sim - formed.len(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LossReport {
    pub study_id: usize,
    pub runs: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub optimal_count_at_min: usize,
    pub study_stderr: f64,
    pub optimal_stderr: f64,
    /// Percentage increase of the study design's `θ̂` standard error over
    /// the closed-form optimal design on the study's own ratio range.
    pub loss_pct: f64,
}

/// Efficiency loss of a published setup. The optimal counterpart is built
/// at `theta0_for_design` on `[min ratio, max ratio]` with the study's run
/// count; both designs are simulated under `params` with the same seed.
pub fn efficiency_loss(
    study: &PriorStudy,
    params: &ModelParams,
    theta0_for_design: f64,
    n_sim: usize,
    seed: u64,
) -> Result<LossReport> {
    let design = study.design();
    let domain = ExperimentDomain::new(study.x_min(), study.x_max(), design.len())?;
    let optimal = optimal_design_homo(&domain, theta0_for_design)?;
    let report = design_bakeoff(&design, &optimal.points(), params, n_sim, seed)?;
    Ok(LossReport {
        study_id: study.id,
        runs: design.len(),
        x_min: domain.x_min(),
        x_max: domain.x_max(),
        optimal_count_at_min: optimal.count_at(domain.x_min()),
        study_stderr: report.a.stderr,
        optimal_stderr: report.b.stderr,
        loss_pct: 100.0 * (report.stderr_ratio - 1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(sigma: f64) -> ModelParams {
        ModelParams::homoskedastic(3.9e-9, 0.053, sigma).unwrap()
    }

    fn optimal() -> Vec<f64> {
        let mut d = vec![1.0 / 3.0; 7];
        d.extend([19.0; 3]);
        d
    }

    #[test]
    fn zero_sigma_returns_truth() {
        let cfg = SimConfig::new(params(0.0), optimal(), 200, 1).unwrap();
        let s = simulate_theta_distribution(&cfg).unwrap();
        assert!((s.median - 0.053).abs() < 1e-12);
        assert!(s.intercentile_range.abs() < 1e-12);
    }

    #[test]
    fn sample_accounting() {
        let cfg = SimConfig::new(params(3.2e-10), optimal(), 500, 2).unwrap();
        let s = simulate_theta_samples(&cfg).unwrap();
        assert_eq!(s.thetas.len() + s.degenerate_count, 500);
        let sum = s.summary().unwrap();
        assert!(sum.q01 <= sum.median && sum.median <= sum.q99);
    }

    #[test]
    fn config_validation() {
        assert!(SimConfig::new(params(1e-10), optimal(), 50, 1).is_err());
        assert!(matches!(SimConfig::new(params(1e-10), vec![2.0; 5], 100, 1), Err(Error::SingularDesign)));
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(0.001, 1.0, 4).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g[0], 0.001);
        assert_eq!(g[3], 1.0);
        assert!((g[1] - 0.01).abs() < 1e-15);
    }
}
