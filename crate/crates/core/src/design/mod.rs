//! Variance-minimising allocations: the closed-form two-point design for
//! homoskedastic errors and a multi-start simplex search for
//! heteroskedastic ones.

pub mod nelder_mead;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{criterion_hetero, ExperimentDomain, HFunction};
use crate::rng::{substream, tag};
use nelder_mead::{default_simplex, minimize, Minimum, StopRule};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportPoint {
    pub x: f64,
    pub count: usize,
}

/// A design: support points with replication counts.
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation {
    support: Vec<SupportPoint>,
}

impl Allocation {
    pub fn new(support: Vec<SupportPoint>, domain: &ExperimentDomain) -> Result<Self> {
        if let Some(p) = support.iter().find(|p| p.count == 0 || !domain.contains(p.x)) {
            return Err(Error::invalid(format!(
                "support point {} (count {}) outside [{}, {}] or empty",
                p.x,
                p.count,
                domain.x_min(),
                domain.x_max()
            )));
        }
        let total: usize = support.iter().map(|p| p.count).sum();
        if total != domain.n() {
            return Err(Error::invalid(format!("counts sum to {total}, domain has n = {}", domain.n())));
        }
        Ok(Self { support })
    }

    /// Groups equal coordinates of a point list, in ascending order.
    pub fn from_points(xs: &[f64], domain: &ExperimentDomain) -> Result<Self> {
        let mut sorted = xs.to_vec();
        sorted.sort_by(|a, b| a.total_cmp(b));
        let mut support: Vec<SupportPoint> = Vec::new();
        for x in sorted {
            match support.last_mut() {
                Some(p) if p.x == x => p.count += 1,
                _ => support.push(SupportPoint { x, count: 1 }),
            }
        }
        Self::new(support, domain)
    }

    pub fn support(&self) -> &[SupportPoint] {
        &self.support
    }

    pub fn n(&self) -> usize {
        self.support.iter().map(|p| p.count).sum()
    }

    /// Every run's `x`, in support order.
    pub fn points(&self) -> Vec<f64> {
        self.support.iter().flat_map(|p| std::iter::repeat_n(p.x, p.count)).collect()
    }

    pub fn count_at(&self, x: f64) -> usize {
        self.support.iter().filter(|p| p.x == x).map(|p| p.count).sum()
    }
}

/// Options for the heteroskedastic multi-start search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub random_starts: usize,
    /// `None` means `500 * n`.
    pub max_iterations: Option<usize>,
    pub simplex_tolerance: f64,
    pub rng_seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { random_starts: 50, max_iterations: None, simplex_tolerance: 1e-10, rng_seed: 0 }
    }
}

impl SearchOptions {
    fn stop_rule(&self, dim: usize) -> Result<StopRule> {
        if !(self.simplex_tolerance > 0.0) {
            return Err(Error::invalid("simplex tolerance must be positive"));
        }
        let max_iterations = self.max_iterations.unwrap_or(500 * dim);
        if max_iterations == 0 {
            return Err(Error::invalid("max iterations must be positive"));
        }
        Ok(StopRule { max_iterations, tolerance: self.simplex_tolerance })
    }
}

/// Optimal fraction of runs at `x_min`:
/// `(1 + θ₀ x_max) / (2 + θ₀ (x_min + x_max))`.
pub fn rho_star(theta0: f64, domain: &ExperimentDomain) -> Result<f64> {
    if !(theta0 >= 0.0 && theta0.is_finite()) {
        return Err(Error::invalid(format!("theta0 must be finite and >= 0, got {theta0}")));
    }
    Ok((1.0 + theta0 * domain.x_max()) / (2.0 + theta0 * (domain.x_min() + domain.x_max())))
}

/// Runs at `x_min` in the closed-form design: `round(ρ* n)` clamped to
/// `[1, n - 1]`, rounding halves away from zero.
pub fn count_at_min(theta0: f64, domain: &ExperimentDomain) -> Result<usize> {
    let n = domain.n();
    let raw = (rho_star(theta0, domain)? * n as f64).round() as usize;
    Ok(raw.max(1).min(n - 1))
}

pub fn optimal_design_homo(domain: &ExperimentDomain, theta0: f64) -> Result<Allocation> {
    let at_min = count_at_min(theta0, domain)?;
    Allocation::new(
        vec![
            SupportPoint { x: domain.x_min(), count: at_min },
            SupportPoint { x: domain.x_max(), count: domain.n() - at_min },
        ],
        domain,
    )
}

/// Unconstrained Nelder–Mead from `start` with the default initial simplex.
pub fn nelder_mead<F>(objective: F, start: &[f64], opts: &SearchOptions) -> Result<Minimum>
where
    F: Fn(&[f64]) -> f64,
{
    let rule = opts.stop_rule(start.len())?;
    minimize(objective, default_simplex(start), rule)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeteroDesign {
    /// Design points, ascending.
    pub xs: Vec<f64>,
    pub criterion: f64,
    /// Number of starts the search ran from.
    pub starts: usize,
}

/// Starting points: the even design, every endpoint-only split, then
/// `random_starts` uniform draws from the box.
pub fn hetero_start_points(domain: &ExperimentDomain, opts: &SearchOptions) -> Vec<Vec<f64>> {
    let n = domain.n();
    let mut starts = vec![domain.even_spacing()];
    for k in 1..n {
        let mut v = vec![domain.x_min(); k];
        v.resize(n, domain.x_max());
        starts.push(v);
    }
    for r in 0..opts.random_starts {
        let mut rng = substream(opts.rng_seed, &[tag::START, r as u64]);
        starts.push((0..n).map(|_| rng.random_range(domain.x_min()..=domain.x_max())).collect());
    }
    starts
}

/// Simplex whose edges point from the start into the box, `width / 10`
/// long, so starts sitting on a face still explore.
fn inward_simplex(start: &[f64], domain: &ExperimentDomain) -> Vec<Vec<f64>> {
    let step = domain.width() / 10.0;
    let mut simplex = vec![start.to_vec()];
    for i in 0..start.len() {
        let mut v = start.to_vec();
        v[i] = if v[i] + step <= domain.x_max() { v[i] + step } else { v[i] - step };
        simplex.push(v);
    }
    simplex
}

/// Multi-start search of `[x_min, x_max]^n` for the design minimising
/// [`criterion_hetero`]. Coordinates are clamped into the box inside the
/// objective. Starts run in parallel on independent substreams; the result
/// does not depend on scheduling.
pub fn optimal_design_hetero(
    domain: &ExperimentDomain,
    theta0: f64,
    h: &HFunction,
    opts: &SearchOptions,
) -> Result<HeteroDesign> {
    if !(theta0 >= 0.0 && theta0.is_finite()) {
        return Err(Error::invalid(format!("theta0 must be finite and >= 0, got {theta0}")));
    }
    h.validate_on(domain.x_min(), domain.x_max())?;
    let rule = opts.stop_rule(domain.n())?;
    let clamp = |v: &[f64]| -> Vec<f64> { v.iter().map(|&x| domain.clamp(x)).collect() };
    let objective = |v: &[f64]| criterion_hetero(&clamp(v), theta0, h).unwrap_or(f64::INFINITY);

    let starts = hetero_start_points(domain, opts);
    let results: Vec<Option<Minimum>> =
        starts.par_iter().map(|s| minimize(objective, inward_simplex(s, domain), rule).ok()).collect();

    let best = results
        .into_iter()
        .flatten()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .ok_or_else(|| Error::Numeric("no start produced a finite criterion".into()))?;
    let mut xs = clamp(&best.x);
    xs.sort_by(|a, b| a.total_cmp(b));
    Ok(HeteroDesign { xs, criterion: best.value, starts: starts.len() })
}
