use crate::error::{Error, Result};

/// Admissible gas/liquid ratio interval and run count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentDomain {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl ExperimentDomain {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) {
            return Err(Error::invalid("domain bounds must be finite"));
        }
        if !(x_min > 0.0 && x_min < x_max) {
            return Err(Error::invalid(format!("domain requires 0 < x_min < x_max, got [{x_min}, {x_max}]")));
        }
        if n < 2 {
            return Err(Error::invalid(format!("domain requires n >= 2, got {n}")));
        }
        Ok(Self { x_min, x_max, n })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.x_min && x <= self.x_max
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.x_min, self.x_max)
    }

    /// `n` equally spaced points from `x_min` to `x_max`, both included.
    pub fn even_spacing(&self) -> Vec<f64> {
        let step = self.width() / (self.n - 1) as f64;
        (0..self.n).map(|i| if i == self.n - 1 { self.x_max } else { self.x_min + step * i as f64 }).collect()
    }
}

/// Piecewise-linear relative error scale given at strictly increasing knots.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedScale {
    xs: Vec<f64>,
    rel_sigma: Vec<f64>,
}

impl TabulatedScale {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::invalid("tabulated h needs at least two points"));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::invalid(format!(
                    "tabulated h x values must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        if let Some(&(x, s)) = points.iter().find(|(x, s)| !(x.is_finite() && *s > 0.0 && s.is_finite())) {
            return Err(Error::invalid(format!(
                "tabulated h needs finite x and positive relative sigma, got ({x}, {s})"
            )));
        }
        let (xs, rel_sigma) = points.into_iter().unzip();
        Ok(Self { xs, rel_sigma })
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.rel_sigma.iter().copied())
    }

    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        self.xs[0] <= lo && *self.xs.last().unwrap() >= hi
    }

    /// Linear interpolation; flat beyond the end knots.
    pub fn eval(&self, x: f64) -> f64 {
        let last = self.xs.len() - 1;
        if x <= self.xs[0] {
            return self.rel_sigma[0];
        }
        if x >= self.xs[last] {
            return self.rel_sigma[last];
        }
        let hi = self.xs.partition_point(|&k| k <= x);
        let lo = hi - 1;
        let t = (x - self.xs[lo]) / (self.xs[hi] - self.xs[lo]);
        self.rel_sigma[lo] + t * (self.rel_sigma[hi] - self.rel_sigma[lo])
    }
}

/// Relative error standard deviation as a function of `x`, known up to a
/// constant factor.
#[derive(Debug, Clone, PartialEq)]
pub enum HFunction {
    /// `x^gamma`.
    PowerLaw {
        gamma: f64,
    },
    Tabulated(TabulatedScale),
}

impl HFunction {
    pub fn constant() -> Self {
        HFunction::PowerLaw { gamma: 0.0 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            HFunction::PowerLaw { gamma } => {
                if *gamma == 0.0 {
                    1.0
                } else {
                    x.powf(*gamma)
                }
            }
            HFunction::Tabulated(t) => t.eval(x),
        }
    }

    /// Checks that `h` is usable on `[lo, hi]`.
    pub fn validate_on(&self, lo: f64, hi: f64) -> Result<()> {
        match self {
            HFunction::PowerLaw { gamma } if !gamma.is_finite() => {
                Err(Error::invalid("power-law exponent must be finite"))
            }
            HFunction::PowerLaw { .. } => Ok(()),
            HFunction::Tabulated(t) if !t.covers(lo, hi) => {
                Err(Error::invalid(format!("tabulated h must cover [{lo}, {hi}]")))
            }
            HFunction::Tabulated(_) => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum VarianceModel {
    Homoskedastic { sigma: f64 },
    Heteroskedastic { sigma: f64, h: HFunction },
}

impl VarianceModel {
    pub fn sigma(&self) -> f64 {
        match self {
            VarianceModel::Homoskedastic { sigma } | VarianceModel::Heteroskedastic { sigma, .. } => *sigma,
        }
    }

    /// Error standard deviation at `x`.
    pub fn sigma_at(&self, x: f64) -> f64 {
        match self {
            VarianceModel::Homoskedastic { sigma } => *sigma,
            VarianceModel::Heteroskedastic { sigma, h } => sigma * h.eval(x),
        }
    }

    /// The relative scale; homoskedastic models map to `PowerLaw(0)`.
    pub fn h(&self) -> HFunction {
        match self {
            VarianceModel::Homoskedastic { .. } => HFunction::constant(),
            VarianceModel::Heteroskedastic { h, .. } => h.clone(),
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let sigma = self.sigma();
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::invalid(format!("sigma must be finite and >= 0, got {sigma}")));
        }
        if let VarianceModel::Heteroskedastic { h: HFunction::PowerLaw { gamma }, .. } = self {
            if !gamma.is_finite() {
                return Err(Error::invalid("power-law exponent must be finite"));
            }
        }
        Ok(())
    }
}

/// Generative model parameters. The slope is `theta * beta0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub beta0: f64,
    pub theta: f64,
    pub variance: VarianceModel,
}

impl ModelParams {
    pub fn new(beta0: f64, theta: f64, variance: VarianceModel) -> Result<Self> {
        let p = Self { beta0, theta, variance };
        p.validate()?;
        Ok(p)
    }

    pub fn homoskedastic(beta0: f64, theta: f64, sigma: f64) -> Result<Self> {
        Self::new(beta0, theta, VarianceModel::Homoskedastic { sigma })
    }

    pub fn beta1(&self) -> f64 {
        self.theta * self.beta0
    }

    pub fn with_theta(&self, theta: f64) -> Self {
        Self { theta, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.beta0 == 0.0 || !self.beta0.is_finite() {
            return Err(Error::invalid("beta0 must be finite and non-zero"));
        }
        if !self.theta.is_finite() {
            return Err(Error::invalid("theta must be finite"));
        }
        self.variance.validate()
    }
}

/// Measured `(x, y)` pairs, in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl Dataset {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::invalid(format!("x and y lengths differ ({} vs {})", x.len(), y.len())));
        }
        if x.len() < 2 {
            return Err(Error::invalid("dataset needs at least two rows"));
        }
        if let Some(i) = x.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::invalid(format!("row {}: x must be positive, got {}", i + 1, x[i])));
        }
        if let Some(i) = y.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("row {}: y must be finite", i + 1)));
        }
        if distinct_count(&x) < 2 {
            return Err(Error::SingularDesign);
        }
        Ok(Self { x, y })
    }

    pub fn from_rows(rows: &[(f64, f64)]) -> Result<Self> {
        let (x, y) = rows.iter().copied().unzip();
        Self::new(x, y)
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.x.iter().copied().zip(self.y.iter().copied())
    }
}

pub(crate) fn distinct_count(xs: &[f64]) -> usize {
    let mut sorted = xs.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    sorted.dedup();
    sorted.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_invariants() {
        assert!(ExperimentDomain::new(1.0, 2.0, 2).is_ok());
        assert!(ExperimentDomain::new(0.0, 2.0, 4).is_err());
        assert!(ExperimentDomain::new(2.0, 2.0, 4).is_err());
        assert!(ExperimentDomain::new(1.0, 2.0, 1).is_err());
    }

    #[test]
    fn even_spacing_includes_endpoints() {
        let d = ExperimentDomain::new(1.0 / 3.0, 19.0, 10).unwrap();
        let xs = d.even_spacing();
        assert_eq!(xs.len(), 10);
        assert_eq!(xs[0], 1.0 / 3.0);
        assert_eq!(xs[9], 19.0);
    }

    #[test]
    fn tabulated_interpolates_linearly() {
        let t = TabulatedScale::new(vec![(1.0, 1.0), (3.0, 2.0), (5.0, 4.0)]).unwrap();
        assert_eq!(t.eval(1.0), 1.0);
        assert_eq!(t.eval(2.0), 1.5);
        assert_eq!(t.eval(4.0), 3.0);
        assert_eq!(t.eval(5.0), 4.0);
        assert!(t.covers(1.0, 5.0));
        assert!(!t.covers(0.5, 5.0));
    }

    #[test]
    fn tabulated_rejects_bad_knots() {
        assert!(TabulatedScale::new(vec![(1.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(TabulatedScale::new(vec![(1.0, 1.0), (2.0, 0.0)]).is_err());
        assert!(TabulatedScale::new(vec![(1.0, 1.0)]).is_err());
    }

    #[test]
    fn homoskedastic_is_power_law_zero() {
        let homo = VarianceModel::Homoskedastic { sigma: 2.0 };
        let het = VarianceModel::Heteroskedastic { sigma: 2.0, h: HFunction::PowerLaw { gamma: 0.0 } };
        for x in [0.1, 1.0, 7.5, 300.0] {
            assert_eq!(homo.sigma_at(x), het.sigma_at(x));
        }
        assert_eq!(homo.h(), HFunction::constant());
    }

    #[test]
    fn dataset_validation() {
        assert!(Dataset::from_rows(&[(1.0, 2.0)]).is_err());
        assert!(Dataset::from_rows(&[(1.0, 2.0), (-1.0, 3.0)]).is_err());
        assert!(matches!(Dataset::from_rows(&[(1.0, 2.0), (1.0, 3.0)]), Err(Error::SingularDesign)));
        assert!(Dataset::from_rows(&[(1.0, 2.0), (2.0, 3.0)]).is_ok());
    }

    #[test]
    fn params_reject_zero_intercept() {
        assert!(ModelParams::homoskedastic(0.0, 1.0, 1.0).is_err());
        assert_eq!(ModelParams::homoskedastic(2.0, 0.5, 1.0).unwrap().beta1(), 1.0);
    }
}
