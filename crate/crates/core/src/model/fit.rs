//! Ordinary and weighted least squares for the straight-line model, and
//! the two coefficient covariance estimators built on it.

use super::matrix::Sym2;
use super::types::{distinct_count, Dataset};
use crate::error::{Error, Result};

/// Intercept and slope of a fitted line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub b0: f64,
    pub b1: f64,
}

impl Coefficients {
    /// `b1 / b0`, or `None` when the ratio does not exist (`b0 == 0` or a
    /// non-finite result).
    pub fn theta(&self) -> Option<f64> {
        if self.b0 == 0.0 {
            return None;
        }
        let t = self.b1 / self.b0;
        t.is_finite().then_some(t)
    }
}

/// Precomputed least-squares map for a fixed design, so refits over many
/// simulated response vectors cost one pass each.
#[derive(Debug, Clone)]
pub struct OlsProjector {
    x_bar: f64,
    slope_weights: Vec<f64>,
    inv_sxx: f64,
}

impl OlsProjector {
    pub fn new(xs: &[f64]) -> Result<Self> {
        if xs.len() < 2 || distinct_count(xs) < 2 {
            return Err(Error::SingularDesign);
        }
        let n = xs.len() as f64;
        let x_bar = xs.iter().sum::<f64>() / n;
        let sxx: f64 = xs.iter().map(|x| (x - x_bar) * (x - x_bar)).sum();
        let slope_weights = xs.iter().map(|x| (x - x_bar) / sxx).collect();
        Ok(Self { x_bar, slope_weights, inv_sxx: 1.0 / sxx })
    }

    pub fn len(&self) -> usize {
        self.slope_weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slope_weights.is_empty()
    }

    pub fn coefficients(&self, ys: &[f64]) -> Coefficients {
        debug_assert_eq!(ys.len(), self.slope_weights.len());
        let n = ys.len() as f64;
        let y_bar = ys.iter().sum::<f64>() / n;
        let b1: f64 = self.slope_weights.iter().zip(ys).map(|(w, y)| w * y).sum();
        Coefficients { b0: y_bar - b1 * self.x_bar, b1 }
    }

    /// `(X'X)^{-1}`.
    pub fn xtx_inv(&self) -> Sym2 {
        let n = self.len() as f64;
        Sym2::new(1.0 / n + self.x_bar * self.x_bar * self.inv_sxx, -self.x_bar * self.inv_sxx, self.inv_sxx)
    }
}

/// Result of a least-squares fit.
///
/// `s2_e` is the maximum-likelihood error variance, `SSE / n`, not the
/// unbiased `SSE / (n - 2)` most regression software reports.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub b0: f64,
    pub b1: f64,
    pub theta_hat: f64,
    pub residuals: Vec<f64>,
    pub s2_e: f64,
    pub xtx_inv: Sym2,
}

impl FitResult {
    pub fn n(&self) -> usize {
        self.residuals.len()
    }

    pub fn sse(&self) -> f64 {
        self.residuals.iter().map(|e| e * e).sum()
    }

    pub fn coefficients(&self) -> Coefficients {
        Coefficients { b0: self.b0, b1: self.b1 }
    }

    /// Delta-method gradient direction `[-theta_hat, 1]`.
    pub fn gradient(&self) -> [f64; 2] {
        [-self.theta_hat, 1.0]
    }

    fn assemble(data: &Dataset, coef: Coefficients, xtx_inv: Sym2, s2_e: impl FnOnce(&[f64]) -> f64) -> Result<Self> {
        if coef.b0 == 0.0 {
            return Err(Error::DegenerateIntercept);
        }
        let theta_hat = coef.b1 / coef.b0;
        if !theta_hat.is_finite() {
            return Err(Error::Numeric(format!("non-finite ratio b1/b0 = {}/{}", coef.b1, coef.b0)));
        }
        let residuals: Vec<f64> = data.rows().map(|(x, y)| y - coef.b0 - coef.b1 * x).collect();
        let s2_e = s2_e(&residuals);
        Ok(Self { b0: coef.b0, b1: coef.b1, theta_hat, residuals, s2_e, xtx_inv })
    }
}

pub fn fit_least_squares(data: &Dataset) -> Result<FitResult> {
    let proj = OlsProjector::new(data.x())?;
    let coef = proj.coefficients(data.y());
    let n = data.len() as f64;
    FitResult::assemble(data, coef, proj.xtx_inv(), |e| e.iter().map(|v| v * v).sum::<f64>() / n)
}

/// Weighted least-squares line. Weights must be non-negative and sum to one.
///
/// The returned `s2_e` is `Σ wᵢ eᵢ²` (which is `SSE / n` for uniform
/// weights) and `xtx_inv` is `(X'WX)^{-1}`.
pub fn fit_weighted_least_squares(data: &Dataset, weights: &[f64]) -> Result<FitResult> {
    if weights.len() != data.len() {
        return Err(Error::invalid(format!("expected {} weights, got {}", data.len(), weights.len())));
    }
    if weights.iter().any(|w| !(*w >= 0.0 && w.is_finite())) {
        return Err(Error::invalid("weights must be finite and non-negative"));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::invalid(format!("weights must sum to 1, got {total}")));
    }
    let support: Vec<f64> = data.x().iter().zip(weights).filter(|(_, w)| **w > 0.0).map(|(x, _)| *x).collect();
    if distinct_count(&support) < 2 {
        return Err(Error::SingularDesign);
    }
    let (coef, sxx, x_bar) = weighted_line(data.x(), data.y(), weights).ok_or(Error::SingularDesign)?;
    let xtx_inv = Sym2::new(1.0 / total + x_bar * x_bar / sxx, -x_bar / sxx, 1.0 / sxx);
    FitResult::assemble(data, coef, xtx_inv, |e| e.iter().zip(weights).map(|(v, w)| w * v * v).sum::<f64>() / total)
}

/// Weighted centred fit; returns the coefficients with the weighted `Sxx`
/// and weighted mean of `x`. Weights need not be normalised.
pub(crate) fn weighted_line(xs: &[f64], ys: &[f64], ws: &[f64]) -> Option<(Coefficients, f64, f64)> {
    let total: f64 = ws.iter().sum();
    let x_bar = xs.iter().zip(ws).map(|(x, w)| w * x).sum::<f64>() / total;
    let y_bar = ys.iter().zip(ws).map(|(y, w)| w * y).sum::<f64>() / total;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for ((x, y), w) in xs.iter().zip(ys).zip(ws) {
        let dx = x - x_bar;
        sxx += w * dx * dx;
        sxy += w * dx * (y - y_bar);
    }
    if !(sxx > 0.0) {
        return None;
    }
    let sxx_norm = sxx / total;
    let b1 = sxy / sxx;
    Some((Coefficients { b0: y_bar - b1 * x_bar, b1 }, sxx_norm, x_bar))
}

fn require_error_df(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::invalid(format!("variance estimation needs at least 3 rows, got {n}")));
    }
    Ok(())
}

/// `s2_e (X'X)^{-1}`.
pub fn homo_variance_matrix(fit: &FitResult) -> Result<Sym2> {
    require_error_df(fit.n())?;
    Ok(fit.xtx_inv.scale(fit.s2_e))
}

/// Diagonal of the heteroskedasticity estimate: each squared residual,
/// replaced by the mean squared residual over rows sharing exactly the same
/// `x` when there are repeats.
pub fn pooled_omega(xs: &[f64], residuals: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| xs[i].total_cmp(&xs[j]));
    let mut omega = vec![0.0; xs.len()];
    let mut start = 0;
    while start < order.len() {
        let x = xs[order[start]];
        let end = start + order[start..].iter().take_while(|&&i| xs[i] == x).count();
        let group = &order[start..end];
        let pooled = group.iter().map(|&i| residuals[i] * residuals[i]).sum::<f64>() / group.len() as f64;
        for &i in group {
            omega[i] = pooled;
        }
        start = end;
    }
    omega
}

/// `(X'X)^{-1} X' Ω X (X'X)^{-1}` for an arbitrary diagonal `Ω`, summed as
/// `Σ ωᵢ gᵢ gᵢ'` over the centred rows `gᵢ = (X'X)^{-1} [1, xᵢ]'`.
pub fn sandwich_with_omega(xs: &[f64], omega: &[f64]) -> Result<Sym2> {
    if omega.len() != xs.len() {
        return Err(Error::invalid("omega and design have different lengths"));
    }
    if xs.len() < 2 || distinct_count(xs) < 2 {
        return Err(Error::SingularDesign);
    }
    let n = xs.len() as f64;
    let x_bar = xs.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - x_bar) * (x - x_bar)).sum();
    let mut v = Sym2::ZERO;
    for (x, w) in xs.iter().zip(omega) {
        let g1 = (x - x_bar) / sxx;
        let g0 = 1.0 / n - x_bar * g1;
        v.a += w * g0 * g0;
        v.b += w * g0 * g1;
        v.d += w * g1 * g1;
    }
    Ok(v)
}

/// White-type covariance with the pooled `Ω̂` from [`pooled_omega`].
pub fn sandwich_variance_matrix(fit: &FitResult, data: &Dataset) -> Result<Sym2> {
    require_error_df(fit.n())?;
    if fit.n() != data.len() {
        return Err(Error::invalid("fit and dataset have different row counts"));
    }
    let omega = pooled_omega(data.x(), &fit.residuals);
    sandwich_with_omega(data.x(), &omega)
}
