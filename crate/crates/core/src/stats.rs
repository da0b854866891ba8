//! Small descriptive statistics used by the interval and simulation code.

use statrs::distribution::{ContinuousCDF, Normal};

/// Empirical quantile of an ascending-sorted sample, linearly interpolating
/// between order statistics (`(len - 1) * p` positioning).
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of an empty sample");
    assert!((0.0..=1.0).contains(&p), "quantile level outside [0, 1]");
    let rank = p * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    if lo == hi {
        return sorted[lo];
    }
    let frac = rank - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

pub fn sort_ascending(values: &mut [f64]) {
    values.sort_by(|a, b| a.total_cmp(b));
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample variance with the `n - 1` divisor; zero for fewer than two values.
pub fn sample_variance(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (values.len() - 1) as f64
}

/// Upper `alpha / 2` standard normal quantile.
pub fn z_two_sided(alpha: f64) -> f64 {
    let standard = Normal::new(0.0, 1.0).expect("unit normal");
    standard.inverse_cdf(1.0 - alpha / 2.0)
}
