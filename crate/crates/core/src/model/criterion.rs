//! Design criteria: quantities proportional to the first-order variance of
//! the slope/intercept ratio, as functions of the design points only.

use super::types::HFunction;
use crate::error::{Error, Result};

fn centred_moments(xs: &[f64]) -> Result<(f64, f64)> {
    if xs.len() < 2 {
        return Err(Error::SingularDesign);
    }
    if let Some(x) = xs.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Error::invalid(format!("design points must be positive, got {x}")));
    }
    // Exact check: a rounded mean leaves a spurious positive sxx otherwise.
    if xs.iter().all(|&x| x == xs[0]) {
        return Err(Error::SingularDesign);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    if !(sxx > 0.0) {
        return Err(Error::SingularDesign);
    }
    Ok((mean, sxx))
}

/// `(θ₀ x̄ + 1)² / s²ₓ` with the `n - 1` sample variance.
///
/// Returns [`Error::SingularDesign`] when every point coincides (the
/// criterion is infinite there).
pub fn criterion_homo(xs: &[f64], theta0: f64) -> Result<f64> {
    let (mean, sxx) = centred_moments(xs)?;
    let s2x = sxx / (xs.len() - 1) as f64;
    let lead = theta0 * mean + 1.0;
    Ok(lead * lead / s2x)
}

/// `[-θ₀ 1] (X'X)⁻¹ X'ΩX (X'X)⁻¹ [-θ₀ 1]'` with `Ωᵢᵢ = h(xᵢ)²`.
///
/// With `h ≡ 1` this equals `θ₀²/n + criterion_homo / (n - 1)`: the same
/// argmin, offset by a design-independent constant.
pub fn criterion_hetero(xs: &[f64], theta0: f64, h: &HFunction) -> Result<f64> {
    let (mean, sxx) = centred_moments(xs)?;
    let n = xs.len() as f64;
    // g = (X'X)^{-1} [-θ₀, 1]'
    let g0 = -theta0 * (1.0 / n + mean * mean / sxx) - mean / sxx;
    let g1 = theta0 * mean / sxx + 1.0 / sxx;
    let mut total = 0.0;
    for &x in xs {
        let s = h.eval(x);
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::invalid(format!("h must be positive on the design, h({x}) = {s}")));
        }
        let lever = g0 + g1 * x;
        total += s * s * lever * lever;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homo_by_hand() {
        assert!((criterion_homo(&[1.0, 1.0, 3.0, 3.0], 1.0).unwrap() - 6.75).abs() < 1e-14);
    }

    #[test]
    fn theta_zero_is_inverse_variance() {
        let xs = [1.0, 2.0, 5.0];
        let s2 = crate::stats::sample_variance(&xs);
        assert!((criterion_homo(&xs, 0.0).unwrap() - 1.0 / s2).abs() < 1e-14);
    }

    #[test]
    fn identical_points_signal_singular() {
        assert!(matches!(criterion_homo(&[2.0, 2.0, 2.0], 1.0), Err(Error::SingularDesign)));
        assert!(matches!(criterion_hetero(&[2.0, 2.0], 1.0, &HFunction::constant()), Err(Error::SingularDesign)));
    }

    #[test]
    fn permutation_invariant() {
        let a = [1.0, 4.0, 2.5, 9.0];
        let b = [9.0, 2.5, 1.0, 4.0];
        let h = HFunction::PowerLaw { gamma: 0.7 };
        assert!((criterion_homo(&a, 0.3).unwrap() - criterion_homo(&b, 0.3).unwrap()).abs() < 1e-14);
        let (ha, hb) = (criterion_hetero(&a, 0.3, &h).unwrap(), criterion_hetero(&b, 0.3, &h).unwrap());
        assert!((ha - hb).abs() < 1e-14 * ha);
    }

    #[test]
    fn unit_h_is_affine_in_homo() {
        let h = HFunction::constant();
        for (xs, t) in
            [(vec![1.0, 1.0, 3.0, 3.0], 1.0), (vec![0.5, 2.0, 2.0, 7.0, 9.0], 0.053), (vec![1.0, 10.0, 10.0], 2.0)]
        {
            let n = xs.len() as f64;
            let want = t * t / n + criterion_homo(&xs, t).unwrap() / (n - 1.0);
            let got = criterion_hetero(&xs, t, &h).unwrap();
            assert!((got - want).abs() < 1e-12 * want, "{got} vs {want}");
        }
    }
}
