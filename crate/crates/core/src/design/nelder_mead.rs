use crate::error::{Error, Result};

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Stopping rule for [`minimize`].
#[derive(Debug, Clone, Copy)]
pub struct StopRule {
    pub max_iterations: usize,
    /// Stop once `f_worst - f_best <= tolerance * (1 + |f_best|)`.
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Initial simplex in the style of `fminsearch`: each coordinate perturbed
/// by 5% of its magnitude, or by 0.00025 when it is zero.
pub fn default_simplex(start: &[f64]) -> Vec<Vec<f64>> {
    let mut simplex = vec![start.to_vec()];
    for i in 0..start.len() {
        let mut v = start.to_vec();
        v[i] = if v[i] != 0.0 { 1.05 * v[i] } else { 0.00025 };
        simplex.push(v);
    }
    simplex
}

/// Downhill simplex minimisation from an explicit initial simplex of
/// `dim + 1` vertices. The first vertex is the start point; the returned
/// value is never worse than the objective there.
pub fn minimize<F>(objective: F, simplex: Vec<Vec<f64>>, rule: StopRule) -> Result<Minimum>
where
    F: Fn(&[f64]) -> f64,
{
    let dim = simplex.first().map_or(0, Vec::len);
    if dim == 0 || simplex.len() != dim + 1 || simplex.iter().any(|v| v.len() != dim) {
        return Err(Error::invalid("simplex must have dim + 1 vertices of equal, non-zero dimension"));
    }
    let start_value = objective(&simplex[0]);
    if !start_value.is_finite() {
        return Err(Error::invalid(format!("objective is not finite at the start point ({start_value})")));
    }

    let mut evaluations = 1;
    let mut verts: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    verts.push((simplex[0].clone(), start_value));
    for v in simplex.into_iter().skip(1) {
        let f = sanitize(objective(&v));
        evaluations += 1;
        verts.push((v, f));
    }

    let mut iterations = 0;
    let mut converged = false;
    let mut centroid = vec![0.0; dim];
    loop {
        // Stable sort keeps the earlier vertex first on ties, so the start
        // point wins ties against its perturbations.
        verts.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = verts[0].1;
        let worst = verts[dim].1;
        if worst - best <= rule.tolerance * (1.0 + best.abs()) || collapsed(&verts) {
            converged = true;
            break;
        }
        if iterations >= rule.max_iterations {
            break;
        }
        iterations += 1;

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for (v, _) in &verts[..dim] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / dim as f64;
            }
        }
        let along =
            |coef: f64| -> Vec<f64> { centroid.iter().zip(&verts[dim].0).map(|(c, w)| c + coef * (c - w)).collect() };

        let reflected = along(REFLECT);
        let f_r = sanitize(objective(&reflected));
        evaluations += 1;
        let second_worst = verts[dim - 1].1;

        if f_r < best {
            let expanded = along(REFLECT * EXPAND);
            let f_e = sanitize(objective(&expanded));
            evaluations += 1;
            verts[dim] = if f_e < f_r { (expanded, f_e) } else { (reflected, f_r) };
            continue;
        }
        if f_r < second_worst {
            verts[dim] = (reflected, f_r);
            continue;
        }
        let (candidate, f_c) = if f_r < worst {
            let outside = along(REFLECT * CONTRACT);
            let f = sanitize(objective(&outside));
            (outside, f)
        } else {
            let inside = along(-CONTRACT);
            let f = sanitize(objective(&inside));
            (inside, f)
        };
        evaluations += 1;
        if f_c < worst.min(f_r) {
            verts[dim] = (candidate, f_c);
            continue;
        }
        let anchor = verts[0].0.clone();
        for (v, f) in verts.iter_mut().skip(1) {
            for (x, a) in v.iter_mut().zip(&anchor) {
                *x = a + SHRINK * (*x - a);
            }
            *f = sanitize(objective(v));
            evaluations += 1;
        }
    }

    let (x, value) = verts.swap_remove(0);
    Ok(Minimum { x, value, iterations, evaluations, converged })
}

fn sanitize(f: f64) -> f64 {
    if f.is_nan() {
        f64::INFINITY
    } else {
        f
    }
}

fn collapsed(verts: &[(Vec<f64>, f64)]) -> bool {
    let best = &verts[0].0;
    verts[1..]
        .iter()
        .all(|(v, _)| v.iter().zip(best).all(|(a, b)| (a - b).abs() <= 4.0 * f64::EPSILON * (1.0 + b.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule() -> StopRule {
        StopRule { max_iterations: 2000, tolerance: 1e-14 }
    }

    #[test]
    fn rejects_non_finite_start() {
        let r = minimize(|_| f64::NAN, default_simplex(&[1.0, 1.0]), rule());
        assert!(r.is_err());
    }

    #[test]
    fn never_worse_than_start() {
        let f = |v: &[f64]| (v[0] - 1.0).abs() + (v[1] + 2.0).powi(2);
        let start = [4.0, 4.0];
        let m = minimize(f, default_simplex(&start), rule()).unwrap();
        assert!(m.value <= f(&start));
    }

    #[test]
    fn one_dimensional() {
        let m = minimize(|v: &[f64]| (v[0] - 0.5).powi(2), default_simplex(&[3.0]), rule()).unwrap();
        assert!((m.x[0] - 0.5).abs() < 1e-5);
    }
}
