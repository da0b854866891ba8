/// Gas/liquid ratio setup of a previously published PRV measurement series.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorStudy {
    pub id: usize,
    pub ratios: Vec<f64>,
    pub reps: usize,
    /// Run count as printed alongside the ratios. Study 5 prints 8 although
    /// its five ratios at two replicates give 10 runs.
    pub n: usize,
}

impl PriorStudy {
    /// Each ratio repeated `reps` times.
    pub fn design(&self) -> Vec<f64> {
        self.ratios.iter().flat_map(|&r| std::iter::repeat_n(r, self.reps)).collect()
    }

    pub fn runs(&self) -> usize {
        self.ratios.len() * self.reps
    }

    pub fn x_min(&self) -> f64 {
        self.ratios.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn x_max(&self) -> f64 {
        self.ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

const STUDIES: [(&[f64], usize, usize); 10] = [
    (&[80.9, 161.8, 242.8, 323.7], 3, 12),
    (&[39.0, 199.0, 499.0, 999.0], 3, 12),
    (&[1.01, 3.03, 9.08], 3, 9),
    (&[4.6, 6.5, 10.2, 21.4], 2, 8),
    (&[10.2, 21.3, 43.6, 73.3, 222.0], 2, 8),
    (&[10.2, 43.8, 111.0, 447.0], 3, 12),
    (&[4.5, 6.3, 10.0, 21.0], 3, 12),
    (&[39.0, 199.0, 499.0, 999.0], 1, 4),
    (&[13.7, 10.0, 7.8, 6.3, 4.5, 3.4, 2.1, 1.2], 3, 24),
    (&[4.6, 6.4, 10.2, 21.3], 1, 4),
];

/// The ten bundled study setups, ids 1 to 10.
pub fn prior_studies() -> Vec<PriorStudy> {
    STUDIES
        .iter()
        .enumerate()
        .map(|(i, (ratios, reps, n))| PriorStudy { id: i + 1, ratios: ratios.to_vec(), reps: *reps, n: *n })
        .collect()
}

pub fn prior_study(id: usize) -> Option<PriorStudy> {
    prior_studies().into_iter().find(|s| s.id == id)
}
