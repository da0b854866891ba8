/// Symmetric 2×2 matrix `[[a, b], [b, d]]`, indexed intercept-first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sym2 {
    pub a: f64,
    pub b: f64,
    pub d: f64,
}

impl Sym2 {
    pub const ZERO: Sym2 = Sym2 { a: 0.0, b: 0.0, d: 0.0 };

    pub fn new(a: f64, b: f64, d: f64) -> Self {
        Self { a, b, d }
    }

    pub fn to_array(self) -> [[f64; 2]; 2] {
        [[self.a, self.b], [self.b, self.d]]
    }

    pub fn scale(self, c: f64) -> Self {
        Self { a: self.a * c, b: self.b * c, d: self.d * c }
    }

    /// `v' M v`.
    pub fn quad(self, v: [f64; 2]) -> f64 {
        self.a * v[0] * v[0] + 2.0 * self.b * v[0] * v[1] + self.d * v[1] * v[1]
    }

    pub fn mul_vec(self, v: [f64; 2]) -> [f64; 2] {
        [self.a * v[0] + self.b * v[1], self.b * v[0] + self.d * v[1]]
    }

    /// `self * m * self` for symmetric `m`.
    pub fn sandwich(self, m: Sym2) -> Sym2 {
        // P = self * m
        let p00 = self.a * m.a + self.b * m.b;
        let p01 = self.a * m.b + self.b * m.d;
        let p10 = self.b * m.a + self.d * m.b;
        let p11 = self.b * m.b + self.d * m.d;
        Sym2 { a: p00 * self.a + p01 * self.b, b: p00 * self.b + p01 * self.d, d: p10 * self.b + p11 * self.d }
    }

    pub fn is_psd(self, tol: f64) -> bool {
        let scale = self.a.abs().max(self.d.abs()).max(f64::MIN_POSITIVE);
        self.a >= -tol * scale && self.d >= -tol * scale && self.a * self.d - self.b * self.b >= -tol * scale * scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sandwich_matches_explicit_product() {
        let p = Sym2::new(2.0, -1.0, 3.0);
        let m = Sym2::new(1.0, 0.5, 4.0);
        let pa = p.to_array();
        let ma = m.to_array();
        let mut out = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out[i][j] += pa[i][k] * ma[k][l] * pa[l][j];
                    }
                }
            }
        }
        let s = p.sandwich(m).to_array();
        for i in 0..2 {
            for j in 0..2 {
                assert!((s[i][j] - out[i][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn quad_form() {
        let m = Sym2::new(2.0, 1.0, 3.0);
        assert_eq!(m.quad([1.0, 2.0]), 2.0 + 4.0 + 12.0);
    }
}
