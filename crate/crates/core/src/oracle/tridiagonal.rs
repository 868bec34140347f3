use crate::error::{Error, Result};

/// Real symmetric tridiagonal matrix: `diag` of length n, `off` of length n − 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

pub const BISECTION_TOL: f64 = 1e-12;

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::Argument(format!(
                "tridiagonal shape mismatch: {} diagonal and {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        if diag.iter().chain(off.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Domain("tridiagonal matrix has non-finite entries".into()));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below λ (Sturm sequence of the LDLᵀ pivots).
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut d = self.diag[0] - lambda;
        for i in 0..self.dim() {
            if i > 0 {
                d = self.diag[i] - lambda - self.off[i - 1] * self.off[i - 1] / d;
            }
            if d == 0.0 {
                d = -tiny;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 } + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The j-th smallest eigenvalue (0-based) by bisection to `BISECTION_TOL` absolute.
    pub fn eigenvalue(&self, j: usize) -> Result<f64> {
        if j >= self.dim() {
            return Err(Error::Argument(format!("eigenvalue index {j} exceeds dimension {}", self.dim())));
        }
        let (mut lo, mut hi) = self.gershgorin();
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Lowest `count` eigenvalues in ascending order.
    pub fn eigenvalues(&self, count: usize) -> Result<Vec<f64>> {
        if count > self.dim() {
            return Err(Error::Argument(format!("requested {count} eigenvalues of a {}×{} matrix", self.dim(), self.dim())));
        }
        (0..count).map(|j| self.eigenvalue(j)).collect()
    }

    /// Unit eigenvector for the eigenvalue λ by inverse iteration; the first component whose
    /// magnitude exceeds 1e-8 of the maximum is made positive.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.dim();
        let shift = lambda + 1e-13 * lambda.abs().max(1.0);
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 101) as f64 / 101.0).collect();
        for _ in 0..4 {
            v = self.solve_shifted(shift, &v);
            let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
            v.iter_mut().for_each(|a| *a /= norm);
        }
        let max = v.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        if let Some(first) = v.iter().find(|a| a.abs() > 1e-8 * max) {
            if *first < 0.0 {
                v.iter_mut().for_each(|a| *a = -*a);
            }
        }
        v
    }

    /// Solve (T − σI)x = b by LU factorization with partial pivoting.
    fn solve_shifted(&self, sigma: f64, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let tiny = f64::EPSILON * self.gershgorin().1.abs().max(1.0);
        let mut d: Vec<f64> = self.diag.iter().map(|a| a - sigma).collect();
        let dl = self.off.clone();
        let mut du = self.off.clone();
        let mut du2 = vec![0.0; n];
        let mut rhs = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                d[i + 1] -= fact * du[i];
                rhs[i + 1] -= fact * rhs[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                rhs.swap(i, i + 1);
                rhs[i + 1] -= fact * rhs[i];
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = rhs[i];
            if i + 1 < n {
                s -= du[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= du2[i] * x[i + 2];
            }
            x[i] = s / d[i];
        }
        x
    }
}
