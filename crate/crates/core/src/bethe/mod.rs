//! Functional Bethe ansatz for polynomial-coefficient ODEs and the quasi-exact states of the
//! nonpolynomial oscillator.

mod v2;

pub use v2::{
    closure_ordering, normalization_quadrature, printed_normalization, v2_state, v2_state_1d, v2_state_3d, v2_states,
    BetheState, OrderingRecord, QuadratureDomain, Sector,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Σ aⱼzʲ S'' + Σ bⱼzʲ S' + Σ cⱼzʲ S = 0 with deg a ≤ 4, deg b ≤ 3, deg c ≤ 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetheProblem {
    pub a: [f64; 5],
    pub b: [f64; 4],
    pub c: [f64; 3],
}

/// Compensated Horner: tracks the rounding of each product and sum so that b(z) keeps its
/// accuracy where it cancels near a double root of a(z).
fn poly(coeffs: &[f64], z: f64) -> f64 {
    let (mut acc, mut err) = (0.0f64, 0.0f64);
    for &c in coeffs.iter().rev() {
        let prod = acc * z;
        let prod_err = acc.mul_add(z, -prod);
        let sum = prod + c;
        let t = sum - prod;
        let sum_err = (prod - (sum - t)) + (c - t);
        acc = sum;
        err = err * z + (prod_err + sum_err);
    }
    acc + err
}

fn poly_derivative(coeffs: &[f64], z: f64) -> f64 {
    coeffs.iter().enumerate().skip(1).rev().fold(0.0, |acc, (j, c)| acc * z + j as f64 * c)
}

impl BetheProblem {
    pub fn new(a: [f64; 5], b: [f64; 4], c: [f64; 3]) -> Result<Self> {
        if a[1..].iter().all(|v| *v == 0.0) {
            return Err(Error::Argument("second-order coefficient must be non-constant".into()));
        }
        if a.iter().chain(b.iter()).chain(c.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Domain("Bethe coefficients must be finite".into()));
        }
        Ok(Self { a, b, c })
    }

    /// z(1−z)²S'' + [κ + (2n−μ−κ)z + (2μ−2n)z² − μz³]S' + c(z)S = 0, the form taken by the
    /// nonpolynomial oscillator after the gauge d = n − (ᾱ−γ̄); κ = 2l_eff + ½.
    pub fn v2_form(n: usize, kappa: f64, mu: f64, c: [f64; 3]) -> Result<Self> {
        let nf = n as f64;
        Self::new([0.0, 1.0, -2.0, 1.0, 0.0], [kappa, 2.0 * nf - mu - kappa, 2.0 * mu - 2.0 * nf, -mu], c)
    }

    /// Residual of the ODE for the monic polynomial with the given roots at z.
    pub fn ode_residual(&self, roots: &[f64], z: f64) -> f64 {
        let s = roots.iter().map(|r| z - r).product::<f64>();
        let (mut s1, mut s2) = (0.0, 0.0);
        for i in 0..roots.len() {
            s1 += roots.iter().enumerate().filter(|(m, _)| *m != i).map(|(_, r)| z - r).product::<f64>();
            for j in (0..roots.len()).filter(|j| *j != i) {
                s2 += roots.iter().enumerate().filter(|(m, _)| *m != i && *m != j).map(|(_, r)| z - r).product::<f64>();
            }
        }
        poly(&self.a, z) * s2 + poly(&self.b, z) * s1 + poly(&self.c, z) * s
    }
}

fn check_roots(problem: &BetheProblem, roots: &[f64]) -> Result<()> {
    for (i, zi) in roots.iter().enumerate() {
        if !zi.is_finite() {
            return Err(Error::Domain(format!("root {i} is not finite")));
        }
        if roots[..i].iter().any(|zj| zj == zi) {
            return Err(Error::Domain(format!("roots must be distinct, {zi} repeats")));
        }
        if poly(&problem.a, *zi) == 0.0 {
            return Err(Error::Domain(format!("second-order coefficient vanishes at root {zi}")));
        }
    }
    Ok(())
}

/// Σ_{j≠i} 2/(zᵢ−zⱼ) + b(zᵢ)/a(zᵢ) for every root.
pub fn bethe_residual(problem: &BetheProblem, roots: &[f64]) -> Result<Vec<f64>> {
    check_roots(problem, roots)?;
    Ok(roots
        .iter()
        .enumerate()
        .map(|(i, zi)| {
            let pair: f64 = roots.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, zj)| 2.0 / (zi - zj)).sum();
            pair + poly(&problem.b, *zi) / poly(&problem.a, *zi)
        })
        .collect())
}

/// Which form of the constant-term closure condition to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    /// Includes the n(n−1)a₂ contribution of S'' to the constant term.
    Corrected,
    /// The form without the n(n−1)a₂ term; agrees with `Corrected` only when n ≤ 1 or a₂ = 0.
    Printed,
}

/// Residuals (c₂, c₁, c₀) of the three closure conditions; all vanish for a polynomial solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstraintResiduals {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl ConstraintResiduals {
    pub fn max_abs(&self) -> f64 {
        self.c2.abs().max(self.c1.abs()).max(self.c0.abs())
    }
}

/// c-coefficients implied by the closure conditions for the given roots.
pub fn closure_coefficients(a: &[f64; 5], b: &[f64; 4], roots: &[f64], closure: Closure) -> [f64; 3] {
    let n = roots.len() as f64;
    let s1: f64 = roots.iter().sum();
    let s2: f64 = roots.iter().map(|z| z * z).sum();
    let pairs = 0.5 * (s1 * s1 - s2);
    let lead = 2.0 * (n - 1.0) * a[4] + b[3];
    let c2 = -n * (n - 1.0) * a[4] - n * b[3];
    let c1 = -n * b[2] - n * (n - 1.0) * a[3] - lead * s1;
    let a2_term = match closure {
        Closure::Corrected => n * (n - 1.0) * a[2],
        Closure::Printed => 0.0,
    };
    let c0 = -(lead * s2 + 2.0 * a[4] * pairs + (2.0 * (n - 1.0) * a[3] + b[2]) * s1 + a2_term + n * b[1]);
    [c0, c1, c2]
}

/// Closure-condition residuals of a problem for n = roots.len().
pub fn constraint_check(problem: &BetheProblem, roots: &[f64], closure: Closure) -> ConstraintResiduals {
    let [c0, c1, c2] = closure_coefficients(&problem.a, &problem.b, roots, closure);
    ConstraintResiduals { c2: problem.c[2] - c2, c1: problem.c[1] - c1, c0: problem.c[0] - c0 }
}

/// Which root equation to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Hermitian1d,
    Nonhermitian1d,
    Nonhermitian3d,
}

impl Variant {
    /// κ = 2l + ½ in 1D (l ∈ {0, ½}) and l + 3/2 radially.
    pub fn kappa(&self, l: f64) -> f64 {
        match self {
            Variant::Hermitian1d | Variant::Nonhermitian1d => 2.0 * l + 0.5,
            Variant::Nonhermitian3d => l + 1.5,
        }
    }

    fn check_l(&self, l: f64) -> Result<()> {
        let ok = match self {
            Variant::Hermitian1d | Variant::Nonhermitian1d => l == 0.0 || l == 0.5,
            Variant::Nonhermitian3d => l >= 0.0 && l.fract() == 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("sector label l = {l} is not allowed for {self:?}")))
        }
    }
}

pub const ROOT_TOL: f64 = 1e-10;
const MAX_ROOT: f64 = 1e4;

/// All real root sets of the Bethe equations Σ_{j≠i} 2/(zᵢ−zⱼ) = (μzᵢ² + (2n−μ)zᵢ + κ)/(zᵢ(zᵢ−1)).
/// n = 0 gives one empty set; n = 1 both quadratic roots, each its own set; n ≥ 2 the distinct
/// sets found by damped Newton from a fixed family of starts.
pub fn solve_roots(n: usize, l: f64, mu: f64, variant: Variant) -> Result<Vec<Vec<f64>>> {
    variant.check_l(l)?;
    if !mu.is_finite() || mu == 0.0 {
        return Err(Error::Domain(format!("μ must be finite and nonzero, got {mu}")));
    }
    let kappa = variant.kappa(l);
    match n {
        0 => Ok(vec![vec![]]),
        1 => {
            let b = 2.0 - mu;
            let disc = b * b - 4.0 * mu * kappa;
            if disc < 0.0 {
                return Err(Error::NoRealSolution(format!(
                    "n = 1 root equation has discriminant {disc} < 0 at μ = {mu}"
                )));
            }
            // Cancellation-free pair: q = −(b + sign(b)√disc)/2, roots q/μ and κ/q.
            let q = -0.5 * (b + b.signum() * disc.sqrt());
            let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q / mu, kappa / q) };
            let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
            if lo == hi {
                return Ok(vec![vec![lo]]);
            }
            Ok(vec![vec![hi], vec![lo]])
        }
        _ => solve_roots_numeric(n, kappa, mu),
    }
}

/// Damped Newton on the coupled Bethe equations; shared with n = 1 for cross-checking.
pub fn solve_roots_numeric(n: usize, kappa: f64, mu: f64) -> Result<Vec<Vec<f64>>> {
    if n == 0 {
        return Ok(vec![vec![]]);
    }
    let problem = BetheProblem::v2_form(n, kappa, mu, [0.0; 3])?;
    let candidates = [-8.0, -3.0, -1.5, -0.7, -0.3, -0.1, -0.02, 0.03, 0.12, 0.25, 0.4, 0.55, 0.7, 0.85, 0.97, 1.1, 1.6, 3.0, 8.0];
    let mut found: Vec<Vec<f64>> = Vec::new();
    let mut starts = 0usize;
    for combo in Combinations::new(candidates.len(), n) {
        starts += 1;
        if starts > 4000 {
            break;
        }
        let guess: Vec<f64> = combo.iter().map(|&i| candidates[i]).collect();
        if let Some(mut roots) = newton(&problem, guess) {
            roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let scale = roots.iter().fold(1.0f64, |a, r| a.max(r.abs()));
            if !found.iter().any(|f| f.iter().zip(&roots).all(|(a, b)| (a - b).abs() < 1e-8 * scale)) {
                found.push(roots);
            }
        }
    }
    if found.is_empty() {
        return Err(Error::QuasiExactLimit(format!("no real root set of degree {n} converged to {ROOT_TOL}")));
    }
    found.sort_by(|a, b| b.iter().sum::<f64>().partial_cmp(&a.iter().sum::<f64>()).unwrap());
    Ok(found)
}

fn residual_norm(problem: &BetheProblem, z: &[f64]) -> Option<(Vec<f64>, f64)> {
    let r = bethe_residual(problem, z).ok()?;
    let norm = r.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    norm.is_finite().then_some((r, norm))
}

fn newton(problem: &BetheProblem, mut z: Vec<f64>) -> Option<Vec<f64>> {
    let n = z.len();
    let (mut r, mut norm) = residual_norm(problem, &z)?;
    for _ in 0..200 {
        if norm < 1e-13 {
            break;
        }
        let mut jac = vec![vec![0.0; n]; n];
        for i in 0..n {
            let (a, b) = (poly(&problem.a, z[i]), poly(&problem.b, z[i]));
            let (da, db) = (poly_derivative(&problem.a, z[i]), poly_derivative(&problem.b, z[i]));
            jac[i][i] = (db * a - b * da) / (a * a);
            for j in 0..n {
                if j != i {
                    let w = 2.0 / ((z[i] - z[j]) * (z[i] - z[j]));
                    jac[i][i] -= w;
                    jac[i][j] = w;
                }
            }
        }
        let step = gauss_solve(jac, r.iter().map(|v| -v).collect())?;
        let mut t = 1.0;
        let mut stalled = false;
        loop {
            let trial: Vec<f64> = z.iter().zip(&step).map(|(a, s)| a + t * s).collect();
            if let Some((tr, tn)) = residual_norm(problem, &trial) {
                if tn < norm {
                    z = trial;
                    r = tr;
                    norm = tn;
                    break;
                }
            }
            t *= 0.5;
            if t < 1e-10 {
                // No descent left: either at rounding level on a root or stuck.
                stalled = true;
                break;
            }
        }
        if stalled {
            break;
        }
    }
    // Roots escaping to infinity satisfy b/a → 0 spuriously.
    (norm < ROOT_TOL && z.iter().all(|v| v.abs() < MAX_ROOT)).then_some(z)
}

fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col] == 0.0 || !a[piv][col].is_finite() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

/// k-subsets of 0..n in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Bethe solution with its closure bookkeeping; serialized as the public JSON record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetheSolution {
    pub n: usize,
    pub l: f64,
    pub roots: Vec<f64>,
    pub d: f64,
    pub energy: f64,
    pub constraints: ConstraintRecord,
    pub ordering_record: OrderingRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintRecord {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub residuals: Vec<f64>,
}
