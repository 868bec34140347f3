//! Finite-difference eigenvalue oracle for the Hermitian-ordered problems.
//!
//! The operator −(ħ²/2)(u²ψ')' + Wψ is discretized either in the physical coordinate x
//! (p = u², q = W, unit weight) or in the geodesic coordinate y with dx = u dy
//! (p = u, q = uW, weight u). The geodesic form maps k > 0 onto a finite interval and opens the
//! degenerate k < 0 edge to an infinite line, so it is the default whenever k ≠ 0.

mod tridiagonal;

pub use tridiagonal::{SymTridiagonal, BISECTION_TOL};

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::params::{Dim, Potential, SystemParams};
use crate::quantum_higgs::OrderingParameters;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coordinate {
    Physical,
    Geodesic,
}

/// Discretization controls. `half_width` is measured in the chosen coordinate; `None` selects
/// the natural or automatically truncated domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub points: usize,
    pub coordinate: Option<Coordinate>,
    pub half_width: Option<f64>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { points: 2000, coordinate: None, half_width: None }
    }
}

pub const MIN_POINTS: usize = 50;
/// √|k|·Y for the truncated geodesic line of the k < 0 Higgs problem.
pub const HIGGS_GEODESIC_EXTENT: f64 = 60.0;
/// Potential height (in units of ħω₀) at which the k < 0 nonpolynomial problem is truncated.
pub const V2_WALL: f64 = 1e4;

/// Three-point grid for d/ds[p ψ_s] form: N+2 nodes including the Dirichlet ends, p on the
/// N+1 cell faces, q and w on the N interior nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct SturmLiouvilleGrid {
    pub coordinate: Coordinate,
    pub nodes: Vec<f64>,
    pub x: Vec<f64>,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub w: Vec<f64>,
    pub h: f64,
}

impl SturmLiouvilleGrid {
    pub fn interior(&self) -> usize {
        self.q.len()
    }

    /// Symmetric matrix W^{-1/2} A W^{-1/2} with A the Dirichlet three-point operator.
    pub fn matrix(&self, hbar: f64) -> Result<SymTridiagonal> {
        let n = self.interior();
        let c = 0.5 * hbar * hbar / (self.h * self.h);
        let diag = (0..n).map(|i| (c * (self.p[i] + self.p[i + 1]) + self.q[i]) / self.w[i]).collect();
        let off = (0..n - 1).map(|i| -c * self.p[i + 1] / (self.w[i] * self.w[i + 1]).sqrt()).collect();
        SymTridiagonal::new(diag, off)
    }

    /// Map an eigenvector of `matrix` to ψ at the interior x nodes with ∫ψ² dx = 1.
    pub fn wavefunction(&self, v: &[f64]) -> Vec<(f64, f64)> {
        (0..self.interior()).map(|i| (self.x[i + 1], v[i] / (self.w[i] * self.h).sqrt())).collect()
    }
}

/// Geometry of one coordinate choice: maps s to (x, u).
#[derive(Debug, Clone, Copy)]
struct Chart {
    coordinate: Coordinate,
    k: f64,
}

impl Chart {
    fn point(&self, s: f64) -> (f64, f64) {
        let k = self.k;
        match self.coordinate {
            Coordinate::Physical => (s, 1.0 + k * s * s),
            Coordinate::Geodesic if k > 0.0 => {
                let b = k.sqrt();
                let c = (b * s).cos();
                ((b * s).tan() / b, 1.0 / (c * c))
            }
            Coordinate::Geodesic if k < 0.0 => {
                let b = (-k).sqrt();
                let c = (b * s).cosh();
                ((b * s).tanh() / b, 1.0 / (c * c))
            }
            Coordinate::Geodesic => (s, 1.0),
        }
    }

    /// (p, q, w) from u and the effective potential W.
    fn coefficients(&self, u: f64, w_eff: f64) -> (f64, f64, f64) {
        match self.coordinate {
            Coordinate::Physical => (u * u, w_eff, 1.0),
            Coordinate::Geodesic => (u, u * w_eff, u),
        }
    }

    fn face_p(&self, s: f64) -> f64 {
        let (_, u) = self.point(s);
        match self.coordinate {
            Coordinate::Physical => u * u,
            Coordinate::Geodesic => u,
        }
    }
}

/// Effective potential W = V − ħ²kη₁u − 2ħ²kη₂ (+ ħ²l(l+1)u/(2x²) radially), with u supplied
/// by the chart so that it stays accurate near the k < 0 edge.
fn effective_potential(params: &SystemParams, op: &OrderingParameters, dim: Dim, x: f64, u: f64) -> f64 {
    let h2 = params.hbar * params.hbar;
    let v = 0.5 * params.omega0 * params.omega0 * x * x;
    let v = match params.potential {
        Potential::Higgs => v,
        Potential::Nonpolynomial => v / (u * u),
    };
    let ordering = -h2 * params.k * (op.eta1() * u + 2.0 * op.eta2());
    let centrifugal = match dim {
        Dim::One => 0.0,
        Dim::Three { l } => 0.5 * h2 * (l * (l + 1)) as f64 * u / (x * x),
    };
    v + ordering + centrifugal
}

fn default_coordinate(params: &SystemParams) -> Coordinate {
    if params.k == 0.0 {
        Coordinate::Physical
    } else {
        Coordinate::Geodesic
    }
}

/// Half-width of the domain in the chosen coordinate.
fn extent(params: &SystemParams, coordinate: Coordinate, half_width: Option<f64>) -> Result<f64> {
    let k = params.k;
    let natural = match coordinate {
        Coordinate::Geodesic if k > 0.0 => Some(FRAC_PI_2 / k.sqrt()),
        Coordinate::Physical if k < 0.0 => Some(1.0 / (-k).sqrt()),
        _ => None,
    };
    if let Some(w) = half_width {
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::Domain(format!("domain half-width must be positive and finite, got {w}")));
        }
        if let Some(nat) = natural {
            if w > nat {
                return Err(Error::Domain(format!("half-width {w} exceeds the natural domain {nat}")));
            }
        }
        return Ok(w);
    }
    if let Some(nat) = natural {
        return Ok(nat);
    }
    let osc = (params.hbar / params.omega0).sqrt();
    Ok(match (coordinate, k > 0.0) {
        // Flat or physical-coordinate k > 0 truncation.
        (_, _) if k == 0.0 => 12.0 * osc,
        (Coordinate::Physical, _) => 50.0 / k.sqrt(),
        (Coordinate::Geodesic, _) => {
            let b = (-k).sqrt();
            match params.potential {
                Potential::Higgs => HIGGS_GEODESIC_EXTENT / b,
                Potential::Nonpolynomial => {
                    let wall = V2_WALL * params.hbar * params.omega0;
                    (2.0 * b * (2.0 * wall).sqrt() / params.omega0).asinh() / (2.0 * b)
                }
            }
        }
    })
}

/// Assemble the Sturm–Liouville grid with N interior points.
pub fn build_grid(params: &SystemParams, op: &OrderingParameters, dim: Dim, config: &OracleConfig) -> Result<SturmLiouvilleGrid> {
    let n = config.points;
    if n < MIN_POINTS {
        return Err(Error::Argument(format!("oracle needs at least {MIN_POINTS} interior points, got {n}")));
    }
    let coordinate = config.coordinate.unwrap_or_else(|| default_coordinate(params));
    let half = extent(params, coordinate, config.half_width)?;
    let chart = Chart { coordinate, k: params.k };
    let (lo, hi) = match dim {
        Dim::One => (-half, half),
        Dim::Three { .. } => (0.0, half),
    };
    let h = (hi - lo) / (n + 1) as f64;
    let nodes: Vec<f64> = (0..n + 2).map(|i| lo + i as f64 * h).collect();
    let mut x = Vec::with_capacity(n + 2);
    let mut q = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    for (i, &s) in nodes.iter().enumerate() {
        let (xi, u) = chart.point(s);
        x.push(xi);
        if i == 0 || i == n + 1 {
            continue;
        }
        let (_, qi, wi) = chart.coefficients(u, effective_potential(params, op, dim, xi, u));
        q.push(qi);
        w.push(wi);
    }
    let p: Vec<f64> = (0..=n).map(|i| chart.face_p(lo + (i as f64 + 0.5) * h)).collect();
    if let Some(bad) = p.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::Constraint(format!("kinetic coefficient 1/m must be positive on the grid, found {bad}")));
    }
    if q.iter().chain(w.iter()).any(|v| !v.is_finite()) {
        return Err(Error::Domain("effective potential is not finite on the grid".into()));
    }
    Ok(SturmLiouvilleGrid { coordinate, nodes, x, p, q, w, h })
}

/// Symmetric tridiagonal matrix of the Hermitian operator.
pub fn build_operator(params: &SystemParams, op: &OrderingParameters, dim: Dim, config: &OracleConfig) -> Result<SymTridiagonal> {
    build_grid(params, op, dim, config)?.matrix(params.hbar)
}

/// Lowest `count` eigenvalues of a symmetric tridiagonal matrix.
pub fn eigenvalues(matrix: &SymTridiagonal, count: usize) -> Result<Vec<f64>> {
    matrix.eigenvalues(count)
}

/// One oracle level at three resolutions N, 2N+1, 4N+3 (halving h each time).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleLevel {
    pub n: usize,
    pub coarse: f64,
    pub medium: f64,
    pub fine: f64,
    /// (4E_fine − E_medium)/3.
    pub extrapolated: f64,
    /// |extrapolated − fine|.
    pub error_estimate: f64,
    /// log₂ of the ratio of successive differences; ≈ 2 for a clean second-order level.
    pub observed_order: Option<f64>,
}

impl OracleLevel {
    /// Flags levels whose differences do not shrink at least linearly, when they are above noise.
    pub fn is_unstable(&self) -> bool {
        let noise = 1e-9 * self.fine.abs().max(1.0);
        match self.observed_order {
            Some(p) => p < 1.0 && (self.medium - self.fine).abs() > noise,
            None => false,
        }
    }
}

/// Richardson-extrapolated lowest `count` eigenvalues.
pub fn oracle_levels(
    params: &SystemParams,
    op: &OrderingParameters,
    dim: Dim,
    count: usize,
    config: &OracleConfig,
) -> Result<Vec<OracleLevel>> {
    let resolutions = [config.points, 2 * config.points + 1, 4 * config.points + 3];
    let mut runs = Vec::with_capacity(3);
    for &points in &resolutions {
        let cfg = OracleConfig { points, ..*config };
        runs.push(build_operator(params, op, dim, &cfg)?.eigenvalues(count)?);
    }
    Ok((0..count)
        .map(|j| {
            let (c, m, f) = (runs[0][j], runs[1][j], runs[2][j]);
            let extrapolated = (4.0 * f - m) / 3.0;
            let (d1, d2) = ((c - m).abs(), (m - f).abs());
            let observed_order = if d1 > 0.0 && d2 > 0.0 { Some((d1 / d2).log2()) } else { None };
            OracleLevel {
                n: j,
                coarse: c,
                medium: m,
                fine: f,
                extrapolated,
                error_estimate: (extrapolated - f).abs(),
                observed_order,
            }
        })
        .collect())
}

/// Number of eigenvalues of the discretized operator strictly below `threshold`.
pub fn count_below(params: &SystemParams, op: &OrderingParameters, dim: Dim, threshold: f64, config: &OracleConfig) -> Result<usize> {
    Ok(build_operator(params, op, dim, config)?.sturm_count(threshold))
}

/// Normalized eigenfunction samples (x, ψ) for level j.
pub fn oracle_wavefunction(
    params: &SystemParams,
    op: &OrderingParameters,
    dim: Dim,
    j: usize,
    config: &OracleConfig,
) -> Result<Vec<(f64, f64)>> {
    let grid = build_grid(params, op, dim, config)?;
    let matrix = grid.matrix(params.hbar)?;
    let lambda = matrix.eigenvalue(j)?;
    Ok(grid.wavefunction(&matrix.eigenvector(lambda)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelComparison {
    pub n: usize,
    pub analytic: f64,
    pub numeric: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub levels: Vec<LevelComparison>,
    pub tol: f64,
    pub pass: bool,
}

/// Per-level absolute and relative errors; passes iff every relative error is within `tol`.
pub fn compare_spectra(analytic: &[f64], numeric: &[f64], tol: f64) -> Result<ComparisonReport> {
    if analytic.len() != numeric.len() {
        return Err(Error::Argument(format!(
            "spectra differ in length: {} analytic vs {} numeric",
            analytic.len(),
            numeric.len()
        )));
    }
    let levels: Vec<LevelComparison> = analytic
        .iter()
        .zip(numeric)
        .enumerate()
        .map(|(n, (&a, &b))| {
            let abs_err = (a - b).abs();
            let rel_err = if a == 0.0 { abs_err } else { abs_err / a.abs() };
            LevelComparison { n, analytic: a, numeric: b, abs_err, rel_err }
        })
        .collect();
    let pass = levels.iter().all(|l| l.rel_err <= tol);
    Ok(ComparisonReport { levels, tol, pass })
}
