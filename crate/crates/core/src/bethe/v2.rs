use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{bethe_residual, constraint_check, solve_roots, BetheProblem, BetheSolution, Closure, ConstraintRecord, Variant};
use crate::error::{Error, Result};
use crate::params::{Potential, SystemParams};
use crate::quantum_higgs::OrderingParameters;
use crate::specfn::{central_derivatives, erf, gamma, integrate, spherical_harmonic_real, QuadOptions};

/// Symmetry sector: even/odd states on the line, or orbital number l radially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Line { odd: bool },
    Radial { l: usize },
}

impl Sector {
    /// l ∈ {0, ½} on the line.
    pub fn line(l: f64) -> Result<Self> {
        if l == 0.0 || l == 0.5 {
            Ok(Sector::Line { odd: l == 0.5 })
        } else {
            Err(Error::Domain(format!("1D sector label must be 0 or 1/2, got {l}")))
        }
    }

    pub fn l_label(&self) -> f64 {
        match *self {
            Sector::Line { odd } => if odd { 0.5 } else { 0.0 },
            Sector::Radial { l } => l as f64,
        }
    }

    /// Exponent s of (kx²)^s in the reduced function: l on the line, (l+1)/2 for χ = rR.
    pub fn l_eff(&self) -> f64 {
        match *self {
            Sector::Line { .. } => self.l_label(),
            Sector::Radial { l } => 0.5 * (l as f64 + 1.0),
        }
    }

    pub fn kappa(&self) -> f64 {
        2.0 * self.l_eff() + 0.5
    }

    fn centrifugal_shift(&self) -> f64 {
        match *self {
            Sector::Line { .. } => 0.0,
            Sector::Radial { l } => 0.25 * (l * (l + 1)) as f64,
        }
    }

    fn variant(&self) -> Variant {
        match self {
            Sector::Line { .. } => Variant::Nonhermitian1d,
            Sector::Radial { .. } => Variant::Nonhermitian3d,
        }
    }

    /// ᾱ − γ̄ = n + l_eff + ¾, which makes |Φ|² reduce to erf/Gaussian moments.
    pub fn gap(&self, n: usize) -> f64 {
        n as f64 + self.l_eff() + 0.75
    }
}

/// Ordering data consumed by a state: σ₁ against its closure value and the fixed gap ᾱ − γ̄.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderingRecord {
    pub sigma1: f64,
    pub sigma1_required: f64,
    pub sigma2: f64,
    pub gap: f64,
    pub gap_required: f64,
}

/// σ₁ (+ l(l+1)/4 radially) = μΣz² + (2−μ)Σz − 2n² − 2l_eff + D(D + 3/2).
fn sigma1_required(n: usize, sector: Sector, roots: &[f64], mu: f64, gap: f64) -> f64 {
    let s1: f64 = roots.iter().sum();
    let s2: f64 = roots.iter().map(|z| z * z).sum();
    let nf = n as f64;
    mu * s2 + (2.0 - mu) * s1 - 2.0 * nf * nf - 2.0 * sector.l_eff() + gap * (gap + 1.5) - sector.centrifugal_shift()
}

fn require_v2(params: &SystemParams) -> Result<()> {
    if params.potential != Potential::Nonpolynomial {
        return Err(Error::Unsupported("Bethe states are implemented for the nonpolynomial potential".into()));
    }
    if params.k == 0.0 {
        return Err(Error::Domain("Bethe states require k ≠ 0".into()));
    }
    Ok(())
}

/// Ordering with the given γ̄ that satisfies the gap and σ₁ closure for these roots.
pub fn closure_ordering(n: usize, sector: Sector, roots: &[f64], gamma_bar: f64, params: &SystemParams) -> Result<OrderingParameters> {
    require_v2(params)?;
    let gap = sector.gap(n);
    let sigma1 = sigma1_required(n, sector, roots, params.mu(), gap);
    OrderingParameters::new(gamma_bar + gap, gamma_bar, -(sigma1 + 3.0 * gamma_bar) / 4.0)
}

/// Quasi-exact state Φ = 𝒩 e^{−ω₀x²/(2ħu)} u^{n−D} (|k|x²)^p Π(z − zᵢ), z = kx²/u, with p = l on the
/// line (odd states carry sign x) and p = l/2 for the radial factor R(r).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetheState {
    pub solution: BetheSolution,
    pub sector: Sector,
    pub params: SystemParams,
    pub op: OrderingParameters,
    pub normalization: f64,
}

impl BetheState {
    fn power(&self) -> f64 {
        match self.sector {
            Sector::Line { .. } => self.sector.l_label(),
            Sector::Radial { l } => 0.5 * l as f64,
        }
    }

    /// Unnormalized Φ(x) on the line or R(r) radially; zero outside the k < 0 box.
    pub fn profile(&self, x: f64) -> f64 {
        let p = &self.params;
        let u = p.u(x);
        if u <= 0.0 {
            return 0.0;
        }
        let z = p.k * x * x / u;
        let power = self.power();
        if x == 0.0 && power > 0.0 {
            return 0.0;
        }
        let mut ln = -p.omega0 * x * x / (2.0 * p.hbar * u) + (self.solution.d) * u.ln();
        if power > 0.0 {
            ln += power * (p.k.abs() * x * x).ln();
        }
        let mut sign = 1.0;
        for zi in &self.solution.roots {
            let f = z - zi;
            if f == 0.0 {
                return 0.0;
            }
            ln += f.abs().ln();
            sign *= f.signum();
        }
        if matches!(self.sector, Sector::Line { odd: true }) {
            sign *= x.signum();
        }
        sign * ln.exp()
    }

    /// Normalized Φ(x) (line) or R(r) (radial).
    pub fn value(&self, x: f64) -> f64 {
        self.normalization * self.profile(x)
    }

    /// Reduced function solving the second-order equation: Φ on the line, χ = rR radially.
    pub fn reduced(&self, x: f64) -> f64 {
        match self.sector {
            Sector::Line { .. } => self.value(x),
            Sector::Radial { .. } => x * self.value(x),
        }
    }

    /// Φ(r, θ, φ) = R(r)·Y_{l,m}(θ, φ) with real spherical harmonics.
    pub fn wavefunction_3d(&self, m: i64, r: f64, theta: f64, phi: f64) -> Result<f64> {
        match self.sector {
            Sector::Radial { l } => Ok(self.value(r) * spherical_harmonic_real(l, m, theta, phi)?),
            Sector::Line { .. } => Err(Error::Argument("state lives on the line".into())),
        }
    }

    /// Residual of the generalized equation
    /// f'' + 4kx(1+D)/u f' + [(4σ₁k + kl(l+1))/u + (2E/ħ² + 4σ₂k)/u² − ω₀²x²/(ħ²u⁴) − l(l+1)/x²] f
    /// for the reduced function, with the sum of term magnitudes as scale.
    pub fn ode_residual(&self, x: f64, h: f64) -> (f64, f64) {
        let p = &self.params;
        let (k, hb) = (p.k, p.hbar);
        let u = p.u(x);
        let gap = self.op.gap();
        let cent = match self.sector {
            Sector::Line { .. } => 0.0,
            Sector::Radial { l } => (l * (l + 1)) as f64,
        };
        let (f, d1, d2) = central_derivatives(|y| self.reduced(y), x, h);
        let c1 = 4.0 * k * x * (1.0 + gap) / u;
        let c0 = (4.0 * self.op.sigma1() * k + k * cent) / u
            + (2.0 * self.solution.energy / (hb * hb) + 4.0 * self.op.sigma2() * k) / (u * u)
            - p.omega0 * p.omega0 * x * x / (hb * hb * u.powi(4))
            - if cent > 0.0 { cent / (x * x) } else { 0.0 };
        (d2 + c1 * d1 + c0 * f, d2.abs() + (c1 * d1).abs() + (c0 * f).abs())
    }
}

/// Build and verify the state for explicit roots and ordering.
pub fn v2_state(n: usize, sector: Sector, roots: &[f64], op: &OrderingParameters, params: &SystemParams) -> Result<BetheState> {
    require_v2(params)?;
    if roots.len() != n {
        return Err(Error::Argument(format!("expected {n} roots, got {}", roots.len())));
    }
    let (k, hb) = (params.k, params.hbar);
    let mu = params.mu();
    let gap = op.gap();
    if k > 0.0 && gap <= 0.0 {
        return Err(Error::Unbounded(format!(
            "k > 0 requires γ̄ − ᾱ < 0 for a bounded state, got γ̄ − ᾱ = {}",
            -gap
        )));
    }
    let gap_required = sector.gap(n);
    if (gap - gap_required).abs() > 1e-12 * gap_required.max(1.0) {
        return Err(Error::Constraint(format!("ordering gap ᾱ − γ̄ = {gap} must equal {gap_required}")));
    }
    let sigma1 = op.sigma1();
    let required = sigma1_required(n, sector, roots, mu, gap);
    if (sigma1 - required).abs() > 1e-9 * required.abs().max(1.0) {
        return Err(Error::Constraint(format!("σ₁ = {sigma1} violates its closure value {required}")));
    }
    let nf = n as f64;
    let le = sector.l_eff();
    let sum: f64 = roots.iter().sum();
    let sigma2 = op.sigma2();
    let energy = (2.0 * nf + 2.0 * le + 0.5) * hb * params.omega0 + 2.0 * hb * hb * k * (-mu * sum - sigma2 - gap * (gap + 1.0));

    let d = nf - gap;
    let epsilon = energy / (2.0 * hb * hb * k) + sigma2 - mu * (0.25 + le + d + gap) - d * (d + 1.0 + 2.0 * gap);
    let sigma = sigma1 + sector.centrifugal_shift() + d * (d + 1.5 + 2.0 * le + 2.0 * gap) + 2.0 * le * (1.0 + gap);
    let c = [epsilon + sigma + mu * (d + gap), -epsilon - 2.0 * mu * (d + gap), mu * (d + gap)];
    let problem = BetheProblem::v2_form(n, sector.kappa(), mu, c)?;
    let residuals = bethe_residual(&problem, roots)?;
    let closure = constraint_check(&problem, roots, Closure::Corrected);
    let scale = c.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    let worst = residuals.iter().fold(closure.max_abs() / scale, |a, v| a.max(v.abs()));
    if worst > 1e-9 {
        return Err(Error::Convergence(format!("Bethe solution failed verification (residual {worst})")));
    }
    let solution = BetheSolution {
        n,
        l: sector.l_label(),
        roots: roots.to_vec(),
        d,
        energy,
        constraints: ConstraintRecord { c0: closure.c0, c1: closure.c1, c2: closure.c2, residuals },
        ordering_record: OrderingRecord { sigma1, sigma1_required: required, sigma2, gap, gap_required },
    };
    let normalization = closed_form_normalization(sector, roots, params)?;
    Ok(BetheState { solution, sector, params: *params, op: *op, normalization })
}

fn state_for_ordering(n: usize, sector: Sector, op: &OrderingParameters, params: &SystemParams) -> Result<BetheState> {
    require_v2(params)?;
    let sets = solve_roots(n, sector.l_label(), params.mu(), sector.variant())?;
    let gap = sector.gap(n);
    let best = sets
        .iter()
        .map(|r| ((op.sigma1() - sigma1_required(n, sector, r, params.mu(), gap)).abs(), r))
        .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .map(|(_, r)| r.clone())
        .unwrap_or_default();
    v2_state(n, sector, &best, op, params)
}

/// 1D state with l ∈ {0, ½}; the root set is the one whose σ₁ closure the ordering satisfies.
pub fn v2_state_1d(n: usize, l: f64, op: &OrderingParameters, params: &SystemParams) -> Result<BetheState> {
    state_for_ordering(n, Sector::line(l)?, op, params)
}

/// Radial state with orbital number l on the regular branch s = (l+1)/2.
pub fn v2_state_3d(n: usize, l: usize, op: &OrderingParameters, params: &SystemParams) -> Result<BetheState> {
    state_for_ordering(n, Sector::Radial { l }, op, params)
}

/// Every root set of degree n with its closure ordering at the given γ̄, ordered by energy.
pub fn v2_states(n: usize, sector: Sector, gamma_bar: f64, params: &SystemParams) -> Result<Vec<BetheState>> {
    require_v2(params)?;
    let mut out = Vec::new();
    for roots in solve_roots(n, sector.l_label(), params.mu(), sector.variant())? {
        let op = closure_ordering(n, sector, &roots, gamma_bar, params)?;
        out.push(v2_state(n, sector, &roots, &op, params)?);
    }
    out.sort_by(|a, b| a.solution.energy.partial_cmp(&b.solution.energy).unwrap());
    Ok(out)
}

/// M_j = ∫ e^{−μt²} t^{2j} dt over (0, 1) for k > 0 and (0, ∞) for k < 0, μ = ω₀/(ħ|k|).
fn moments(mu: f64, k_positive: bool, count: usize) -> Result<Vec<f64>> {
    let mut m = Vec::with_capacity(count);
    if k_positive {
        let e = (-mu).exp();
        m.push(0.5 * (PI / mu).sqrt() * erf(mu.sqrt())?);
        for j in 1..count {
            m.push(((2 * j - 1) as f64 * m[j - 1] - e) / (2.0 * mu));
        }
    } else {
        for j in 0..count {
            m.push(gamma(j as f64 + 0.5)? / (2.0 * mu.powf(j as f64 + 0.5)));
        }
    }
    Ok(m)
}

/// 𝒩 from the exact reduction of ∫|Φ|² to Gaussian/erf moments in t = √|k|x/√u, valid at the
/// gap ᾱ − γ̄ = n + l_eff + ¾.
fn closed_form_normalization(sector: Sector, roots: &[f64], params: &SystemParams) -> Result<f64> {
    let k = params.k;
    let mu = params.omega0 / (params.hbar * k.abs());
    let sgn = k.signum();
    // S(σt²) as a polynomial in w = t², then squared.
    let mut s = vec![1.0];
    for zi in roots {
        let mut next = vec![0.0; s.len() + 1];
        for (j, c) in s.iter().enumerate() {
            next[j + 1] += sgn * c;
            next[j] -= zi * c;
        }
        s = next;
    }
    let mut sq = vec![0.0; 2 * s.len() - 1];
    for (i, a) in s.iter().enumerate() {
        for (j, b) in s.iter().enumerate() {
            sq[i + j] += a * b;
        }
    }
    let shift = (2.0 * sector.l_eff()).round() as usize;
    let m = moments(mu, k > 0.0, sq.len() + shift)?;
    let integral: f64 = sq.iter().enumerate().map(|(j, c)| c * m[j + shift]).sum();
    let pref = match sector {
        Sector::Line { .. } => 2.0 / k.abs().sqrt(),
        Sector::Radial { .. } => k.abs().powf(-1.5),
    };
    Ok((pref * integral).powf(-0.5))
}

/// Integration domain for |Φ|².
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadratureDomain {
    /// ∫|Φ|² dx over |x| < edge.
    Line { edge: f64 },
    /// ∫|R|² r² dr over 0 < r < edge.
    Radial { edge: f64 },
}

impl QuadratureDomain {
    pub fn for_state(state: &BetheState) -> Self {
        let edge = state.params.edge();
        match state.sector {
            Sector::Line { .. } => QuadratureDomain::Line { edge },
            Sector::Radial { .. } => QuadratureDomain::Radial { edge },
        }
    }
}

/// ∫|f|² over the domain by adaptive quadrature; divergent tails raise an unbounded-state error.
pub fn normalization_quadrature<F: Fn(f64) -> f64>(f: F, domain: QuadratureDomain) -> Result<f64> {
    let (edge, radial) = match domain {
        QuadratureDomain::Line { edge } => (edge, false),
        QuadratureDomain::Radial { edge } => (edge, true),
    };
    let weight = |x: f64| if radial { x * x } else { 1.0 };
    if edge.is_infinite() {
        let tail = |x: f64| f(x).powi(2) * weight(x) * x + if radial { 0.0 } else { f(-x).powi(2) * x };
        let (near, far) = (tail(1e4), tail(1e8));
        if !(near.is_finite() && far.is_finite()) || (far > 0.0 && far >= 1e-3 * near) {
            return Err(Error::Unbounded(format!("|Φ|² tail does not decay: x|Φ|² = {near:e} at 1e4, {far:e} at 1e8")));
        }
    }
    let opts = QuadOptions::tight();
    let g = |x: f64| f(x).powi(2) * weight(x);
    let total = if radial {
        integrate(g, 0.0, edge, opts)
    } else {
        integrate(g, -edge, 0.0, opts).and_then(|a| integrate(g, 0.0, edge, opts).map(|b| a + b))
    };
    match total {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(v) => Err(Error::Unbounded(format!("normalization integral is {v}"))),
        Err(Error::Divergence(m)) | Err(Error::Convergence(m)) => Err(Error::Unbounded(m)),
        Err(e) => Err(e),
    }
}

/// d^j/dμ^j [erf(√μ)/√μ] = (2/√π)(−1)^j ∫₀¹ t^{2j} e^{−μt²} dt.
fn erf_ratio_derivative(mu: f64, j: usize) -> Result<f64> {
    let m = moments(mu, true, j + 1)?;
    Ok(2.0 / PI.sqrt() * if j.is_multiple_of(2) { 1.0 } else { -1.0 } * m[j])
}

/// Normalization constant as printed for the explicit n ≤ 1 states, with μ = ω₀/(ħ|k|), the
/// signed root z₁, and the radicand taken in absolute value. `None` outside the printed sectors.
pub fn printed_normalization(state: &BetheState) -> Result<Option<f64>> {
    let p = &state.params;
    let (k, hb, w) = (p.k, p.hbar, p.omega0);
    let ka = k.abs();
    let mu = w / (hb * ka);
    let z = state.solution.roots.first().copied().unwrap_or(0.0);
    let sp = PI.sqrt();
    let d = |j: usize| erf_ratio_derivative(mu, j);
    let e = (-mu).exp();
    let ef = erf(mu.sqrt())?;
    let radicand = match (state.sector, state.solution.n, k > 0.0) {
        (Sector::Line { odd: false }, 0, false) => return Ok(Some((w / (hb * PI)).powf(0.25))),
        (Sector::Line { odd: false }, 0, true) => return Ok(Some((4.0 * w / (hb * PI)).powf(0.25) / ef.sqrt())),
        (Sector::Line { odd: true }, 0, false) => -(w / hb).powf(1.5) * 2.0 / (ka * sp),
        (Sector::Line { odd: true }, 0, true) => mu.powf(1.5) * k.sqrt() / (0.5 * sp * ef - mu.sqrt() * e),
        (Sector::Line { odd: false }, 1, false) => mu.powf(2.5) * ka.sqrt() / (sp * (0.75 + mu * z + mu * mu * z * z)),
        (Sector::Line { odd: false }, 1, true) => {
            mu.powf(2.5) * k.sqrt()
                / (2.0 * ef / mu.sqrt() * (0.75 - mu * z + mu * mu * z * z) - (1.5 - 2.0 * mu * z + mu * mu * z * z) * e / sp)
        }
        (Sector::Line { odd: true }, 1, false) => {
            -mu.powf(3.5) * ka.sqrt() / (sp * (0.5 * z * z * mu.powi(3) + 1.5 * mu * z + 1.875 * mu * mu * z * z))
        }
        (Sector::Line { odd: true }, 1, true) => -k.sqrt() / (d(3)? + 2.0 * z * d(2)? + z * z * d(1)?),
        (Sector::Radial { l: 0 }, 0, true) => mu.powf(1.5) * k.sqrt() / (PI * (ef - 2.0 * mu.sqrt() * e)),
        (Sector::Radial { l: 0 }, 0, false) => -mu.powf(1.5) * ka.sqrt() / PI,
        (Sector::Radial { l: 0 }, 1, true) => 2.0 * k * k.sqrt() / (-sp * (d(3)? + 2.0 * z * d(2)? + z * z * d(1)?)),
        (Sector::Radial { l: 0 }, 1, false) => 8.0 * mu.powf(3.5) * ka.sqrt() / (sp * (15.0 + 3.0 * mu * z + z * z)),
        (Sector::Radial { l: 1 }, 1, true) => k.sqrt() / (2.0 * PI * sp * (d(4)? - 2.0 * z * d(3)? + z * z * d(2)?)),
        (Sector::Radial { l: 1 }, 1, false) => mu.powf(4.5) * ka.sqrt() / (PI * (105.0 / 4.0 + 15.0 * mu * z + 3.0 * mu * mu * z * z)),
        _ => return Ok(None),
    };
    Ok(Some(radicand.abs().sqrt()))
}
