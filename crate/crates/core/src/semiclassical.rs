//! Modified Bohr–Sommerfeld quantization ∮p dx = (n + ½)h.

use std::f64::consts::PI;

use serde::Serialize;

use crate::classical::{v2_period, v2_trajectory};
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::specfn::complete_elliptic;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SemiclassicalLevel {
    pub n: usize,
    pub l: usize,
    pub energy: f64,
    /// Amplitude A (Higgs 1D) or modulus kA² (nonpolynomial) of the quantized orbit.
    pub amplitude_or_modulus: Option<f64>,
    /// |∮p dx − (n+½)h| at the solution, when the level is found numerically.
    pub residual: Option<f64>,
}

/// Eₙ = (n+½)ħω₀ + (n²+n+¼)ħ²k/2.
pub fn higgs_semiclassical_energy(n: usize, params: &SystemParams) -> f64 {
    let nf = n as f64;
    let h = params.hbar;
    (nf + 0.5) * h * params.omega0 + (nf * nf + nf + 0.25) * h * h * params.k / 2.0
}

/// Amplitude A of the Higgs orbit with energy E = ε/2: A² = 2E/(ω₀² + 2kE).
pub fn higgs_amplitude_for_energy(energy: f64, params: &SystemParams) -> Option<f64> {
    let den = params.omega0 * params.omega0 + 2.0 * params.k * energy;
    (den > 0.0 && energy >= 0.0).then(|| (2.0 * energy / den).sqrt())
}

pub fn higgs_semiclassical_spectrum(n_max: usize, params: &SystemParams) -> Vec<SemiclassicalLevel> {
    (0..=n_max)
        .map(|n| {
            let energy = higgs_semiclassical_energy(n, params);
            SemiclassicalLevel {
                n,
                l: 0,
                energy,
                amplitude_or_modulus: higgs_amplitude_for_energy(energy, params),
                residual: None,
            }
        })
        .collect()
}

/// E = Nħω₀ + N²ħ²k/2 with N = 2n_r + l + 3/2.
pub fn higgs3d_semiclassical_energy(n_r: usize, l: usize, params: &SystemParams) -> f64 {
    let big_n = 2.0 * n_r as f64 + l as f64 + 1.5;
    let h = params.hbar;
    big_n * h * params.omega0 + big_n * big_n * h * h * params.k / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActionValues {
    /// (ω₀/2k)[E(m)/(1+m) − K(m)] as printed.
    pub closed_form: f64,
    /// ∮p dx over one period of the closed-form orbit; authoritative.
    pub quadrature: f64,
}

fn check_v2_k(params: &SystemParams) -> Result<()> {
    if params.k <= 0.0 {
        return Err(Error::Unsupported(format!(
            "nonpolynomial semiclassical quantization needs k > 0, got {}",
            params.k
        )));
    }
    Ok(())
}

/// ∮p dx = ∫₀ᵀ ẋ²/u² dt by the periodic trapezoid rule, doubled until converged.
fn action_quadrature(m: f64, params: &SystemParams) -> Result<f64> {
    let a = (m / params.k).sqrt();
    let period = v2_period(a, params)?;
    let integrand = |t: f64| -> Result<f64> {
        let (x, v) = v2_trajectory(a, params, t)?;
        let u = params.u(x);
        Ok(v * v / (u * u))
    };
    let mut n = 64usize;
    let mut sum = 0.0;
    for i in 0..n {
        sum += integrand(period * i as f64 / n as f64)?;
    }
    let mut prev = period * sum / n as f64;
    while n < (1 << 22) {
        // Add the midpoints of the current grid.
        for i in 0..n {
            sum += integrand(period * (i as f64 + 0.5) / n as f64)?;
        }
        n *= 2;
        let cur = period * sum / n as f64;
        if (cur - prev).abs() <= 1e-15 * cur.abs() {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Convergence(format!("action quadrature at m = {m}")))
}

/// Action of the nonpolynomial orbit with modulus m = kA², both as printed and by quadrature.
pub fn v2_action(m: f64, params: &SystemParams) -> Result<ActionValues> {
    check_v2_k(params)?;
    if !(m > 0.0 && m < 1.0) {
        return Err(Error::Domain(format!("modulus must lie in (0,1), got {m}")));
    }
    let (kk, ee) = complete_elliptic(m)?;
    let closed_form = params.omega0 / (2.0 * params.k) * (ee / (1.0 + m) - kk);
    Ok(ActionValues { closed_form, quadrature: action_quadrature(m, params)? })
}

const M_EPS: f64 = 1e-12;

/// Solve ∮p dx = (n+½)h for the modulus by bisection; energy is ε/2 = ω₀²A²/(2(1+kA²)²).
pub fn v2_semiclassical_level(n: usize, params: &SystemParams) -> Result<SemiclassicalLevel> {
    check_v2_k(params)?;
    let target = 2.0 * PI * params.hbar * (n as f64 + 0.5);
    let f = |m: f64| action_quadrature(m, params).map(|a| a - target);
    let (mut lo, mut hi) = (M_EPS, 1.0 - M_EPS);
    let (f_lo, f_hi) = (f(lo)?, f(hi)?);
    if f_lo > 0.0 || f_hi < 0.0 {
        return Err(Error::LevelUnreachable {
            n,
            reason: format!(
                "(n+½)h = {target} is outside the action range [{}, {}] for m in (0,1)",
                f_lo + target,
                f_hi + target
            ),
        });
    }
    let mut m = 0.5 * (lo + hi);
    let mut residual = f(m)?;
    for _ in 0..200 {
        if residual.abs() < 1e-12 {
            break;
        }
        if residual < 0.0 {
            lo = m;
        } else {
            hi = m;
        }
        let mid = 0.5 * (lo + hi);
        if mid == m {
            break;
        }
        m = mid;
        residual = f(m)?;
    }
    let a2 = m / params.k;
    let eps = params.omega0 * params.omega0 * a2 / ((1.0 + m) * (1.0 + m));
    Ok(SemiclassicalLevel {
        n,
        l: 0,
        energy: 0.5 * eps,
        amplitude_or_modulus: Some(m),
        residual: Some(residual.abs()),
    })
}

/// Levels n = 0..=n_max; fails with `LevelUnreachable` at the first level without a bracket.
pub fn v2_semiclassical_spectrum(n_max: usize, params: &SystemParams) -> Result<Vec<SemiclassicalLevel>> {
    (0..=n_max).map(|n| v2_semiclassical_level(n, params)).collect()
}
