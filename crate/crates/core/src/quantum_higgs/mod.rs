//! Exact spectra and eigenfunctions of the general-ordered Higgs oscillator.

mod ordering;

pub use ordering::{ordering_coefficients, OrderingCoefficients, OrderingParameters};

use crate::error::{check_finite, Error, Result};
use crate::params::{Potential, SystemParams};
use crate::specfn::{hyp2f1_terminating, jacobi_polynomial, ln_gamma, spherical_harmonic_real};
use crate::spectrum::{Kind, Method, SpectrumEntry};

fn require_higgs(params: &SystemParams) -> Result<()> {
    if params.potential != Potential::Higgs {
        return Err(Error::Unsupported("exact spectra are implemented for the Higgs potential only".into()));
    }
    Ok(())
}

/// Number of 1D bound states for k < 0 (those with n < μ̃ − ½); `None` when unbounded in count.
pub fn higgs1d_bound_state_count(op: &OrderingParameters, params: &SystemParams) -> Result<Option<usize>> {
    if params.k >= 0.0 {
        return Ok(None);
    }
    let c = ordering_coefficients(op, params)?;
    Ok(Some(count_below(c.mu_tilde - 0.5)))
}

/// Number of 3D bound states in sector l for k < 0 (those with 2n_r + l + 3/2 < μ̃).
pub fn higgs3d_bound_state_count(l: usize, op: &OrderingParameters, params: &SystemParams) -> Result<Option<usize>> {
    if params.k >= 0.0 {
        return Ok(None);
    }
    let c = ordering_coefficients(op, params)?;
    Ok(Some(count_below(0.5 * (c.mu_tilde - l as f64 - 1.5))))
}

/// Count of non-negative integers strictly below `limit`.
fn count_below(limit: f64) -> usize {
    if limit <= 0.0 {
        0
    } else {
        limit.ceil() as usize
    }
}

/// 1D Higgs energy Eₙ = (n+½)ħ²|k|μ̃ ± (n² + n + 3/2 + 2(ᾱ+γ̄))ħ²|k|/2, sign of k.
pub fn higgs1d_energy(n: usize, op: &OrderingParameters, params: &SystemParams) -> Result<f64> {
    require_higgs(params)?;
    let nf = n as f64;
    let h = params.hbar;
    let k = params.k;
    let c = ordering_coefficients(op, params)?;
    if k == 0.0 {
        return Ok((nf + 0.5) * h * params.omega0);
    }
    if k < 0.0 && nf >= c.mu_tilde - 0.5 {
        return Err(Error::NoBoundState { n, limit: c.mu_tilde - 0.5 });
    }
    let quad = (nf * nf + nf + 1.5 + 2.0 * op.sum()) * h * h * k.abs() / 2.0;
    let lin = (nf + 0.5) * h * h * k.abs() * c.mu_tilde;
    Ok(if k > 0.0 { lin + quad } else { lin - quad })
}

/// Continuum energy E_ρ = [(ρ² + μ² + 1)/2 + 2η₂]ħ²|k| for k < 0.
pub fn higgs1d_continuum_energy(rho: f64, op: &OrderingParameters, params: &SystemParams) -> Result<f64> {
    require_higgs(params)?;
    check_finite("rho", rho)?;
    if params.k >= 0.0 {
        return Err(Error::Unsupported("continuum states exist only for k < 0".into()));
    }
    let mu = params.mu();
    Ok(((rho * rho + mu * mu + 1.0) / 2.0 + 2.0 * op.eta2()) * params.hbar * params.hbar * params.k.abs())
}

/// 3D Higgs energy E = Nħ²|k|μ̃ ± (N² + 2(ᾱ+γ̄) + 5/4)ħ²|k|/2 with N = 2n_r + l + 3/2.
pub fn higgs3d_energy(n_r: usize, l: usize, op: &OrderingParameters, params: &SystemParams) -> Result<f64> {
    require_higgs(params)?;
    let big_n = 2.0 * n_r as f64 + l as f64 + 1.5;
    let h = params.hbar;
    let k = params.k;
    let c = ordering_coefficients(op, params)?;
    if k == 0.0 {
        return Ok(big_n * h * params.omega0);
    }
    if k < 0.0 && big_n >= c.mu_tilde {
        return Err(Error::NoBoundState { n: n_r, limit: 0.5 * (c.mu_tilde - l as f64 - 1.5) });
    }
    let quad = (big_n * big_n + 2.0 * op.sum() + 1.25) * h * h * k.abs() / 2.0;
    let lin = big_n * h * h * k.abs() * c.mu_tilde;
    Ok(if k > 0.0 { lin + quad } else { lin - quad })
}

/// Bound spectrum n = 0..=n_max (k ≥ 0) or all bound states up to n_max (k < 0).
pub fn higgs1d_spectrum(n_max: usize, op: &OrderingParameters, params: &SystemParams) -> Result<Vec<SpectrumEntry>> {
    let limit = higgs1d_bound_state_count(op, params)?.map_or(n_max + 1, |c| c.min(n_max + 1));
    (0..limit)
        .map(|n| Ok(SpectrumEntry { n, l: 0.0, energy: higgs1d_energy(n, op, params)?, kind: Kind::Bound, method: Method::Exact }))
        .collect()
}

pub fn higgs3d_spectrum(n_max: usize, l: usize, op: &OrderingParameters, params: &SystemParams) -> Result<Vec<SpectrumEntry>> {
    let limit = higgs3d_bound_state_count(l, op, params)?.map_or(n_max + 1, |c| c.min(n_max + 1));
    (0..limit)
        .map(|n| {
            Ok(SpectrumEntry { n, l: l as f64, energy: higgs3d_energy(n, l, op, params)?, kind: Kind::Bound, method: Method::Exact })
        })
        .collect()
}

/// (1−t²)^{q/2}2^{−q}F(−n, n+2q+1; 1+q; (1−t)/2)/Γ(1+q) = P^{−q}_{n+q}(t), returned as (log of the
/// positive prefactor, polynomial factor).
fn legendre_terminating_parts(n: usize, q: f64, one_minus_t2: f64, t: f64) -> Result<(f64, f64)> {
    let ln_pre = 0.5 * q * one_minus_t2.ln() - q * std::f64::consts::LN_2 - ln_gamma(1.0 + q)?;
    let poly = hyp2f1_terminating(-(n as f64), n as f64 + 2.0 * q + 1.0, 1.0 + q, 0.5 * (1.0 - t))?;
    Ok((ln_pre, poly))
}

/// Normalized 1D Higgs eigenfunction ψₙ(x) of the Hermitian-ordered problem.
///
/// k > 0: ψ = C u^{−3/4} P^{−μ̃}_{n+μ̃}(√k x/√u); k < 0: ψ = C u^{−1/2} P^{−q}_{n+q}(√|k| x) with
/// q = μ̃ − ½ − n.
pub fn higgs1d_wavefunction(n: usize, op: &OrderingParameters, params: &SystemParams, x: f64) -> Result<f64> {
    require_higgs(params)?;
    check_finite("x", x)?;
    let k = params.k;
    let c = ordering_coefficients(op, params)?;
    let nf = n as f64;
    let ln_fact_n = ln_gamma(nf + 1.0)?;
    if k > 0.0 {
        let u = params.u(x);
        let t = k.sqrt() * x / u.sqrt();
        let q = c.mu_tilde;
        let ln_c = 0.5 * ((k.sqrt() * (2.0 * nf + 2.0 * q + 1.0) / 2.0).ln() + ln_gamma(nf + 2.0 * q + 1.0)? - ln_fact_n);
        let (ln_pre, poly) = legendre_terminating_parts(n, q, 1.0 / u, t)?;
        Ok((ln_c + ln_pre - 0.75 * u.ln()).exp() * poly)
    } else if k < 0.0 {
        if nf >= c.mu_tilde - 0.5 {
            return Err(Error::NoBoundState { n, limit: c.mu_tilde - 0.5 });
        }
        let q = c.mu_tilde - 0.5 - nf;
        let t_raw = (-k).sqrt() * x;
        if t_raw.abs() > 1.0 + 4.0 * f64::EPSILON {
            return Err(Error::Domain(format!("x = {x} lies outside |x| < 1/√|k|")));
        }
        // The edge computed as 1/√|k| can round a few ulp past t = 1.
        let t = t_raw.clamp(-1.0 + f64::EPSILON, 1.0 - f64::EPSILON);
        let u = (1.0 - t) * (1.0 + t);
        let ln_c = 0.5 * (((-k).sqrt() * q).ln() + ln_gamma(2.0 * c.mu_tilde - nf)? - ln_fact_n);
        let (ln_pre, poly) = legendre_terminating_parts(n, q, u, t)?;
        Ok((ln_c + ln_pre - 0.5 * u.ln()).exp() * poly)
    } else {
        Err(Error::Unsupported("k = 0 is the harmonic oscillator; no curved-space eigenfunction".into()))
    }
}

/// Radial function χ(r) of the 3D Higgs oscillator; normalized (∫χ²dr = 1) for k > 0 and in the
/// unnormalized hypergeometric form z^{(l+1)/2}(1−z)^d ₂F₁(−n_r, μ̃−n_r; l+3/2; z), z = |k|r², for k < 0.
pub fn higgs3d_radial(n_r: usize, l: usize, op: &OrderingParameters, params: &SystemParams, r: f64) -> Result<f64> {
    require_higgs(params)?;
    check_finite("r", r)?;
    if r < 0.0 {
        return Err(Error::Domain(format!("radius must be non-negative, got {r}")));
    }
    let k = params.k;
    let c = ordering_coefficients(op, params)?;
    let (nf, lf) = (n_r as f64, l as f64);
    if k > 0.0 {
        let mt = c.mu_tilde;
        let kr2 = k * r * r;
        if kr2 == 0.0 {
            return Ok(0.0);
        }
        let u = 1.0 + kr2;
        let ln_g = ln_gamma(nf + mt + 1.0)? + ln_gamma(nf + lf + 1.5)?
            - (2.0 * nf + mt + lf + 1.5).ln()
            - ln_gamma(nf + 1.0)?
            - ln_gamma(nf + mt + lf + 1.5)?;
        let ln_norm = 0.5 * ((2.0 * k.sqrt()).ln() - ln_g);
        let ln_prof = 0.5 * (lf + 1.0) * kr2.ln() - (0.5 * lf + 0.5 * mt + 1.25) * u.ln();
        let p = jacobi_polynomial(n_r, mt, lf + 0.5, (kr2 - 1.0) / (kr2 + 1.0))?;
        Ok((ln_norm + ln_prof).exp() * p)
    } else if k < 0.0 {
        let big_n = 2.0 * nf + lf + 1.5;
        if big_n >= c.mu_tilde {
            return Err(Error::NoBoundState { n: n_r, limit: 0.5 * (c.mu_tilde - lf - 1.5) });
        }
        let z = -k * r * r;
        if z >= 1.0 {
            return Err(Error::Domain(format!("r = {r} lies outside r < 1/√|k|")));
        }
        let d = 0.5 * c.mu_tilde - 0.5 * lf - 1.25 - nf;
        let f = hyp2f1_terminating(-nf, c.mu_tilde - nf, lf + 1.5, z)?;
        Ok(z.powf(0.5 * (lf + 1.0)) * (1.0 - z).powf(d) * f)
    } else {
        Err(Error::Unsupported("k = 0 is the isotropic harmonic oscillator".into()))
    }
}

/// Ψ(r, θ, φ) = χ(r)/r · Y_{l,m}(θ, φ) with real spherical harmonics.
pub fn higgs3d_wavefunction(
    n_r: usize,
    l: usize,
    m_q: i64,
    op: &OrderingParameters,
    params: &SystemParams,
    r: f64,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    if m_q.unsigned_abs() as usize > l {
        return Err(Error::Domain(format!("|m| = {} exceeds l = {l}", m_q.abs())));
    }
    if r == 0.0 {
        // χ/r → 0 for l > 0; the l = 0 limit is finite but irrelevant for bound-state sampling.
        let eps = 1e-12;
        return Ok(higgs3d_radial(n_r, l, op, params, eps)? / eps * spherical_harmonic_real(l, m_q, theta, phi)?);
    }
    Ok(higgs3d_radial(n_r, l, op, params, r)? / r * spherical_harmonic_real(l, m_q, theta, phi)?)
}

/// Effective ordering potential of the Hermitian operator: −ħ²kη₁u − 2ħ²kη₂.
pub fn ordering_potential(op: &OrderingParameters, params: &SystemParams, x: f64) -> f64 {
    let h2k = params.hbar * params.hbar * params.k;
    -h2k * op.eta1() * params.u(x) - 2.0 * h2k * op.eta2()
}
