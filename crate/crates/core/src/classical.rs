//! Closed-form classical trajectories and a fixed-step RK4 integrator for the equations of motion.

use serde::Serialize;

use crate::error::{check_finite, Error, Result};
use crate::params::{Potential, SystemParams};
use crate::specfn::{complete_elliptic, jacobi_elliptic};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub x: f64,
    pub xdot: f64,
    /// First integral evaluated at this sample.
    pub eps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    /// First integral at the initial state.
    pub conserved: f64,
}

impl Trajectory {
    /// Largest relative deviation of the first integral from its initial value.
    pub fn max_relative_drift(&self) -> f64 {
        let scale = self.conserved.abs().max(f64::MIN_POSITIVE);
        self.samples.iter().map(|s| (s.eps - self.conserved).abs() / scale).fold(0.0, f64::max)
    }
}

/// The first integral ε: ẋ²/u² + ω₀²x² (Higgs) or (ẋ² + ω₀²x²)/u² (nonpolynomial); ε = 2E.
pub fn first_integral(params: &SystemParams, x: f64, xdot: f64) -> f64 {
    let u = params.u(x);
    let w2 = params.omega0 * params.omega0;
    match params.potential {
        Potential::Higgs => xdot * xdot / (u * u) + w2 * x * x,
        Potential::Nonpolynomial => (xdot * xdot + w2 * x * x) / (u * u),
    }
}

/// ẍ from the Euler–Lagrange equation of L = ẋ²/(2u²) − V(x).
pub fn acceleration(params: &SystemParams, x: f64, xdot: f64) -> f64 {
    let k = params.k;
    let u = params.u(x);
    let w2 = params.omega0 * params.omega0;
    let restoring = match params.potential {
        Potential::Higgs => w2 * u * u * x,
        Potential::Nonpolynomial => w2 * x * (1.0 - k * x * x) / u,
    };
    2.0 * k * x * xdot * xdot / u - restoring
}

/// Ω = ω₀/√(1 − kA²) of the Higgs orbit with amplitude A.
pub fn higgs_frequency(a: f64, params: &SystemParams) -> Result<f64> {
    check_finite("A", a)?;
    let d = 1.0 - params.k * a * a;
    if d <= 0.0 {
        return Err(Error::Domain(format!(
            "Higgs amplitude |A| = {} must stay below 1/√k = {}",
            a.abs(),
            1.0 / params.k.sqrt()
        )));
    }
    Ok(params.omega0 / d.sqrt())
}

/// Higgs orbit x(t) = A sin θ/√(1 − kA² sin²θ), θ = Ωt + C, with its analytic velocity.
pub fn higgs_trajectory(a: f64, phase: f64, params: &SystemParams, t: f64) -> Result<(f64, f64)> {
    check_finite("C", phase)?;
    check_finite("t", t)?;
    let omega = higgs_frequency(a, params)?;
    let (s, c) = (omega * t + phase).sin_cos();
    let d = 1.0 - params.k * a * a * s * s;
    let x = a * s / d.sqrt();
    let xdot = a * omega * c / (d * d.sqrt());
    Ok((x, xdot))
}

fn v2_modulus(a: f64, params: &SystemParams) -> Result<f64> {
    check_finite("A", a)?;
    let m = params.k * a * a;
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::Unsupported(format!(
            "closed-form nonpolynomial orbit needs kA² in [0,1], got {m}; use the integrator"
        )));
    }
    Ok(m)
}

/// Nonpolynomial orbit x(t) = A sn(ω₀t/(1+kA²)) with elliptic modulus kA² (parameter (kA²)²).
pub fn v2_trajectory(a: f64, params: &SystemParams, t: f64) -> Result<(f64, f64)> {
    check_finite("t", t)?;
    let m = v2_modulus(a, params)?;
    let c = params.omega0 / (1.0 + m);
    let e = jacobi_elliptic(c * t, m * m)?;
    Ok((a * e.sn, a * c * e.cn * e.dn))
}

/// The same orbit in the Landen-transformed form 2A sn·cn/dn(ω₀t/2)/(1+kA²) with modulus
/// m₁ = 2√(kA²)/(1+kA²).
pub fn v2_trajectory_landen(a: f64, params: &SystemParams, t: f64) -> Result<(f64, f64)> {
    check_finite("t", t)?;
    let m = v2_modulus(a, params)?;
    let m1 = 2.0 * m.sqrt() / (1.0 + m);
    let p = (m1 * m1).min(1.0);
    let arg = 0.5 * params.omega0 * t;
    let e = jacobi_elliptic(arg, p)?;
    let scale = 2.0 * a / (1.0 + m);
    let x = scale * e.sn * e.cn / e.dn;
    let num = e.cn * e.cn * e.dn * e.dn - e.sn * e.sn * e.dn * e.dn + p * e.sn * e.sn * e.cn * e.cn;
    let xdot = scale * 0.5 * params.omega0 * num / (e.dn * e.dn);
    Ok((x, xdot))
}

/// Period 4K(m²)(1+m)/ω₀ of the closed-form nonpolynomial orbit, m = kA² < 1.
pub fn v2_period(a: f64, params: &SystemParams) -> Result<f64> {
    let m = v2_modulus(a, params)?;
    let (k, _) = complete_elliptic(m * m)?;
    Ok(4.0 * k * (1.0 + m) / params.omega0)
}

fn admissible(params: &SystemParams, x: f64, xdot: f64) -> bool {
    x.is_finite() && xdot.is_finite() && params.u(x) > 0.0
}

/// Fixed-step RK4 integration of the equation of motion from (x0, ẋ0) over [0, t_end].
///
/// The step is shrunk slightly, if needed, so that an integer number of steps ends at t_end.
pub fn integrate_eom(params: &SystemParams, x0: f64, xdot0: f64, t_end: f64, step: f64) -> Result<Trajectory> {
    for (name, v) in [("x0", x0), ("xdot0", xdot0), ("t_end", t_end), ("step", step)] {
        check_finite(name, v)?;
    }
    if step <= 0.0 {
        return Err(Error::Argument(format!("step must be positive, got {step}")));
    }
    if t_end < 0.0 {
        return Err(Error::Argument(format!("t_end must be non-negative, got {t_end}")));
    }
    if !admissible(params, x0, xdot0) {
        return Err(Error::Domain(format!("initial position {x0} lies outside |x| < 1/√|k|")));
    }
    let steps = ((t_end / step).ceil() as usize).max(1);
    let h = t_end / steps as f64;
    let conserved = first_integral(params, x0, xdot0);
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(Sample { t: 0.0, x: x0, xdot: xdot0, eps: conserved });
    let (mut x, mut v) = (x0, xdot0);
    let f = |x: f64, v: f64| -> Option<(f64, f64)> {
        if !admissible(params, x, v) {
            return None;
        }
        Some((v, acceleration(params, x, v)))
    };
    for i in 1..=steps {
        let t_prev = (i - 1) as f64 * h;
        let exit = Error::DomainExit { t: t_prev, x, xdot: v };
        let (k1x, k1v) = f(x, v).ok_or_else(|| exit.clone())?;
        let (k2x, k2v) = f(x + 0.5 * h * k1x, v + 0.5 * h * k1v).ok_or_else(|| exit.clone())?;
        let (k3x, k3v) = f(x + 0.5 * h * k2x, v + 0.5 * h * k2v).ok_or_else(|| exit.clone())?;
        let (k4x, k4v) = f(x + h * k3x, v + h * k3v).ok_or_else(|| exit.clone())?;
        let xn = x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        let vn = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if !admissible(params, xn, vn) {
            return Err(exit);
        }
        x = xn;
        v = vn;
        samples.push(Sample { t: i as f64 * h, x, xdot: v, eps: first_integral(params, x, v) });
    }
    Ok(Trajectory { samples, conserved })
}

/// Integration constants and derived orbit parameters of the radial Higgs motion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Radial3DConstants {
    /// Azimuthal constant r² sin²θ φ̇/(1+kr²); it does not enter r(t).
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    /// Phase κ.
    pub phase: f64,
    pub omega: f64,
    /// A² = Λ.
    pub asq: f64,
    pub eta: f64,
}

impl Radial3DConstants {
    pub fn new(c1: f64, c2: f64, c3: f64, phase: f64, params: &SystemParams) -> Result<Self> {
        for (name, v) in [("C1", c1), ("C2", c2), ("C3", c3), ("kappa", phase)] {
            check_finite(name, v)?;
        }
        let k = params.k;
        let w2 = params.omega0 * params.omega0;
        let q = k * k * c2 * c2 + k * c3 + w2;
        if q <= 0.0 {
            return Err(Error::Domain(format!("Ω² = 4(k²C₂² + kC₃ + ω₀²) = {} is not positive", 4.0 * q)));
        }
        let disc = c3 * c3 - 4.0 * w2 * c2 * c2;
        if disc <= 0.0 {
            return Err(Error::Domain(format!("C₃² − 4ω₀²C₂² = {disc} is not positive")));
        }
        let root = disc.sqrt();
        Ok(Self {
            c1,
            c2,
            c3,
            phase,
            omega: 2.0 * q.sqrt(),
            asq: root / (2.0 * q),
            eta: (c3 + 2.0 * k * c2 * c2) / root,
        })
    }
}

/// r(t) = A[(η + sin(Ωt+κ))/(1 − kηA² − kA² sin(Ωt+κ))]^{1/2} and its analytic ṙ.
pub fn radial3d_state(consts: &Radial3DConstants, params: &SystemParams, t: f64) -> Result<(f64, f64)> {
    check_finite("t", t)?;
    let k = params.k;
    let (s, c) = (consts.omega * t + consts.phase).sin_cos();
    let num = consts.eta + s;
    let den = 1.0 - k * consts.eta * consts.asq - k * consts.asq * s;
    if den == 0.0 {
        return Err(Error::Domain("radial orbit denominator vanishes".into()));
    }
    let r2 = consts.asq * num / den;
    if r2 < 0.0 {
        return Err(Error::Domain(format!("negative radicand {r2} in the radial orbit")));
    }
    let r = r2.sqrt();
    // d(r²)/dt = ΩΛ cos θ / den²
    let rdot = if r > 0.0 { consts.omega * consts.asq * c / (den * den) / (2.0 * r) } else { 0.0 };
    Ok((r, rdot))
}

pub fn radial3d_trajectory(consts: &Radial3DConstants, params: &SystemParams, t: f64) -> Result<f64> {
    radial3d_state(consts, params, t).map(|(r, _)| r)
}

/// ṙ²/u² + C₂²u/r² + ω₀²r², the radial first integral with the centrifugal factor u = 1 + kr².
pub fn radial_first_integral(params: &SystemParams, c2: f64, r: f64, rdot: f64) -> f64 {
    let u = params.u(r);
    rdot * rdot / (u * u) + c2 * c2 * u / (r * r) + params.omega0 * params.omega0 * r * r
}

/// Value of the radial first integral along the closed-form orbit: C₃ + kC₂².
pub fn radial_first_integral_value(consts: &Radial3DConstants, params: &SystemParams) -> f64 {
    consts.c3 + params.k * consts.c2 * consts.c2
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn higgs_turning_point_and_limits() {
        let p = SystemParams::higgs(0.5).with_omega0((0.5f64).sqrt() * 0.5);
        // Ω = 0.5 with A = 1, k = 0.5.
        assert!((higgs_frequency(1.0, &p).unwrap() - 0.5).abs() < 1e-15);
        let (x, _) = higgs_trajectory(1.0, 0.0, &p, PI).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-14);
        let (x0, _) = higgs_trajectory(1.0, 0.0, &p, 0.0).unwrap();
        let (x1, _) = higgs_trajectory(1.0, 0.0, &p, 4.0 * PI).unwrap();
        assert!((x0 - x1).abs() < 1e-14);
        let flat = SystemParams::higgs(0.0);
        let (x, v) = higgs_trajectory(0.8, 0.3, &flat, 1.1).unwrap();
        assert!((x - 0.8 * (1.4f64).sin()).abs() < 1e-15);
        assert!((v - 0.8 * (1.4f64).cos()).abs() < 1e-15);
        assert!(matches!(higgs_trajectory(1.5, 0.0, &p, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn higgs_first_integral_is_exact() {
        for k in [0.5, -0.4] {
            let p = SystemParams::higgs(k);
            let e0 = first_integral(&p, 0.0, higgs_trajectory(1.0, 0.0, &p, 0.0).unwrap().1);
            for i in 0..50 {
                let (x, v) = higgs_trajectory(1.0, 0.0, &p, 0.37 * i as f64).unwrap();
                assert!((first_integral(&p, x, v) - e0).abs() < 1e-13 * e0);
            }
            assert!((e0 - 1.0 / (1.0 - k)).abs() < 1e-13);
        }
    }

    #[test]
    fn analytic_velocity_matches_finite_difference() {
        let p = SystemParams::nonpolynomial(0.36);
        let h = 1e-5;
        for t in [0.3, 1.7, 4.2] {
            let (_, v) = v2_trajectory(1.0, &p, t).unwrap();
            let fd = (v2_trajectory(1.0, &p, t + h).unwrap().0 - v2_trajectory(1.0, &p, t - h).unwrap().0) / (2.0 * h);
            assert!((v - fd).abs() < 1e-8);
            let (_, vl) = v2_trajectory_landen(1.0, &p, t).unwrap();
            assert!((vl - v).abs() < 1e-10);
        }
        let ph = SystemParams::higgs(0.3);
        let t = 0.9;
        let (_, v) = higgs_trajectory(1.2, 0.1, &ph, t).unwrap();
        let fd = (higgs_trajectory(1.2, 0.1, &ph, t + h).unwrap().0 - higgs_trajectory(1.2, 0.1, &ph, t - h).unwrap().0) / (2.0 * h);
        assert!((v - fd).abs() < 1e-8);
    }

    #[test]
    fn v2_forms_and_degenerate_modulus() {
        let p = SystemParams::nonpolynomial(1.0);
        for t in [0.0, 0.5, 2.0] {
            let (x, _) = v2_trajectory(1.0, &p, t).unwrap();
            assert!((x - (0.5 * t).tanh()).abs() < 1e-14);
            let (xl, _) = v2_trajectory_landen(1.0, &p, t).unwrap();
            assert!((xl - (0.5 * t).tanh()).abs() < 1e-14);
        }
        let flat = SystemParams::nonpolynomial(0.0);
        let (x, _) = v2_trajectory(0.7, &flat, 1.3).unwrap();
        assert!((x - 0.7 * 1.3f64.sin()).abs() < 1e-15);
        assert!(matches!(v2_trajectory(1.0, &SystemParams::nonpolynomial(2.0), 0.1), Err(Error::Unsupported(_))));
        assert!(matches!(v2_trajectory(1.0, &SystemParams::nonpolynomial(-0.5), 0.1), Err(Error::Unsupported(_))));
        let q = SystemParams::nonpolynomial(0.36);
        for i in 0..40 {
            let t = 0.31 * i as f64;
            let (a, b) = (v2_trajectory(1.0, &q, t).unwrap().0, v2_trajectory_landen(1.0, &q, t).unwrap().0);
            assert!((a - b).abs() < 1e-12, "t={t}: {a} vs {b}");
        }
    }

    #[test]
    fn v2_closed_form_solves_the_equation_of_motion() {
        let p = SystemParams::nonpolynomial(0.36);
        let a = 1.0;
        let (x0, v0) = v2_trajectory(a, &p, 0.0).unwrap();
        let period = v2_period(a, &p).unwrap();
        let traj = integrate_eom(&p, x0, v0, period, period / 4000.0).unwrap();
        for s in traj.samples.iter().step_by(200) {
            let (x, _) = v2_trajectory(a, &p, s.t).unwrap();
            assert!((x - s.x).abs() < 1e-9, "t={}: {} vs {}", s.t, x, s.x);
        }
        let last = traj.samples.last().unwrap();
        assert!(last.x.abs() < 1e-9);
        let eps = first_integral(&p, x0, v0);
        assert!((eps - a * a / (1.36f64 * 1.36)).abs() < 1e-14);
    }

    #[test]
    fn integrator_reports_domain_exit() {
        // Unbounded Higgs motion never happens, so drive the integrator with a huge step.
        let p = SystemParams::nonpolynomial(-1.0);
        let r = integrate_eom(&p, 0.99, 50.0, 1.0, 0.5);
        assert!(matches!(r, Err(Error::DomainExit { .. })), "{r:?}");
        assert!(matches!(integrate_eom(&p, 1.5, 0.0, 1.0, 0.1), Err(Error::Domain(_))));
        assert!(matches!(integrate_eom(&p, 0.1, 0.0, 1.0, 0.0), Err(Error::Argument(_))));
    }

    #[test]
    fn radial_orbit_constants_and_first_integral() {
        let p = SystemParams::higgs(1.0);
        let c = Radial3DConstants::new(0.0, 0.2, 1.0, 0.0, &p).unwrap();
        assert!((c.omega * c.omega - 4.0 * (0.04 + 1.0 + 1.0)).abs() < 1e-13);
        let target = radial_first_integral_value(&c, &p);
        let period = 2.0 * PI / c.omega;
        for i in 0..100 {
            let t = period * i as f64 / 100.0;
            let (r, rdot) = radial3d_state(&c, &p, t).unwrap();
            assert!(r > 0.0);
            assert!((radial_first_integral(&p, c.c2, r, rdot) - target).abs() < 1e-12);
        }
        assert!(Radial3DConstants::new(0.0, 1.0, 1.0, 0.0, &p).is_err());
    }
}
