use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{check_finite, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

const AGM_TOL: f64 = 1e-14;
const AGM_MAX: usize = 64;

fn check_parameter(m: f64) -> Result<()> {
    check_finite("m", m)?;
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::Domain(format!("elliptic parameter must lie in [0,1], got {m}")));
    }
    Ok(())
}

/// Jacobi sn, cn, dn with parameter m (dn² + m·sn² = 1), via the descending AGM chain.
pub fn jacobi_elliptic(u: f64, m: f64) -> Result<EllipticTriple> {
    check_finite("u", u)?;
    check_parameter(m)?;
    if m == 0.0 {
        return Ok(EllipticTriple { sn: u.sin(), cn: u.cos(), dn: 1.0 });
    }
    if m == 1.0 {
        let sech = 1.0 / u.cosh();
        return Ok(EllipticTriple { sn: u.tanh(), cn: sech, dn: sech });
    }
    let mut a = 1.0;
    let mut b = (1.0 - m).sqrt();
    let mut ratios = Vec::with_capacity(16);
    let mut converged = false;
    for _ in 0..AGM_MAX {
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        ratios.push(c / a);
        if c.abs() <= AGM_TOL * a {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence("AGM chain for Jacobi elliptic functions".into()));
    }
    let mut phi = (2.0f64).powi(ratios.len() as i32) * a * u;
    for r in ratios.iter().rev() {
        phi = 0.5 * (phi + (r * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    let dn = (1.0 - m * sn * sn).max(0.0).sqrt();
    Ok(EllipticTriple { sn, cn, dn })
}

/// Complete elliptic integrals K(m), E(m) in the parameter convention.
pub fn complete_elliptic(m: f64) -> Result<(f64, f64)> {
    check_parameter(m)?;
    if m == 1.0 {
        return Err(Error::Divergence("K(m) diverges at m = 1 (E(1) = 1)".into()));
    }
    let mut a = 1.0;
    let mut b = (1.0 - m).sqrt();
    let mut sum = 0.5 * m;
    let mut pow = 0.5;
    for _ in 0..AGM_MAX {
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        pow *= 2.0;
        sum += pow * c * c;
        if c.abs() <= AGM_TOL * a {
            let k = FRAC_PI_2 / a;
            return Ok((k, k * (1.0 - sum)));
        }
    }
    Err(Error::Convergence("AGM chain for complete elliptic integrals".into()))
}

/// E(m) including the endpoint m = 1.
pub fn complete_elliptic_e(m: f64) -> Result<f64> {
    check_parameter(m)?;
    if m == 1.0 {
        return Ok(1.0);
    }
    complete_elliptic(m).map(|(_, e)| e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfn::quad::{integrate, QuadOptions};

    fn incomplete_f(phi: f64, m: f64) -> f64 {
        integrate(|t: f64| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, phi, QuadOptions::tight()).unwrap()
    }

    // Independent inverse: solve F(φ, m) = u for the amplitude by bisection.
    fn sn_by_inversion(u: f64, m: f64) -> f64 {
        let (mut lo, mut hi) = (0.0, FRAC_PI_2);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if incomplete_f(mid, m) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (0.5 * (lo + hi)).sin()
    }

    #[test]
    fn degenerate_cases() {
        let t = jacobi_elliptic(0.7, 0.0).unwrap();
        assert_eq!((t.sn, t.cn, t.dn), (0.7f64.sin(), 0.7f64.cos(), 1.0));
        let t = jacobi_elliptic(0.7, 1.0).unwrap();
        assert!((t.sn - 0.7f64.tanh()).abs() < 1e-15);
        assert!((t.cn - 1.0 / 0.7f64.cosh()).abs() < 1e-15);
        assert!((t.dn - 1.0 / 0.7f64.cosh()).abs() < 1e-15);
    }

    #[test]
    fn half_half_against_inversion_oracle() {
        let t = jacobi_elliptic(0.5, 0.5).unwrap();
        let sn = sn_by_inversion(0.5, 0.5);
        assert!((t.sn - sn).abs() < 1e-12, "{} vs {}", t.sn, sn);
        assert!((t.cn - (1.0 - sn * sn).sqrt()).abs() < 1e-12);
        assert!((t.dn - (1.0 - 0.5 * sn * sn).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn near_one_parameter() {
        let m = 1.0 - 1e-10;
        let t = jacobi_elliptic(2.0, m).unwrap();
        assert!((t.sn - 2.0f64.tanh()).abs() < 1e-8);
    }

    #[test]
    fn complete_integrals_against_quadrature() {
        let (k, e) = complete_elliptic(0.5).unwrap();
        let kq = incomplete_f(FRAC_PI_2, 0.5);
        let eq = integrate(|t: f64| (1.0 - 0.5 * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, QuadOptions::tight()).unwrap();
        assert!((k - kq).abs() < 1e-12 * kq);
        assert!((e - eq).abs() < 1e-12 * eq);
        let (k0, e0) = complete_elliptic(0.0).unwrap();
        assert_eq!((k0, e0), (FRAC_PI_2, FRAC_PI_2));
        assert!(matches!(complete_elliptic(1.0), Err(Error::Divergence(_))));
        assert_eq!(complete_elliptic_e(1.0).unwrap(), 1.0);
        assert!(matches!(complete_elliptic(1.5), Err(Error::Domain(_))));
        assert!(matches!(jacobi_elliptic(0.1, -0.1), Err(Error::Domain(_))));
        assert!(jacobi_elliptic(f64::NAN, 0.1).is_err());
    }
}
