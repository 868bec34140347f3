use std::f64::consts::PI;

use crate::error::{check_finite, Error, Result};
use crate::specfn::gamma::{gamma, ln_gamma, rgamma};

fn nonpositive_integer(a: f64) -> Option<usize> {
    let r = a.round();
    if a <= 0.0 && (a - r).abs() <= 1e-12 * r.abs().max(1.0) {
        Some((-r) as usize)
    } else {
        None
    }
}

/// ₂F₁(a, b; c; z) when a or b is a non-positive integer, as an exact finite sum.
pub fn hyp2f1_terminating(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    for (name, v) in [("a", a), ("b", b), ("c", c), ("z", z)] {
        check_finite(name, v)?;
    }
    let terms = match (nonpositive_integer(a), nonpositive_integer(b)) {
        (Some(p), Some(q)) => p.min(q),
        (Some(p), None) => p,
        (None, Some(q)) => q,
        (None, None) => {
            return Err(Error::Unsupported(format!(
                "2F1({a}, {b}; {c}; z) does not terminate"
            )))
        }
    };
    if let Some(c0) = nonpositive_integer(c) {
        if c0 < terms {
            return Err(Error::Domain(format!(
                "2F1 with c = {c} is undefined for a series of {terms} terms"
            )));
        }
    }
    let (a, b) = (a.round_if_integer(), b.round_if_integer());
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..terms {
        let j = j as f64;
        term *= (a + j) * (b + j) / ((c + j) * (j + 1.0)) * z;
        sum += term;
    }
    Ok(sum)
}

trait RoundIfInteger {
    fn round_if_integer(self) -> Self;
}

impl RoundIfInteger for f64 {
    fn round_if_integer(self) -> f64 {
        let r = self.round();
        if (self - r).abs() <= 1e-12 * r.abs().max(1.0) { r } else { self }
    }
}

/// Convergent Gauss series for |z| < 1.
fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z.abs() >= 1.0 {
        return Err(Error::Domain(format!("2F1 series needs |z| < 1, got {z}")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..100_000 {
        let j = j as f64;
        term *= (a + j) * (b + j) / ((c + j) * (j + 1.0)) * z;
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && j > 2.0 {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!("2F1({a}, {b}; {c}; {z}) series")))
}

/// Ferrers function P^μ_ν(x) on |x| < 1 for real degree and order.
///
/// Uses P^μ_ν(x) = ((1+x)/(1−x))^{μ/2} ₂F₁(−ν, ν+1; 1−μ; (1−x)/2)/Γ(1−μ), switching to the Euler
/// transform when that makes the series terminate.
pub fn assoc_legendre(nu: f64, mu: f64, x: f64) -> Result<f64> {
    for (name, v) in [("nu", nu), ("mu", mu), ("x", x)] {
        check_finite(name, v)?;
    }
    if x.abs() >= 1.0 {
        return Err(Error::Domain(format!("Ferrers function needs |x| < 1, got {x}")));
    }
    let mu_int = mu.round_if_integer();
    if mu_int > 0.0 && mu_int == mu_int.round() {
        // Positive integer order: P^m_ν = (−1)^m Γ(ν+m+1)/Γ(ν−m+1) · P^{−m}_ν.
        let m = mu_int;
        let ratio = if nu - m + 1.0 <= 0.0 && (nu - m + 1.0) == (nu - m + 1.0).round() {
            0.0
        } else {
            gamma(nu + m + 1.0)? * rgamma(nu - m + 1.0)
        };
        let sign = if (m as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(sign * ratio * assoc_legendre(nu, -m, x)?);
    }
    let z = 0.5 * (1.0 - x);
    let (a, b, c) = (-nu, nu + 1.0, 1.0 - mu);
    let prefactor_ln = -ln_gamma(c)?;
    let sign = gamma_sign(c);
    if nonpositive_integer(a).is_some() || nonpositive_integer(b).is_some() {
        let f = hyp2f1_terminating(a, b, c, z)?;
        let pre = ((1.0 + x) / (1.0 - x)).powf(0.5 * mu) * (prefactor_ln).exp() * sign;
        return Ok(pre * f);
    }
    if nonpositive_integer(c - a).is_some() || nonpositive_integer(c - b).is_some() {
        // ₂F₁(a,b;c;z) = (1−z)^{c−a−b} ₂F₁(c−a, c−b; c; z), and 1 − z = (1+x)/2.
        let f = hyp2f1_terminating(c - a, c - b, c, z)?;
        let ln_pre = 0.5 * mu * ((1.0 + x).ln() - (1.0 - x).ln()) + (c - a - b) * (0.5 * (1.0 + x)).ln() + prefactor_ln;
        return Ok(sign * ln_pre.exp() * f);
    }
    let f = hyp2f1_series(a, b, c, z)?;
    Ok(sign * ((1.0 + x) / (1.0 - x)).powf(0.5 * mu) * prefactor_ln.exp() * f)
}

fn gamma_sign(x: f64) -> f64 {
    if x > 0.0 || (x.floor() as i64) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Jacobi polynomial P^{(a,b)}_n(x) by the three-term recurrence.
pub fn jacobi_polynomial(n: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    for (name, v) in [("a", a), ("b", b), ("x", x)] {
        check_finite(name, v)?;
    }
    let p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    if n == 0 {
        return Ok(1.0);
    }
    if n == 1 {
        return Ok(p1);
    }
    let (mut pm2, mut pm1) = (1.0, p1);
    for j in 2..=n {
        let j = j as f64;
        let s = 2.0 * j + a + b;
        let den = 2.0 * j * (j + a + b) * (s - 2.0);
        if den == 0.0 {
            return Err(Error::Domain(format!("degenerate Jacobi recurrence at n={j}, a={a}, b={b}")));
        }
        let p = ((s - 1.0) * (s * (s - 2.0) * x + a * a - b * b) * pm1
            - 2.0 * (j + a - 1.0) * (j + b - 1.0) * s * pm2)
            / den;
        pm2 = pm1;
        pm1 = p;
    }
    Ok(pm1)
}

/// Real orthonormal spherical harmonic; m > 0 carries cos(mφ), m < 0 carries sin(|m|φ).
pub fn spherical_harmonic_real(l: usize, m: i64, theta: f64, phi: f64) -> Result<f64> {
    let am = m.unsigned_abs() as usize;
    if am > l {
        return Err(Error::Domain(format!("|m| = {am} exceeds l = {l}")));
    }
    let x = theta.cos();
    let s = theta.sin().abs();
    let mut pmm = 1.0;
    for i in 0..am {
        pmm *= -((2 * i + 1) as f64) * s;
    }
    let plm = if l == am {
        pmm
    } else {
        let mut p_prev = pmm;
        let mut p = x * (2 * am + 1) as f64 * pmm;
        for ll in (am + 2)..=l {
            let next = ((2 * ll - 1) as f64 * x * p - (ll + am - 1) as f64 * p_prev) / (ll - am) as f64;
            p_prev = p;
            p = next;
        }
        p
    };
    let ln_ratio = ln_gamma((l - am + 1) as f64)? - ln_gamma((l + am + 1) as f64)?;
    let norm = ((2 * l + 1) as f64 / (4.0 * PI) * ln_ratio.exp()).sqrt();
    Ok(match m {
        0 => norm * plm,
        m if m > 0 => std::f64::consts::SQRT_2 * norm * plm * (am as f64 * phi).cos(),
        _ => std::f64::consts::SQRT_2 * norm * plm * (am as f64 * phi).sin(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfn::quad::{integrate, QuadOptions};

    #[test]
    fn terminating_trivial_and_finite_sum() {
        assert_eq!(hyp2f1_terminating(0.0, 3.3, 1.7, 0.9).unwrap(), 1.0);
        let (b, c, z) = (2.5, 1.3, 0.4);
        assert!((hyp2f1_terminating(-1.0, b, c, z).unwrap() - (1.0 - b * z / c)).abs() < 1e-15);
        // Explicit three-term sum for ₂F₁(−2, 3; 1.5; 0.25).
        let z = 0.25;
        let oracle = 1.0 + (-2.0 * 3.0) / 1.5 * z + (-2.0 * -1.0 * 3.0 * 4.0) / (1.5 * 2.5 * 2.0) * z * z;
        assert!((hyp2f1_terminating(-2.0, 3.0, 1.5, z).unwrap() - oracle).abs() < 1e-15);
        assert!(matches!(hyp2f1_terminating(0.5, 0.5, 1.0, 0.1), Err(Error::Unsupported(_))));
        assert!(matches!(hyp2f1_terminating(-3.0, 1.0, -1.0, 0.1), Err(Error::Domain(_))));
        // c = −3 with only two terms stays defined.
        assert!(hyp2f1_terminating(-2.0, 1.0, -3.0, 0.1).is_ok());
    }

    #[test]
    fn legendre_trivial() {
        for x in [-0.7, 0.0, 0.3, 0.95] {
            assert!((assoc_legendre(1.0, 0.0, x).unwrap() - x).abs() < 1e-14);
        }
        assert!((assoc_legendre(2.0, 0.0, 0.0).unwrap() + 0.5).abs() < 1e-14);
        assert!(assoc_legendre(1.0, 0.0, 1.0).is_err());
        // P¹₁(x) = −√(1−x²) in the Ferrers convention.
        let x: f64 = 0.4;
        assert!((assoc_legendre(1.0, 1.0, x).unwrap() + (1.0 - x * x).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn legendre_real_order_against_direct_series() {
        // P^{−q}_λ(x) with q = 1.5, λ = 2.5 from the non-terminating defining series.
        let (q, lam, x): (f64, f64, f64) = (1.5, 2.5, 0.3);
        let (a, b, c, z) = (-lam, lam + 1.0, 1.0 + q, 0.5 * (1.0 - x));
        let mut term: f64 = 1.0;
        let mut sum = 1.0;
        let mut j = 0.0;
        while term.abs() > 1e-18 {
            term *= (a + j) * (b + j) / ((c + j) * (j + 1.0)) * z;
            sum += term;
            j += 1.0;
        }
        let gamma_c = 1.329_340_388_179_137; // Γ(2.5) = 3√π/4
        let oracle = ((1.0 + x) / (1.0 - x)).powf(-0.5 * q) / gamma_c * sum;
        let value = assoc_legendre(lam, -q, x).unwrap();
        assert!((value - oracle).abs() < 1e-13, "{value} vs {oracle}");
        // A generic order that goes through neither terminating path.
        let v = assoc_legendre(0.37, -0.61, -0.2).unwrap();
        assert!(v.is_finite());
    }

    fn jacobi_direct(n: usize, a: f64, b: f64, x: f64) -> f64 {
        // Σ_s C(n+a, n−s) C(n+b, s) ((x−1)/2)^s ((x+1)/2)^{n−s}
        let binom = |top: f64, k: usize| -> f64 {
            let mut r = 1.0;
            for i in 0..k {
                r *= (top - i as f64) / (i + 1) as f64;
            }
            r
        };
        (0..=n)
            .map(|s| {
                binom(n as f64 + a, n - s) * binom(n as f64 + b, s) * (0.5 * (x - 1.0)).powi(s as i32) * (0.5 * (x + 1.0)).powi((n - s) as i32)
            })
            .sum()
    }

    #[test]
    fn jacobi_basics_and_orthogonality() {
        let (a, b) = (0.7, 1.3);
        assert_eq!(jacobi_polynomial(0, a, b, 0.2).unwrap(), 1.0);
        let x = 0.2;
        assert!((jacobi_polynomial(1, a, b, x).unwrap() - ((a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0)).abs() < 1e-15);
        let ip = integrate(
            |x: f64| (1.0 - x).powf(a) * (1.0 + x).powf(b) * jacobi_polynomial(2, a, b, x).unwrap() * jacobi_polynomial(3, a, b, x).unwrap(),
            -1.0,
            1.0,
            QuadOptions::tight(),
        )
        .unwrap();
        assert!(ip.abs() < 1e-10, "{ip}");
        for n in 0..=20 {
            for &x in &[-0.9, -0.3, 0.1, 0.8] {
                let r = jacobi_polynomial(n, a, b, x).unwrap();
                let d = jacobi_direct(n, a, b, x);
                assert!((r - d).abs() < 1e-10 * d.abs().max(1.0), "n={n} x={x}: {r} vs {d}");
            }
        }
    }

    #[test]
    fn spherical_harmonics_orthonormal() {
        let ip = |l1: usize, m1: i64, l2: usize, m2: i64| {
            integrate(
                |th: f64| {
                    integrate(
                        |ph: f64| spherical_harmonic_real(l1, m1, th, ph).unwrap() * spherical_harmonic_real(l2, m2, th, ph).unwrap(),
                        0.0,
                        2.0 * PI,
                        QuadOptions::default(),
                    )
                    .unwrap()
                        * th.sin()
                },
                0.0,
                PI,
                QuadOptions::default(),
            )
            .unwrap()
        };
        assert!((ip(2, 1, 2, 1) - 1.0).abs() < 1e-9);
        assert!((ip(1, -1, 1, -1) - 1.0).abs() < 1e-9);
        assert!((ip(3, 0, 3, 0) - 1.0).abs() < 1e-9);
        assert!(ip(2, 1, 1, 1).abs() < 1e-9);
        assert!(ip(2, 2, 2, -2).abs() < 1e-9);
    }
}
