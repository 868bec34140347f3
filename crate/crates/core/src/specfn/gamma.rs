use std::f64::consts::PI;

use crate::error::{check_finite, Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: f64) -> f64 {
    let mut s = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        s += c / (z + i as f64);
    }
    s
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Γ(x) by the Lanczos approximation, with reflection below 1/2.
pub fn gamma(x: f64) -> Result<f64> {
    check_finite("x", x)?;
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x < 0.5 {
        return Ok(PI / ((PI * x).sin() * gamma(1.0 - x)?));
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let half = t.powf(0.5 * (z + 0.5));
    Ok((2.0 * PI).sqrt() * half * (-t).exp() * half * lanczos_sum(z))
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check_finite("x", x)?;
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x < 0.5 {
        return Ok((PI / (PI * x).sin().abs()).ln() - ln_gamma(1.0 - x)?);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

/// 1/Γ(x), which is zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if is_pole(x) {
        0.0
    } else {
        gamma(x).map(|g| 1.0 / g).unwrap_or(f64::NAN)
    }
}

/// erf(x) from the everywhere-positive series 2/√π e^{−x²} Σ 2ⁿx^{2n+1}/(2n+1)!!.
pub fn erf(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("erf of NaN".into()));
    }
    let ax = x.abs();
    if ax >= 6.0 {
        return Ok(x.signum());
    }
    if ax == 0.0 {
        return Ok(x);
    }
    let x2 = ax * ax;
    let mut term = ax;
    let mut sum = ax;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    Ok(x.signum() * (2.0 / PI.sqrt()) * (-x2).exp() * sum)
}

/// The pair (erf(x), Γ(x)).
pub fn erf_gamma(x: f64) -> Result<(f64, f64)> {
    Ok((erf(x)?, gamma(x)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn erf_maclaurin(x: f64) -> f64 {
        // Alternating Maclaurin series, summed until terms stop changing the total.
        let mut sum = 0.0;
        let mut pow = x;
        let mut fact = 1.0;
        for n in 0..200 {
            let term = pow / (fact * (2 * n + 1) as f64);
            if n % 2 == 0 { sum += term } else { sum -= term }
            if term.abs() < 1e-18 {
                break;
            }
            pow *= x * x;
            fact *= (n + 1) as f64;
        }
        2.0 / PI.sqrt() * sum
    }

    #[test]
    fn trivial_values() {
        assert_eq!(erf(0.0).unwrap(), 0.0);
        assert!((gamma(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((gamma(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert_eq!(erf(9.0).unwrap(), 1.0);
        assert_eq!(erf(-9.0).unwrap(), -1.0);
        assert!(matches!(gamma(-2.0), Err(Error::Pole(_))));
        assert!(matches!(gamma(0.0), Err(Error::Pole(_))));
        assert_eq!(rgamma(-3.0), 0.0);
    }

    #[test]
    fn erf_against_maclaurin() {
        for x in [0.1, 0.5, 1.0, 1.7, -0.8] {
            let a = erf(x).unwrap();
            let b = erf_maclaurin(x);
            assert!((a - b).abs() < 1e-14, "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn gamma_against_factorials() {
        let mut f = 1.0f64;
        for n in 1..=30 {
            let g = gamma(n as f64).unwrap();
            assert!((g - f).abs() <= 1e-12 * f, "n={n}");
            assert!((ln_gamma(n as f64).unwrap() - f.ln()).abs() < 1e-12 * f.ln().max(1.0));
            f *= n as f64;
        }
        // Γ(x+1) = xΓ(x) on a non-integer grid up to 50.
        let mut x = 0.13;
        while x < 49.0 {
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs());
            x += 0.71;
        }
        assert!((gamma(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-13);
    }
}
