use serde::{Deserialize, Serialize};

use crate::error::{check_finite, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Potential {
    /// V₁ = ω₀²x²/2
    Higgs,
    /// V₂ = ω₀²x²/(2(1+kx²)²)
    Nonpolynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub k: f64,
    pub omega0: f64,
    pub hbar: f64,
    pub potential: Potential,
}

impl SystemParams {
    pub fn new(k: f64, omega0: f64, hbar: f64, potential: Potential) -> Result<Self> {
        check_finite("k", k)?;
        check_finite("omega0", omega0)?;
        check_finite("hbar", hbar)?;
        if omega0 <= 0.0 {
            return Err(Error::Domain(format!("omega0 must be positive, got {omega0}")));
        }
        if hbar <= 0.0 {
            return Err(Error::Domain(format!("hbar must be positive, got {hbar}")));
        }
        Ok(Self { k, omega0, hbar, potential })
    }

    /// Higgs system with ħ = ω₀ = 1.
    pub fn higgs(k: f64) -> Self {
        Self { k, omega0: 1.0, hbar: 1.0, potential: Potential::Higgs }
    }

    /// Nonpolynomial system with ħ = ω₀ = 1.
    pub fn nonpolynomial(k: f64) -> Self {
        Self { k, omega0: 1.0, hbar: 1.0, potential: Potential::Nonpolynomial }
    }

    pub fn with_omega0(mut self, omega0: f64) -> Self {
        self.omega0 = omega0;
        self
    }

    pub fn with_hbar(mut self, hbar: f64) -> Self {
        self.hbar = hbar;
        self
    }

    /// u = 1 + kx², so that the mass is m(x) = u⁻².
    pub fn u(&self, x: f64) -> f64 {
        1.0 + self.k * x * x
    }

    pub fn potential_at(&self, x: f64) -> f64 {
        let v = 0.5 * self.omega0 * self.omega0 * x * x;
        match self.potential {
            Potential::Higgs => v,
            Potential::Nonpolynomial => {
                let u = self.u(x);
                v / (u * u)
            }
        }
    }

    /// Edge of the admissible region |x| < 1/√|k| for k < 0; infinite otherwise.
    pub fn edge(&self) -> f64 {
        if self.k < 0.0 {
            1.0 / (-self.k).sqrt()
        } else {
            f64::INFINITY
        }
    }

    /// μ = ω₀/(ħk), signed.
    pub fn mu(&self) -> f64 {
        self.omega0 / (self.hbar * self.k)
    }
}

/// Dimensionality of a quantum problem; in 3D the radial equation carries orbital number l.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dim {
    One,
    Three { l: usize },
}
