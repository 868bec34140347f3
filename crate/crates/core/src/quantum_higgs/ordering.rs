use serde::{Deserialize, Serialize};

use crate::error::{check_finite, Error, Result};
use crate::params::SystemParams;

/// Weighted means (ᾱ, γ̄, ᾱγ̄) of the ordering family m^α p m^β p m^γ with α + β + γ = −1.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct OrderingParameters {
    pub alpha_bar: f64,
    pub gamma_bar: f64,
    pub alphagamma_bar: f64,
}

impl OrderingParameters {
    pub fn new(alpha_bar: f64, gamma_bar: f64, alphagamma_bar: f64) -> Result<Self> {
        check_finite("alpha_bar", alpha_bar)?;
        check_finite("gamma_bar", gamma_bar)?;
        check_finite("alphagamma_bar", alphagamma_bar)?;
        Ok(Self { alpha_bar, gamma_bar, alphagamma_bar })
    }

    pub fn beta_bar(&self) -> f64 {
        -1.0 - self.alpha_bar - self.gamma_bar
    }

    /// ᾱ + γ̄
    pub fn sum(&self) -> f64 {
        self.alpha_bar + self.gamma_bar
    }

    /// ᾱ − γ̄, the exponent of the similarity map from the Hermitian state: Φ = u^{−(ᾱ−γ̄)}ψ.
    pub fn gap(&self) -> f64 {
        self.alpha_bar - self.gamma_bar
    }

    fn b_prime(&self) -> f64 {
        let d = self.gamma_bar - self.alpha_bar;
        self.alphagamma_bar + self.alpha_bar + self.gamma_bar + 0.25 * d * d
    }

    pub fn eta1(&self) -> f64 {
        5.0 * self.sum() - 8.0 * self.b_prime()
    }

    pub fn eta2(&self) -> f64 {
        -3.0 * self.sum() + 4.0 * self.b_prime()
    }

    pub fn sigma1(&self) -> f64 {
        -4.0 * self.alphagamma_bar - 3.0 * self.gamma_bar
    }

    pub fn sigma2(&self) -> f64 {
        4.0 * self.alphagamma_bar + 2.0 * self.gamma_bar
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderingCoefficients {
    pub eta1: f64,
    pub eta2: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    /// ω₀/(ħk), signed; infinite at k = 0.
    pub mu: f64,
    /// √(μ² − 2η₁ + 9/4); infinite at k = 0.
    pub mu_tilde: f64,
}

pub fn ordering_coefficients(op: &OrderingParameters, params: &SystemParams) -> Result<OrderingCoefficients> {
    let (eta1, eta2) = (op.eta1(), op.eta2());
    let (mu, mu_tilde) = if params.k == 0.0 {
        (f64::INFINITY, f64::INFINITY)
    } else {
        let mu = params.mu();
        let rad = mu * mu - 2.0 * eta1 + 2.25;
        if rad < 0.0 {
            return Err(Error::Constraint(format!(
                "μ̃² = μ² − 2η₁ + 9/4 = {rad} is negative for η₁ = {eta1}, μ = {mu}"
            )));
        }
        (mu, rad.sqrt())
    };
    Ok(OrderingCoefficients { eta1, eta2, sigma1: op.sigma1(), sigma2: op.sigma2(), mu, mu_tilde })
}
