//! Named scalar constants shared by the bounds and the analysis.

use std::f64::consts::{LN_2, PI, SQRT_2};
use std::sync::OnceLock;

use crate::coefficients::b_coefficient;
use crate::dirichlet::{beta_value, c1, c2, phi};
use crate::error::Result;
use crate::polygamma::EULER_GAMMA;

/// Safe upper end of the bracket for the sharp multiplicative constant δ.
pub const DELTA_HI: f64 = 1.112146;

/// Named scalars. `ω` and `μ = 65/108` of the ζ-chain are not stored here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub gamma: f64,
    /// `b₀ = 5 ln 2 − π`.
    pub b0: f64,
    pub b1: f64,
    /// `ρ = 4b₀/5 = ln 16 − 4π/5`.
    pub rho: f64,
    /// `μ₁ = φ₃(3) = 5π⁴/96 − π²/8 − 4β(4)`.
    pub mu1: f64,
    /// `μ₂ = μ₁/ln 5 = φ₄(3)`.
    pub mu2: f64,
    /// `μ₃ = 3μ₁ = φ₅(3)`.
    pub mu3: f64,
    /// `μ₄ = φ₅(5) − μ₃ = φ₆(3)`.
    pub mu4: f64,
    /// `C₁ = ln(π²/8)/ln 3`.
    pub c1: f64,
    /// `d = (1 − π²/8)(b₀ + b₁) + π²/8`, a lower bound for `dₙ`, n ≥ 3.
    pub d_lower: f64,
    /// `d̃`, an upper bound for `dₙ`, n ≥ 3.
    pub d_tilde: f64,
    /// `19√2 ln 8/(16π) = F₁(1/4)`.
    pub delta_lo: f64,
    pub delta_hi: f64,
}

impl Constants {
    pub fn compute() -> Result<Self> {
        let b0 = b_coefficient(0)?;
        let b1 = b_coefficient(1)?;
        let b2 = b_coefficient(2)?;
        let b3 = b_coefficient(3)?;
        let mu1 = phi(3, 3.0, None)?;
        let pi2_8 = PI * PI / 8.0;
        let d3 = d_coefficient_3(&[b0, b1, b2, b3, b_coefficient(4)?])?;
        Ok(Self {
            gamma: EULER_GAMMA,
            b0,
            b1,
            rho: 0.8 * b0,
            mu1,
            mu2: phi(4, 3.0, None)?,
            mu3: phi(5, 3.0, None)?,
            mu4: phi(6, 3.0, None)?,
            c1: c1(),
            d_lower: (1.0 - pi2_8) * (b0 + b1) + pi2_8,
            d_tilde: d3 - (PI.powi(4) / 96.0 - 1.0) * b2 - (pi2_8 - 1.0) * b3,
            delta_lo: 19.0 * SQRT_2 * 3.0 * LN_2 / (16.0 * PI),
            delta_hi: DELTA_HI,
        })
    }

    /// `C₂(c) = 8λ(2+c)/π²`.
    pub fn c2_at(&self, c: f64) -> Result<f64> {
        c2(c)
    }

    /// `μ₁` from its closed form, for cross-checking.
    pub fn mu1_closed_form() -> Result<f64> {
        Ok(5.0 * PI.powi(4) / 96.0 - PI * PI / 8.0 - 4.0 * beta_value(4.0)?)
    }
}

/// `d₃ = Σ_{k≤3} b_k λ(8−2k) − 4b₄`.
fn d_coefficient_3(b: &[f64; 5]) -> Result<f64> {
    use crate::dirichlet::lambda_value;
    let mut acc = 0.0;
    for (k, bk) in b[..4].iter().enumerate() {
        acc += bk * lambda_value(8.0 - 2.0 * k as f64)?;
    }
    Ok(acc - 4.0 * b[4])
}

/// Constants computed once on first use.
pub fn constants() -> &'static Constants {
    static CONSTANTS: OnceLock<Constants> = OnceLock::new();
    CONSTANTS.get_or_init(|| Constants::compute().expect("constants must evaluate"))
}
