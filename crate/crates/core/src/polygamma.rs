//! Digamma, polygamma and the reflection pieces `B(x) = π/sin(πx)` and
//! `H₁(x) = π·cot(πx)`.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::sum::{power_sum, CompensatedSum, PowerTerm, SeriesValue};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Shift threshold for the asymptotic expansion of ψ.
const PSI_SHIFT: f64 = 10.0;

/// `B_{2k}/(2k)` for k = 1..8.
const PSI_ASYMPTOTIC: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// A point of `(0, 1)` together with its complement, kept separately so
/// that `1 − x` is not recomputed where it would round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPoint {
    pub x: f64,
    pub one_minus_x: f64,
}

impl ReflectionPoint {
    pub fn new(x: f64) -> Result<Self> {
        if !(x > 0.0 && x < 1.0) {
            return Err(domain("reflection_point", x, "0 < x < 1"));
        }
        Ok(Self {
            x,
            one_minus_x: 1.0 - x,
        })
    }

    /// The same pair seen from `1 − x`.
    pub fn reflected(self) -> Self {
        Self {
            x: self.one_minus_x,
            one_minus_x: self.x,
        }
    }

    /// Representative in `(0, 1/2]`.
    pub fn folded(self) -> Self {
        if self.x > 0.5 {
            self.reflected()
        } else {
            self
        }
    }
}

/// Digamma `ψ(x)` for `x > 0`.
pub fn psi(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("psi", x, "x > 0"));
    }
    let mut acc = CompensatedSum::new();
    let mut z = x;
    while z < PSI_SHIFT {
        acc.add(-1.0 / z);
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut series = 0.0;
    for c in PSI_ASYMPTOTIC.iter().rev() {
        series = series * inv2 + c;
    }
    acc.add(z.ln());
    acc.add(-0.5 / z);
    acc.add(-series * inv2);
    Ok(acc.value())
}

/// `ψ⁽ⁿ⁾(x) = (−1)^{n+1} n! Σ_{k≥0} (k+x)^{−(n+1)}` for `n ≥ 1`.
pub fn polygamma(n: u32, x: f64, target_abs_err: f64) -> Result<SeriesValue> {
    if n == 0 {
        return Err(domain("polygamma", 0.0, "n >= 1"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("polygamma", x, "x > 0"));
    }
    let factorial: f64 = (1..=n).map(f64::from).product();
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let sum = power_sum(
        "polygamma",
        &[PowerTerm::new(1.0, 1.0, x, f64::from(n) + 1.0)],
        target_abs_err / factorial,
    )?;
    Ok(sum.scaled(sign * factorial))
}

/// `sin(πx)` on `(0, 1)`, symmetric under `x ↦ 1 − x` whenever `1 − x` is exact.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = if x > 0.5 { 1.0 - x } else { x };
    if r > 0.25 {
        (PI * (0.5 - r)).cos()
    } else {
        (PI * r).sin()
    }
}

/// `cos(πx)` on `(0, 1)`, exactly zero at `1/2`.
pub(crate) fn cos_pi(x: f64) -> f64 {
    if x <= 0.25 {
        (PI * x).cos()
    } else if x >= 0.75 {
        -(PI * (1.0 - x)).cos()
    } else {
        (PI * (0.5 - x)).sin()
    }
}

/// `tan(πx)` on `(0, 1/2)`.
pub(crate) fn tan_pi(x: f64) -> f64 {
    sin_pi(x) / cos_pi(x)
}

/// `B(x) = Γ(x)Γ(1−x) = π/sin(πx)`.
pub fn b_fn(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(domain("B", x, "0 < x < 1"));
    }
    Ok(PI / sin_pi(x))
}

/// `H₁(x) = ψ(1−x) − ψ(x) = π·cot(πx)`.
pub fn h1(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(domain("H1", x, "0 < x < 1"));
    }
    Ok(PI * cos_pi(x) / sin_pi(x))
}
