//! The R-function, the companion `f(x) = [1 + x(1−x)]R(x) − B(x)` with its
//! two expansions, and the remainder functions built from those expansions.

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::coefficients::{default_table, CoefficientTable};
use crate::dirichlet::{lambda_minus_one, zeta_value};
use crate::error::{domain, Error, Result};
use crate::polygamma::{b_fn, polygamma, psi, ReflectionPoint, EULER_GAMMA};
use crate::sum::{CompensatedSum, SeriesValue};

/// Below this `x` the auto method uses the origin expansion.
pub const ORIGIN_LIMIT: f64 = 0.15;
/// From this `x` on the auto method uses the center expansion.
pub const CENTER_LIMIT: f64 = 0.35;
/// Highest derivative order served by the series evaluators.
pub const MAX_DERIVATIVE: u32 = 8;

/// Terms kept for `λ(2n+1)` in the center expansion of `R`.
const CENTER_TERMS: usize = 4096;
/// Terms kept for `ζ(2n+1)` in the origin expansion of `R`.
const ORIGIN_TERMS: usize = 64;
/// Stored coefficients that must remain past a shifted series' start.
const MIN_SHIFTED_TERMS: usize = 20;

/// How a value of `R` or `f` is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalMethod {
    /// `−2γ − ψ(x) − ψ(1−x)`, and `[1 + x(1−x)]R − B` for `f`.
    Direct,
    /// Expansion in powers of `x`.
    OriginSeries,
    /// Expansion in powers of `(1−2x)²`.
    CenterSeries,
    /// Picks one of the above from `x` alone.
    Auto,
}

impl EvalMethod {
    /// The concrete method `Auto` stands for at a folded `x ∈ (0, 1/2]`.
    pub fn resolve(self, x: f64) -> Self {
        match self {
            Self::Auto if x <= ORIGIN_LIMIT => Self::OriginSeries,
            Self::Auto if x >= CENTER_LIMIT => Self::CenterSeries,
            Self::Auto => Self::Direct,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Direct => "direct",
            Self::OriginSeries => "origin",
            Self::CenterSeries => "center",
            Self::Auto => "auto",
        }
    }
}

impl fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EvalMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "direct" => Ok(Self::Direct),
            "origin" => Ok(Self::OriginSeries),
            "center" => Ok(Self::CenterSeries),
            "auto" => Ok(Self::Auto),
            _ => Err(format!(
                "unknown method `{s}` (expected auto, direct, origin or center)"
            )),
        }
    }
}

/// A value with the method that produced it and an error estimate. For the
/// series methods the estimate is the tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RFunctionValue {
    pub value: f64,
    pub method: EvalMethod,
    pub est_abs_err: f64,
}

fn odd_zeta() -> &'static [f64] {
    static CACHE: OnceLock<Vec<f64>> = OnceLock::new();
    CACHE.get_or_init(|| {
        (0..=ORIGIN_TERMS + 1)
            .map(|n| {
                if n == 0 {
                    f64::INFINITY
                } else {
                    zeta_value(2.0 * n as f64 + 1.0).expect("odd zeta values")
                }
            })
            .collect()
    })
}

fn odd_lambda() -> &'static [f64] {
    static CACHE: OnceLock<Vec<f64>> = OnceLock::new();
    CACHE.get_or_init(|| {
        (0..=CENTER_TERMS + 1)
            .map(|n| {
                if n == 0 {
                    f64::INFINITY
                } else {
                    let s = 2.0 * n as f64 + 1.0;
                    1.0 + lambda_minus_one(s, (3f64.powf(-s) * 1e-17).max(1e-300))
                        .expect("odd lambda values")
                        .value
                }
            })
            .collect()
    })
}

fn fold(function: &'static str, x: f64) -> Result<ReflectionPoint> {
    ReflectionPoint::new(x)
        .map(ReflectionPoint::folded)
        .map_err(|_| domain(function, x, "0 < x < 1"))
}

fn half_open(function: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x <= 0.5 {
        Ok(())
    } else {
        Err(domain(function, x, "0 < x <= 1/2"))
    }
}

fn open_half(function: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x < 0.5 {
        Ok(())
    } else {
        Err(domain(function, x, "0 < x < 1/2"))
    }
}

fn r_direct(p: ReflectionPoint) -> Result<RFunctionValue> {
    let (u, v) = (psi(p.x)?, psi(p.one_minus_x)?);
    let mut acc = CompensatedSum::new();
    acc.add(-2.0 * EULER_GAMMA);
    acc.add(-u);
    acc.add(-v);
    Ok(RFunctionValue {
        value: acc.value(),
        method: EvalMethod::Direct,
        est_abs_err: 8.0 * f64::EPSILON * (2.0 * EULER_GAMMA + u.abs() + v.abs()),
    })
}

/// `R(x) = 1/x + 2 Σ_{n≥1} ζ(2n+1) x^{2n}`.
fn r_origin(x: f64) -> RFunctionValue {
    let zeta = odd_zeta();
    let x2 = x * x;
    let mut acc = CompensatedSum::new();
    let mut power = 1.0;
    for z in &zeta[1..=ORIGIN_TERMS] {
        power *= x2;
        acc.add(2.0 * z * power);
    }
    acc.add(1.0 / x);
    let tail = 2.0 * zeta[ORIGIN_TERMS + 1] * power * x2 / (1.0 - x2);
    RFunctionValue {
        value: acc.value(),
        method: EvalMethod::OriginSeries,
        est_abs_err: tail,
    }
}

/// `R(x) = ln 16 + 4 Σ_{n≥1} λ(2n+1) (1−2x)^{2n}`.
fn r_center(x: f64) -> RFunctionValue {
    let lambda = odd_lambda();
    let y = 1.0 - 2.0 * x;
    let y2 = y * y;
    let mut acc = CompensatedSum::new();
    acc.add(4.0 * LN_2);
    let mut power = 1.0;
    let mut tail = f64::INFINITY;
    for n in 1..=CENTER_TERMS {
        power *= y2;
        acc.add(4.0 * lambda[n] * power);
        tail = 4.0 * lambda[n + 1] * power * y2 / (1.0 - y2);
        if tail <= 1e-18 {
            break;
        }
    }
    RFunctionValue {
        value: acc.value(),
        method: EvalMethod::CenterSeries,
        est_abs_err: tail,
    }
}

/// `R(x) = −2γ − ψ(x) − ψ(1−x)` on `(0, 1)`; points above `1/2` are reflected.
pub fn r_eval(x: f64, method: EvalMethod) -> Result<RFunctionValue> {
    let p = fold("R", x)?;
    Ok(match method.resolve(p.x) {
        EvalMethod::OriginSeries => r_origin(p.x),
        EvalMethod::CenterSeries => r_center(p.x),
        _ => r_direct(p)?,
    })
}

/// `R⁽ⁿ⁾(x) = (−1)^{n+1} ψ⁽ⁿ⁾(1−x) − ψ⁽ⁿ⁾(x)`.
pub fn r_derivative(n: u32, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(domain("R_derivative", 0.0, "n >= 1"));
    }
    let p = ReflectionPoint::new(x)?;
    let target = |t: f64| {
        let factorial: f64 = (1..=n).map(f64::from).product();
        0.1 * f64::EPSILON * factorial * t.powi(-(n as i32) - 1).max(1.0)
    };
    let near = polygamma(n, p.x, target(p.x))?.value;
    let far = polygamma(n, p.one_minus_x, target(p.one_minus_x))?.value;
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sign * far - near)
}

/// `Σ_k s[k] x^k`, assuming `|s[k+2]| ≤ |s[k]|/4` past the stored end.
pub(crate) fn origin_sum(s: &[f64], x: f64) -> SeriesValue {
    let m = s.len() - 1;
    let mut acc = CompensatedSum::new();
    let mut power = 1.0;
    for c in s {
        acc.add(c * power);
        power *= x;
    }
    // power = x^{m+1}
    let x2 = x * x;
    let tail = (s[m - 1].abs() + s[m].abs() * x) * power / 4.0 / (1.0 - x2 / 4.0);
    SeriesValue::new(acc.value(), tail, s.len())
}

fn falling(n: u32, m: u32) -> f64 {
    (0..m).map(|i| f64::from(n - i)).product()
}

/// m-th derivative in `x` of `Σ_k s[k] y^{2k}` with `y = 1 − 2x`, assuming
/// `|s[k+1]| ≤ ratio·|s[k]|` past the stored end.
pub(crate) fn center_sum(s: &[f64], m: u32, y: f64, ratio: f64) -> SeriesValue {
    let mut acc = CompensatedSum::new();
    for (k, c) in s.iter().enumerate() {
        let p = 2 * k as u32;
        if p < m {
            continue;
        }
        acc.add(c * falling(p, m) * y.powi((p - m) as i32));
    }
    let last = s.len() as u32 - 1;
    let p = 2 * last + 2;
    let first = s[last as usize].abs() * ratio * falling(p, m) * y.abs().powi((p - m) as i32);
    let step = ratio * y * y * falling(p + 2, m) / falling(p, m);
    let tail = if step < 1.0 {
        first / (1.0 - step)
    } else {
        f64::INFINITY
    };
    let scale = (-2f64).powi(m as i32);
    SeriesValue::new(acc.value() * scale, tail * scale.abs(), s.len())
}

/// `Σ_k s[k] y^{2k}` with `|s[k]| ≤ sup` past the stored end.
pub(crate) fn bounded_center_sum(s: &[f64], y: f64, sup: f64) -> SeriesValue {
    let y2 = y * y;
    let mut acc = CompensatedSum::new();
    let mut power = 1.0;
    for c in s {
        acc.add(c * power);
        power *= y2;
    }
    SeriesValue::new(acc.value(), sup * power / (1.0 - y2), s.len())
}

/// Ratio bound for `|b_{k+1}/b_k|`, k ≥ 2; the true ratios approach 1/25 from below.
pub(crate) const B_RATIO: f64 = 1.0 / 24.0;

fn table() -> &'static CoefficientTable {
    default_table()
}

/// `f(x) = [1 + x(1−x)]R(x) − B(x)` on `(0, 1/2]`.
pub fn f_eval(x: f64, method: EvalMethod) -> Result<RFunctionValue> {
    half_open("f", x)?;
    let method = method.resolve(x);
    Ok(match method {
        EvalMethod::OriginSeries => {
            let s = origin_sum(&table().a, x);
            RFunctionValue {
                value: s.value,
                method,
                est_abs_err: s.tail_bound,
            }
        }
        EvalMethod::CenterSeries => {
            let y = 1.0 - 2.0 * x;
            let s = center_sum(&table().b, 0, y, B_RATIO);
            RFunctionValue {
                value: s.value,
                method,
                est_abs_err: s.tail_bound,
            }
        }
        _ => {
            let r = r_direct(ReflectionPoint::new(x)?)?;
            let q = 1.0 + x * (1.0 - x);
            let b = b_fn(x)?;
            RFunctionValue {
                value: q.mul_add(r.value, -b),
                method: EvalMethod::Direct,
                est_abs_err: q * r.est_abs_err + 4.0 * f64::EPSILON * (q * r.value.abs() + b),
            }
        }
    })
}

/// Value of `f` by the auto method.
pub fn f_value(x: f64) -> Result<f64> {
    Ok(f_eval(x, EvalMethod::Auto)?.value)
}

fn check_order(n: u32) -> Result<()> {
    if (1..=MAX_DERIVATIVE).contains(&n) {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "order",
            value: f64::from(n),
            lo: 1.0,
            hi: f64::from(MAX_DERIVATIVE),
        })
    }
}

/// `f⁽ⁿ⁾(x)` from the term-wise differentiated center expansion, `1 ≤ n ≤ 8`.
pub fn f_derivative(n: u32, x: f64) -> Result<f64> {
    check_order(n)?;
    half_open("f_derivative", x)?;
    Ok(center_sum(&table().b, n, 1.0 - 2.0 * x, B_RATIO).value)
}

/// `F(x) = b₀ + b₁(1−2x)² + B(x) − [1 + x(1−x)]R(x) = −Σ_{k≥2} b_k (1−2x)^{2k}`.
pub fn f_cm(x: f64) -> Result<f64> {
    half_open("F", x)?;
    let y = 1.0 - 2.0 * x;
    let s = center_sum(&table().b[2..], 0, y, B_RATIO);
    Ok(-s.value * y.powi(4))
}

fn shifted(s: &[f64], n: u32) -> Result<&[f64]> {
    let start = n as usize + 1;
    if start + MIN_SHIFTED_TERMS > s.len() {
        return Err(Error::Index {
            index: n as usize,
            max: s.len() - MIN_SHIFTED_TERMS - 1,
        });
    }
    Ok(&s[start..])
}

/// `fₙ(x) = (f(x) − Rₙ(x))/x^{n+1} = Σ_k a_{n+k+1} x^k`.
pub fn fn_ratio(n: u32, x: f64) -> Result<f64> {
    half_open("f_n", x)?;
    Ok(origin_sum(shifted(&table().a, n)?, x).value)
}

/// `gₙ(x) = (f(x) − Sₙ(x))/(1−2x)^{2n+2} = Σ_k b_{n+k+1} (1−2x)^{2k}`.
pub fn gn_ratio(n: u32, x: f64) -> Result<f64> {
    open_half("g_n", x)?;
    Ok(center_sum(shifted(&table().b, n)?, 0, 1.0 - 2.0 * x, B_RATIO).value)
}

/// `gₙ⁽ᵐ⁾(x)` from the term-wise differentiated expansion, `1 ≤ m ≤ 8`.
pub fn gn_derivative(n: u32, m: u32, x: f64) -> Result<f64> {
    check_order(m)?;
    open_half("g_n_derivative", x)?;
    Ok(center_sum(shifted(&table().b, n)?, m, 1.0 - 2.0 * x, B_RATIO).value)
}
