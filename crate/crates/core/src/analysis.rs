//! Comparison functions between `R` and `B`, the auxiliary functions used to
//! locate their extrema, bracketed root finding, the sharp constant δ, and
//! finite-difference shape probes.

use std::f64::consts::PI;
use std::fmt;

use crate::coefficients::default_table;
use crate::constants::constants;
use crate::error::{domain, Error, Result};
use crate::polygamma::{h1, sin_pi, tan_pi};
use crate::ramanujan::{
    bounded_center_sum, f_derivative, f_value, fn_ratio, gn_derivative, gn_ratio, CENTER_LIMIT,
};

/// Closest approach to an open endpoint.
pub const EPS_GUARD: f64 = 1e-9;
/// Default root tolerance, also the smallest accepted.
pub const DEFAULT_ROOT_TOL: f64 = 1e-13;
/// Width below which the root finder switches from bisection to secant steps.
const SECANT_WIDTH: f64 = 1e-6;

/// The three comparisons of `R` with `B(x)/(1 + x(1−x))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    /// `F₁ = [1 + x(1−x)]R/B`.
    F1,
    /// `F₂ = R/B − 1/(1 + x(1−x))`.
    F2,
    /// `F₃ = R − B/(1 + x(1−x))`.
    F3,
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

/// Evaluated through `f`, which keeps the leading `1/x` parts of `R` and
/// `B` from cancelling: `F₁ = f/B + 1`, `F₂ = f/(qB)`, `F₃ = f/q`.
pub fn comparison(kind: Comparison, x: f64) -> Result<f64> {
    half_open("F", x)?;
    let f = f_value(x)?;
    let q = 1.0 + x * (1.0 - x);
    let b = PI / sin_pi(x);
    Ok(match kind {
        Comparison::F1 => f / b + 1.0,
        Comparison::F2 => f / (q * b),
        Comparison::F3 => f / q,
    })
}

/// `H(x) = [f'(x) + f(x)H₁(x)]/(4(1−2x))`, by the center expansion
/// `Σ dₙ(1−2x)^{2n}` above [`CENTER_LIMIT`].
pub fn h_eval(x: f64) -> Result<f64> {
    open_half("H", x)?;
    let y = 1.0 - 2.0 * x;
    if x > CENTER_LIMIT {
        return Ok(bounded_center_sum(&default_table().d, y, 1.01).value);
    }
    h_direct(x)
}

fn h_direct(x: f64) -> Result<f64> {
    let y = 1.0 - 2.0 * x;
    Ok((f_derivative(1, x)? + f_value(x)? * h1(x)?) / (4.0 * y))
}

/// `H₃(x) = [5 − (1−2x)²]H(x) − f(x)`, by `Σ Dₙ(1−2x)^{2n}` above [`CENTER_LIMIT`].
pub fn h3_eval(x: f64) -> Result<f64> {
    open_half("H3", x)?;
    let y = 1.0 - 2.0 * x;
    if x > CENTER_LIMIT {
        return Ok(bounded_center_sum(&default_table().big_d, y, 6.0).value);
    }
    h3_direct(x)
}

fn h3_direct(x: f64) -> Result<f64> {
    let y = 1.0 - 2.0 * x;
    Ok((5.0 - y * y) * h_direct(x)? - f_value(x)?)
}

/// The direct and series forms of `H` and `H₃` at one point, for cross-checks.
pub fn h_both_paths(x: f64) -> Result<[(f64, f64); 2]> {
    open_half("H", x)?;
    let y = 1.0 - 2.0 * x;
    let t = default_table();
    Ok([
        (h_direct(x)?, bounded_center_sum(&t.d, y, 1.01).value),
        (h3_direct(x)?, bounded_center_sum(&t.big_d, y, 6.0).value),
    ])
}

/// `S₂(x) = b₀ + b₁(1−2x)² + b₂(1−2x)⁴`.
fn s2(y: f64) -> f64 {
    let b = &default_table().b;
    let y2 = y * y;
    b[0] + y2 * (b[1] + y2 * b[2])
}

/// `h₈(x) = S₂(x) sin(πx)/π`.
pub fn h8_eval(x: f64) -> Result<f64> {
    half_open("h8", x)?;
    Ok(s2(1.0 - 2.0 * x) * sin_pi(x) / PI)
}

/// `h₁₀(x) = b₁ + 2b₂(1−2x)²`.
pub fn h10_eval(x: f64) -> Result<f64> {
    half_open("h10", x)?;
    let y = 1.0 - 2.0 * x;
    let b = &default_table().b;
    Ok(b[1] + 2.0 * b[2] * y * y)
}

/// `h₁₁(x) = (1−2x) tan(πx)`.
pub fn h11_eval(x: f64) -> Result<f64> {
    open_half("h11", x)?;
    Ok((1.0 - 2.0 * x) * tan_pi(x))
}

/// `h₉(x) = S₂(x) − 4h₁₀(x)h₁₁(x)/π`.
pub fn h9_eval(x: f64) -> Result<f64> {
    open_half("h9", x)?;
    Ok(s2(1.0 - 2.0 * x) - 4.0 * h10_eval(x)? * h11_eval(x)? / PI)
}

/// `F₅(x) = [b₀ + (1−b₀)(1−2x)] sin(πx)`.
pub fn f5_eval(x: f64) -> Result<f64> {
    half_open("F5", x)?;
    let b0 = constants().b0;
    Ok((b0 + (1.0 - b0) * (1.0 - 2.0 * x)) * sin_pi(x))
}

/// `F₆(x) = π[b₀ + (1−b₀)(1−2x)] − 2(1−b₀) tan(πx)`, proportional to `F₅'`.
pub fn f6_eval(x: f64) -> Result<f64> {
    open_half("F6", x)?;
    let b0 = constants().b0;
    Ok(PI * (b0 + (1.0 - b0) * (1.0 - 2.0 * x)) - 2.0 * (1.0 - b0) * tan_pi(x))
}

/// `F₇(x) = [b₀ + b₁(1−2x)²] sin(πx)`.
pub fn f7_eval(x: f64) -> Result<f64> {
    half_open("F7", x)?;
    let k = constants();
    let y = 1.0 - 2.0 * x;
    Ok((k.b0 + k.b1 * y * y) * sin_pi(x))
}

/// `F₈(x) = π[b₀ + b₁(1−2x)²] − 4b₁h₁₁(x)`, proportional to `F₇'`.
pub fn f8_eval(x: f64) -> Result<f64> {
    open_half("F8", x)?;
    let k = constants();
    let y = 1.0 - 2.0 * x;
    Ok(PI * (k.b0 + k.b1 * y * y) - 4.0 * k.b1 * h11_eval(x)?)
}

/// `F₉(x) = [F₃(x) − 1]/x`, as `[(a₁−1) + (a₂+1)x + x²f₂(x)]/(1 + x(1−x))`.
pub fn f9_eval(x: f64) -> Result<f64> {
    half_open("F9", x)?;
    let a = &default_table().a;
    let q = 1.0 + x * (1.0 - x);
    Ok(((a[1] - 1.0) + (a[2] + 1.0) * x + x * x * fn_ratio(2, x)?) / q)
}

/// `F₁₀(x) = [F₃(x) − ρ]/(1−2x)`, as `4y[5g₀(x) + b₀]/(5(5 − y²))` with `y = 1−2x`.
pub fn f10_eval(x: f64) -> Result<f64> {
    open_half("F10", x)?;
    let y = 1.0 - 2.0 * x;
    let b0 = constants().b0;
    Ok(4.0 * y * (5.0 * gn_ratio(0, x)? + b0) / (5.0 * (5.0 - y * y)))
}

/// `F₁''(1/2) = −8d₀/π`.
pub fn f1_second_derivative_at_half() -> f64 {
    -8.0 * default_table().d[0] / PI
}

/// `F₂''(1/2) = −32D₀/(25π)`.
pub fn f2_second_derivative_at_half() -> f64 {
    -32.0 * default_table().big_d[0] / (25.0 * PI)
}

/// Functions whose zeros the analysis needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootTarget {
    H,
    H3,
    H9,
    F6,
    F8,
    /// `F₅(x) − level`.
    F5Level(f64),
    /// `F₇(x) − level`.
    F7Level(f64),
}

impl RootTarget {
    pub fn eval(self, x: f64) -> Result<f64> {
        match self {
            Self::H => h_eval(x),
            Self::H3 => h3_eval(x),
            Self::H9 => h9_eval(x),
            Self::F6 => f6_eval(x),
            Self::F8 => f8_eval(x),
            Self::F5Level(level) => Ok(f5_eval(x)? - level),
            Self::F7Level(level) => Ok(f7_eval(x)? - level),
        }
    }
}

impl fmt::Display for RootTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::H => f.write_str("H"),
            Self::H3 => f.write_str("H3"),
            Self::H9 => f.write_str("h9"),
            Self::F6 => f.write_str("F6"),
            Self::F8 => f.write_str("F8"),
            Self::F5Level(l) => write!(f, "F5-{l}"),
            Self::F7Level(l) => write!(f, "F7-{l}"),
        }
    }
}

/// An interval on which `target` changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
    pub target: RootTarget,
}

impl RootBracket {
    /// Evaluates the ends and checks for a strict sign change.
    pub fn new(target: RootTarget, lo: f64, hi: f64) -> Result<Self> {
        let f_lo = target.eval(lo)?;
        let f_hi = target.eval(hi)?;
        if !(lo < hi) || !(f_lo * f_hi < 0.0) {
            return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
        }
        Ok(Self {
            lo,
            hi,
            f_lo,
            f_hi,
            target,
        })
    }

    /// First sign change of `target` on a uniform scan of `[lo, hi]`.
    pub fn scan(target: RootTarget, lo: f64, hi: f64, steps: usize) -> Result<Self> {
        let steps = steps.max(1);
        let mut prev = (lo, target.eval(lo)?);
        for i in 1..=steps {
            let x = if i == steps {
                hi
            } else {
                lo + (hi - lo) * i as f64 / steps as f64
            };
            let fx = target.eval(x)?;
            if prev.1 * fx < 0.0 {
                return Self::new(target, prev.0, x);
            }
            prev = (x, fx);
        }
        Err(Error::InvalidBracket {
            lo,
            hi,
            f_lo: target.eval(lo)?,
            f_hi: prev.1,
        })
    }
}

/// A located zero with the final enclosing interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub lo: f64,
    pub hi: f64,
    /// `|target(x)|`.
    pub residual: f64,
}

/// Bisection down to width `1e−6`, then Illinois-modified false position,
/// bisecting whenever a secant step fails to halve the bracket.
pub fn find_root(bracket: &RootBracket, tol: f64) -> Result<Root> {
    if !(tol >= DEFAULT_ROOT_TOL) || !tol.is_finite() {
        return Err(Error::Parameter {
            name: "tol",
            value: tol,
            lo: DEFAULT_ROOT_TOL,
            hi: f64::INFINITY,
        });
    }
    let target = bracket.target;
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let (mut f_lo, mut f_hi) = (bracket.f_lo, bracket.f_hi);
    // Illinois weights for a stale endpoint.
    let (mut w_lo, mut w_hi) = (1.0, 1.0);
    let mut last_side = 0i8;
    let mut width_before = hi - lo;
    let mut steps_since_check = 0;
    let mut force_bisect = false;

    for _ in 0..500 {
        let width = hi - lo;
        if width <= tol {
            break;
        }
        let mid = lo + 0.5 * width;
        let x = if width > SECANT_WIDTH || force_bisect {
            force_bisect = false;
            mid
        } else {
            let (a, b) = (f_lo * w_lo, f_hi * w_hi);
            let s = lo - a * (hi - lo) / (b - a);
            let guard = 0.25 * tol;
            if s.is_finite() {
                s.clamp(lo + guard, hi - guard)
            } else {
                mid
            }
        };
        if x <= lo || x >= hi {
            break;
        }
        let fx = target.eval(x)?;
        if fx == 0.0 {
            return Ok(Root {
                x,
                lo: x,
                hi: x,
                residual: 0.0,
            });
        }
        if fx * f_lo < 0.0 {
            hi = x;
            f_hi = fx;
            w_hi = 1.0;
            if last_side == -1 {
                w_lo *= 0.5;
            }
            last_side = -1;
        } else {
            lo = x;
            f_lo = fx;
            w_lo = 1.0;
            if last_side == 1 {
                w_hi *= 0.5;
            }
            last_side = 1;
        }
        if width <= SECANT_WIDTH {
            steps_since_check += 1;
            if steps_since_check == 2 {
                if hi - lo > 0.5 * width_before {
                    force_bisect = true;
                }
                width_before = hi - lo;
                steps_since_check = 0;
            }
        } else {
            width_before = hi - lo;
        }
    }
    let (x, residual) = if f_lo.abs() <= f_hi.abs() {
        (lo, f_lo.abs())
    } else {
        (hi, f_hi.abs())
    };
    Ok(Root {
        x,
        lo,
        hi,
        residual,
    })
}

/// The maximiser `x₁` of `F₁` and the sharp constant `δ = F₁(x₁)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaEstimate {
    pub x1: f64,
    pub delta: f64,
    pub residual_h: f64,
}

/// Locates `x₁` as the zero of `H` on `[0.26, 0.49]`.
pub fn delta_estimate(tol: f64) -> Result<DeltaEstimate> {
    let bracket = RootBracket::new(RootTarget::H, 0.26, 0.49)?;
    let root = find_root(&bracket, tol)?;
    let delta = comparison(Comparison::F1, root.x)?;
    let estimate = DeltaEstimate {
        x1: root.x,
        delta,
        residual_h: h_eval(root.x)?.abs(),
    };
    let k = constants();
    if !(estimate.x1 > 0.25 && estimate.x1 < 0.5) || !(delta > k.delta_lo && delta < k.delta_hi) {
        return Err(Error::Invariant(format!(
            "delta estimate out of range: {estimate:?}"
        )));
    }
    Ok(estimate)
}

/// Zero `x₀` of `h₉` on `[0.27, 0.28]`.
pub fn x0_root(tol: f64) -> Result<Root> {
    find_root(&RootBracket::new(RootTarget::H9, 0.27, 0.28)?, tol)
}

/// Zero `x₂` of `H₃`, the maximiser of `F₂`, seeded by a coarse scan.
pub fn x2_root(tol: f64) -> Result<Root> {
    let bracket = RootBracket::scan(RootTarget::H3, EPS_GUARD, 0.5 - EPS_GUARD, 64)?;
    find_root(&bracket, tol)
}

/// Points where the sine-type upper bounds trade places with `δB`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossings {
    pub level: f64,
    pub x5: f64,
    pub x6: f64,
    pub x7: f64,
    pub x8: f64,
    pub x9: f64,
    pub x10: f64,
}

/// Level crossings of `F₅` and `F₇` with `π(δ − 1)` and their critical points.
pub fn crossings(delta: f64, tol: f64) -> Result<Crossings> {
    let level = PI * (delta - 1.0);
    let (lo, hi) = (EPS_GUARD, 0.5 - EPS_GUARD);
    let x5 = find_root(&RootBracket::new(RootTarget::F6, lo, hi)?, tol)?.x;
    let f5 = RootTarget::F5Level(level);
    let x6 = find_root(&RootBracket::new(f5, lo, x5)?, tol)?.x;
    let x7 = find_root(&RootBracket::new(f5, x5, 0.5)?, tol)?.x;
    let x8 = find_root(&RootBracket::new(RootTarget::F8, lo, hi)?, tol)?.x;
    let f7 = RootTarget::F7Level(level);
    let x9 = find_root(&RootBracket::new(f7, lo, x8)?, tol)?.x;
    let x10 = find_root(&RootBracket::new(f7, x8, 0.5)?, tol)?.x;
    Ok(Crossings {
        level,
        x5,
        x6,
        x7,
        x8,
        x9,
        x10,
    })
}

/// `n` equally spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Largest `max(f_{i+1} − f_i, 0)` for a sequence claimed decreasing (or
/// the mirror for increasing); zero when the claim holds exactly.
pub fn monotone_violation(values: &[f64], increasing: bool) -> f64 {
    values
        .windows(2)
        .map(|w| if increasing { w[0] - w[1] } else { w[1] - w[0] })
        .fold(0.0, f64::max)
}

/// Largest violation of convexity (or concavity) in raw second differences
/// `f_{i−1} − 2f_i + f_{i+1}` of uniformly spaced samples.
pub fn convexity_violation(values: &[f64], convex: bool) -> f64 {
    values
        .windows(3)
        .map(|w| {
            let d2 = w[0] - 2.0 * w[1] + w[2];
            if convex {
                -d2
            } else {
                d2
            }
        })
        .fold(0.0, f64::max)
}

/// Index of the unique interior maximum of a sequence that rises then falls,
/// or `None` if it is not unimodal.
pub fn unimodal_argmax(values: &[f64]) -> Option<usize> {
    let peak = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))?
        .0;
    let rising = values[..=peak].windows(2).all(|w| w[1] > w[0]);
    let falling = values[peak..].windows(2).all(|w| w[1] < w[0]);
    (rising && falling && peak > 0 && peak + 1 < values.len()).then_some(peak)
}

/// Targets of the complete-monotonicity probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmTarget {
    /// `F = −Σ_{k≥2} b_k (1−2x)^{2k}`.
    F,
    F3,
    /// `G_{n,1} = gₙ'`.
    G(u32),
    H3,
}

impl CmTarget {
    fn eval(self, x: f64) -> Result<f64> {
        match self {
            Self::F => crate::ramanujan::f_cm(x),
            Self::F3 => comparison(Comparison::F3, x),
            Self::G(n) => gn_derivative(n, 1, x),
            Self::H3 => h3_eval(x),
        }
    }

    fn domain(self) -> (f64, f64) {
        match self {
            Self::F | Self::F3 => (EPS_GUARD, 0.5),
            Self::G(_) | Self::H3 => (EPS_GUARD, 0.5 - EPS_GUARD),
        }
    }
}

impl fmt::Display for CmTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::F => f.write_str("F"),
            Self::F3 => f.write_str("F3"),
            Self::G(n) => write!(f, "G({n},1)"),
            Self::H3 => f.write_str("H3"),
        }
    }
}

/// Minimum of `(−1)^m Δ_h^m φ / h^m` over the grid for each order `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CmReport {
    pub target: CmTarget,
    /// `(m, h, minimum)` for `m = 0..=max_order`.
    pub orders: Vec<(u32, f64, f64)>,
}

impl CmReport {
    /// Smallest minimum over orders `m ≥ from`.
    pub fn worst_from(&self, from: u32) -> f64 {
        self.orders
            .iter()
            .filter(|(m, _, _)| *m >= from)
            .map(|(_, _, v)| *v)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Forward differences of order `m` with step `h = max(grid spacing, 10^{−10/m})`,
/// so that `h^m ≥ 1e−10`. An evidence probe, not a certificate.
pub fn cm_probe(target: CmTarget, max_order: u32, grid_size: usize) -> Result<CmReport> {
    if max_order > crate::ramanujan::MAX_DERIVATIVE {
        return Err(Error::Parameter {
            name: "max_order",
            value: f64::from(max_order),
            lo: 0.0,
            hi: f64::from(crate::ramanujan::MAX_DERIVATIVE),
        });
    }
    let (lo, hi) = target.domain();
    let grid = uniform_grid(lo, hi, grid_size.max(2));
    let spacing = grid[1] - grid[0];
    let mut orders = Vec::with_capacity(max_order as usize + 1);
    for m in 0..=max_order {
        let h = if m == 0 {
            spacing
        } else {
            spacing.max(1e-10f64.powf(1.0 / f64::from(m)))
        };
        let reach = f64::from(m) * h;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let mut worst = f64::INFINITY;
        for &x in grid.iter().filter(|&&x| x + reach <= hi) {
            let values = (0..=m)
                .map(|j| target.eval(x + f64::from(j) * h))
                .collect::<Result<Vec<_>>>()?;
            worst = worst.min(sign * forward_difference(&values) / h.powi(m as i32));
        }
        orders.push((m, h, worst));
    }
    Ok(CmReport { target, orders })
}

/// `Δ^m` from `m+1` consecutive samples.
fn forward_difference(values: &[f64]) -> f64 {
    let mut row = values.to_vec();
    for len in (1..row.len()).rev() {
        for i in 0..len {
            row[i] = row[i + 1] - row[i];
        }
    }
    row[0]
}

/// Maximum of `h₈` on a uniform grid of `(0, 1/2]`.
pub fn h8_grid_max(grid_size: usize) -> Result<f64> {
    uniform_grid(EPS_GUARD, 0.5, grid_size)
        .into_iter()
        .map(h8_eval)
        .try_fold(f64::NEG_INFINITY, |acc, v| Ok(acc.max(v?)))
}
