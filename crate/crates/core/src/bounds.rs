//! Two-sided bounds for `R(x)` on `(0, 1/2]`.
//!
//! Every bound has the shape `(B(x) + T(x))/(1 + x(1−x))` for some
//! elementary `T`, except the multiplicative one, which scales `B(x)`.

use std::fmt;

use crate::coefficients::{default_table, CoefficientTable};
use crate::constants::constants;
use crate::error::{domain, Error, Result};
use crate::polygamma::b_fn;
use crate::sum::CompensatedSum;

/// Default order for the envelope.
pub const DEFAULT_ENVELOPE_N: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundMethod {
    /// `T = b₀ + (1−2x)P(x)` below and `b₀ + (1−2x)Q(x)` above.
    SinePoly,
    /// Partial sums of the origin expansion with `A`-corrections.
    OriginPoly(u32),
    /// Partial sums of the center expansion with a `c`-correction below.
    CenterPoly(u32),
    /// `B/q < R ≤ δB/q`; the lower side is strict and never attained.
    Multiplicative,
    /// `ρ + B/q ≤ R ≤ ρ + (1−ρ)(1−2x) + B/q`.
    Additive,
    /// Best of the sine, origin, center and multiplicative bounds.
    Envelope(u32),
}

impl BoundMethod {
    /// Whether both sides meet `R(1/2)`.
    pub fn equality_at_half(self) -> bool {
        !matches!(self, Self::Multiplicative)
    }

    pub fn name(self) -> String {
        match self {
            Self::SinePoly => "sine_poly".into(),
            Self::OriginPoly(n) => format!("origin_poly({n})"),
            Self::CenterPoly(n) => format!("center_poly({n})"),
            Self::Multiplicative => "multiplicative".into(),
            Self::Additive => "additive".into(),
            Self::Envelope(n) => format!("envelope({n})"),
        }
    }
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Lower and upper bounds for `R` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
    pub method: BoundMethod,
}

impl BoundPair {
    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }

    /// `lower − slack ≤ r ≤ upper + slack`.
    pub fn contains(&self, r: f64, slack: f64) -> bool {
        self.lower - slack <= r && r <= self.upper + slack
    }
}

/// Pieces shared by all bounds at one point.
struct Point {
    x: f64,
    y: f64,
    q: f64,
    b: f64,
}

impl Point {
    fn new(x: f64) -> Result<Self> {
        if !(x > 0.0 && x <= 0.5) {
            return Err(domain("bound", x, "0 < x <= 1/2"));
        }
        Ok(Self {
            x,
            y: 1.0 - 2.0 * x,
            q: 1.0 + x * (1.0 - x),
            b: b_fn(x)?,
        })
    }

    fn pair(&self, lower: f64, upper: f64, method: BoundMethod) -> BoundPair {
        BoundPair {
            lower: (self.b + lower) / self.q,
            upper: (self.b + upper) / self.q,
            method,
        }
    }
}

fn check_index(table: &CoefficientTable, index: usize) -> Result<()> {
    if index > table.n_max() {
        Err(Error::Index {
            index,
            max: table.n_max(),
        })
    } else {
        Ok(())
    }
}

/// `R_m(x) = Σ_{k≤m} a_k x^k`.
fn origin_partial(table: &CoefficientTable, m: usize, x: f64) -> f64 {
    let mut acc = CompensatedSum::new();
    let mut power = 1.0;
    for a in &table.a[..=m] {
        acc.add(a * power);
        power *= x;
    }
    acc.value()
}

/// `S_m(x) = Σ_{k≤m} b_k (1−2x)^{2k}`.
fn center_partial(table: &CoefficientTable, m: usize, y: f64) -> f64 {
    let y2 = y * y;
    let mut acc = CompensatedSum::new();
    let mut power = 1.0;
    for b in &table.b[..=m] {
        acc.add(b * power);
        power *= y2;
    }
    acc.value()
}

fn sine_terms(p: &Point) -> (f64, f64) {
    let k = constants();
    let (b0, b1) = (k.b0, k.b1);
    let lower = (1.0 - b0 - b1 + b1 * p.y).max(0.0);
    let upper = (1.0 - b0).min(b1 * p.y);
    (b0 + p.y * lower, b0 + p.y * upper)
}

fn origin_terms(table: &CoefficientTable, n: u32, p: &Point) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(domain("origin_poly", 0.0, "n >= 1"));
    }
    let lo = 2 * n as usize + 2;
    let hi = 2 * n as usize + 1;
    check_index(table, lo)?;
    let lower = origin_partial(table, lo, p.x) + table.big_a[lo] * p.x.powi(lo as i32 + 1);
    let upper = origin_partial(table, hi, p.x) + table.big_a[hi] * p.x.powi(hi as i32 + 1);
    Ok((lower, upper))
}

fn center_terms(table: &CoefficientTable, n: u32, p: &Point) -> Result<(f64, f64)> {
    let m = n as usize + 1;
    check_index(table, m)?;
    let s = center_partial(table, m, p.y);
    Ok((s + table.c[m] * p.y.powi(2 * n as i32 + 3), s))
}

fn check_delta(delta: f64) -> Result<()> {
    let k = constants();
    if delta >= k.delta_lo && delta <= k.delta_hi {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "delta",
            value: delta,
            lo: k.delta_lo,
            hi: k.delta_hi,
        })
    }
}

pub fn bound_sine_poly(x: f64) -> Result<BoundPair> {
    let p = Point::new(x)?;
    let (lower, upper) = sine_terms(&p);
    Ok(p.pair(lower, upper, BoundMethod::SinePoly))
}

/// Origin-polynomial bound of order `n ≥ 1` using `R_{2n+2}`, `R_{2n+1}`.
pub fn bound_origin_poly(n: u32, x: f64) -> Result<BoundPair> {
    let p = Point::new(x)?;
    let (lower, upper) = origin_terms(default_table(), n, &p)?;
    Ok(p.pair(lower, upper, BoundMethod::OriginPoly(n)))
}

/// Center-polynomial bound of order `n ≥ 0` using `S_{n+1}`.
pub fn bound_center_poly(n: u32, x: f64) -> Result<BoundPair> {
    let p = Point::new(x)?;
    let (lower, upper) = center_terms(default_table(), n, &p)?;
    Ok(p.pair(lower, upper, BoundMethod::CenterPoly(n)))
}

/// `B/q < R ≤ δB/q` for `δ` in the admissible bracket.
pub fn bound_multiplicative(x: f64, delta: f64) -> Result<BoundPair> {
    check_delta(delta)?;
    let p = Point::new(x)?;
    Ok(BoundPair {
        lower: p.b / p.q,
        upper: delta * p.b / p.q,
        method: BoundMethod::Multiplicative,
    })
}

pub fn bound_additive(x: f64) -> Result<BoundPair> {
    let p = Point::new(x)?;
    let rho = constants().rho;
    let base = p.b / p.q;
    Ok(BoundPair {
        lower: rho + base,
        upper: rho + (1.0 - rho) * p.y + base,
        method: BoundMethod::Additive,
    })
}

/// Largest of the sine, origin and center lower bounds and smallest of the
/// corresponding upper bounds and `δB/q`.
pub fn bound_envelope(n: u32, x: f64, delta: f64) -> Result<BoundPair> {
    check_delta(delta)?;
    let p = Point::new(x)?;
    let table = default_table();
    let (s_lo, s_hi) = sine_terms(&p);
    let (o_lo, o_hi) = origin_terms(table, n, &p)?;
    let (c_lo, c_hi) = center_terms(table, n, &p)?;
    let lower = s_lo.max(o_lo).max(c_lo);
    let upper = s_hi.min(o_hi).min(c_hi).min((delta - 1.0) * p.b);
    Ok(p.pair(lower, upper, BoundMethod::Envelope(n)))
}

/// The bound named by `method` at `x`; `delta` is used only by the
/// multiplicative and envelope bounds.
pub fn bound(method: BoundMethod, x: f64, delta: f64) -> Result<BoundPair> {
    match method {
        BoundMethod::SinePoly => bound_sine_poly(x),
        BoundMethod::OriginPoly(n) => bound_origin_poly(n, x),
        BoundMethod::CenterPoly(n) => bound_center_poly(n, x),
        BoundMethod::Multiplicative => bound_multiplicative(x, delta),
        BoundMethod::Additive => bound_additive(x),
        BoundMethod::Envelope(n) => bound_envelope(n, x, delta),
    }
}

/// Every bound at `x`, with `n` the order for the polynomial methods
/// (the center bound uses order `n` as well).
pub fn all_bounds(x: f64, n: u32, delta: f64) -> Result<Vec<BoundPair>> {
    Ok(vec![
        bound_sine_poly(x)?,
        bound_origin_poly(n, x)?,
        bound_center_poly(n, x)?,
        bound_multiplicative(x, delta)?,
        bound_additive(x)?,
        bound_envelope(n, x, delta)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::DELTA_HI;
    use crate::ramanujan::{r_eval, EvalMethod};
    use proptest::prelude::*;
    use std::f64::consts::{LN_2, PI};

    fn r(x: f64) -> f64 {
        r_eval(x, EvalMethod::Auto).unwrap().value
    }

    #[test]
    fn equality_at_half() {
        let r_half = 4.0 * LN_2;
        for pair in all_bounds(0.5, 2, DELTA_HI).unwrap() {
            if pair.method.equality_at_half() {
                assert!((pair.lower - r_half).abs() <= 1e-12, "{pair:?}");
                assert!((pair.upper - r_half).abs() <= 1e-12, "{pair:?}");
            } else {
                assert!(pair.upper >= r_half && pair.lower < r_half);
            }
        }
    }

    #[test]
    fn reference_points() {
        let quarter = 6.0 * LN_2;
        assert!(bound_sine_poly(0.25).unwrap().contains(quarter, 0.0));
        assert!(bound_sine_poly(0.1)
            .unwrap()
            .contains(10.024_250_560_555, 0.0));

        let o = bound_origin_poly(1, 0.3).unwrap();
        assert!(o.contains(r(0.3), 0.0) && o.gap() < 2e-3);
        assert!(bound_origin_poly(1, 0.25).unwrap().contains(quarter, 0.0));

        assert!(bound_center_poly(1, 0.2).unwrap().contains(r(0.2), 0.0));
        let c = bound_center_poly(3, 0.45).unwrap();
        assert!(c.contains(r(0.45), 0.0) && c.gap() < 1e-6);

        let m = bound_multiplicative(0.25, DELTA_HI).unwrap();
        assert!((m.lower - PI * 2f64.sqrt() * 16.0 / 19.0).abs() < 1e-14);
        assert!(m.lower < quarter);
        assert!(bound_multiplicative(1e-3, DELTA_HI).unwrap().lower < r(1e-3));

        let a = bound_additive(0.25).unwrap();
        assert!(a.contains(quarter, 0.0));
        let a0 = bound_additive(1e-7).unwrap();
        assert!((a0.gap() - (1.0 - constants().rho)).abs() < 1e-6);

        let e = bound_envelope(2, 0.15, DELTA_HI).unwrap();
        assert!(e.gap() < bound_sine_poly(0.15).unwrap().gap());
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            bound_multiplicative(0.3, 1.2),
            Err(Error::Parameter { .. })
        ));
        assert!(matches!(
            bound_origin_poly(40, 0.3),
            Err(Error::Index { .. })
        ));
        assert!(bound_origin_poly(0, 0.3).is_err());
        assert!(bound_sine_poly(0.6).is_err());
        assert!(bound_additive(0.0).is_err());
    }

    proptest! {
        #[test]
        fn envelope_tighter_than_constituents(x in 1e-4f64..=0.5, n in 1u32..5) {
            let e = bound_envelope(n, x, DELTA_HI).unwrap();
            for other in [
                bound_sine_poly(x).unwrap(),
                bound_origin_poly(n, x).unwrap(),
                bound_center_poly(n, x).unwrap(),
            ] {
                prop_assert!(e.lower >= other.lower && e.upper <= other.upper);
            }
            prop_assert!(e.upper <= bound_multiplicative(x, DELTA_HI).unwrap().upper * (1.0 + 1e-15));
        }

        #[test]
        fn bounds_are_sound(x in 1e-6f64..=0.5, n in 1u32..6) {
            let value = r(x);
            let slack = 1e-12 * value.abs();
            for pair in all_bounds(x, n, DELTA_HI).unwrap() {
                prop_assert!(pair.lower <= pair.upper);
                prop_assert!(pair.contains(value, slack), "{:?} at {} with R = {}", pair, x, value);
            }
        }

        #[test]
        fn sine_dominates_additive_and_multiplicative(x in 1e-6f64..=0.5) {
            let s = bound_sine_poly(x).unwrap();
            let a = bound_additive(x).unwrap();
            let m = bound_multiplicative(x, DELTA_HI).unwrap();
            let tol = 1e-14 * s.upper;
            prop_assert!(s.lower >= a.lower - tol && s.upper <= a.upper + tol);
            prop_assert!(s.lower >= m.lower - tol);
        }
    }
}
