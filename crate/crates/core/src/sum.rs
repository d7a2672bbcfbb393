//! Compensated accumulation and the power-sum engine behind every Dirichlet-type series.
//!
//! A power sum is `sum_{j>=0} g(j)` where `g` is a finite combination of
//! `w * u^(-s) * (ln u)^p` with `u = scale*j + shift` and `p` in {0, 1}. Terms
//! are summed directly until the integral-test bound meets the target, and
//! otherwise the tail from some cut `N` is replaced by its Euler-Maclaurin
//! expansion, whose first omitted correction bounds the remainder.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Hard cap on explicitly summed terms.
pub const TERM_CAP: usize = 10_000_000;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        acc.extend(iter);
        acc
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// A truncated series together with a bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Absolute bound on the omitted tail (rounding not included).
    pub tail_bound: f64,
    pub terms_used: usize,
}

impl SeriesValue {
    pub(crate) fn new(value: f64, tail_bound: f64, terms_used: usize) -> Self {
        debug_assert!(tail_bound >= 0.0 && tail_bound.is_finite());
        Self {
            value,
            tail_bound,
            terms_used: terms_used.max(1),
        }
    }

    /// Scales value and bound by `factor`.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            tail_bound: self.tail_bound * factor.abs(),
            terms_used: self.terms_used,
        }
    }
}

/// One component `weight * u^(-exponent) * (ln u)^log` with `u = scale*j + shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct PowerTerm {
    pub weight: f64,
    pub scale: f64,
    pub shift: f64,
    pub exponent: f64,
    pub log: bool,
}

impl PowerTerm {
    pub const fn new(weight: f64, scale: f64, shift: f64, exponent: f64) -> Self {
        Self {
            weight,
            scale,
            shift,
            exponent,
            log: false,
        }
    }

    pub const fn with_log(mut self) -> Self {
        self.log = true;
        self
    }

    #[inline]
    fn arg(&self, t: f64) -> f64 {
        self.scale * t + self.shift
    }

    #[inline]
    fn base(&self, u: f64) -> f64 {
        let p = u.powf(-self.exponent);
        if self.log {
            p * u.ln()
        } else {
            p
        }
    }

    #[inline]
    fn value(&self, t: f64) -> f64 {
        self.weight * self.base(self.arg(t))
    }

    /// m-th derivative with respect to the summation index.
    fn derivative(&self, m: usize, t: f64) -> f64 {
        let u = self.arg(t);
        let s = self.exponent;
        let mut rising = 1.0;
        let mut harmonic = 0.0;
        for i in 0..m {
            rising *= s + i as f64;
            harmonic += 1.0 / (s + i as f64);
        }
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        let power = u.powf(-s - m as f64);
        let core = if self.log {
            rising * (u.ln() - harmonic)
        } else {
            rising
        };
        self.weight * self.scale.powi(m as i32) * sign * core * power
    }

    /// `int_u^inf base(v) dv`, finite only for exponent > 1.
    fn tail_integral(&self, u: f64) -> f64 {
        let s1 = self.exponent - 1.0;
        if s1 <= 0.0 {
            return f64::INFINITY;
        }
        let p = u.powf(-s1);
        if self.log {
            p * (u.ln() / s1 + 1.0 / (s1 * s1))
        } else {
            p / s1
        }
    }
}

fn bernoulli_ratios() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // B_{2j} for j = 1..=15 as exact rationals.
        const B: [(f64, f64); 15] = [
            (1.0, 6.0),
            (-1.0, 30.0),
            (1.0, 42.0),
            (-1.0, 30.0),
            (5.0, 66.0),
            (-691.0, 2730.0),
            (7.0, 6.0),
            (-3617.0, 510.0),
            (43867.0, 798.0),
            (-174611.0, 330.0),
            (854513.0, 138.0),
            (-236364091.0, 2730.0),
            (8553103.0, 6.0),
            (-23749461029.0, 870.0),
            (8615841276005.0, 14322.0),
        ];
        let mut factorial = 1.0;
        let mut out = Vec::with_capacity(B.len());
        for (j, (num, den)) in B.iter().enumerate() {
            let n = 2 * (j + 1);
            factorial *= (n - 1) as f64 * n as f64;
            out.push(num / den / factorial);
        }
        out
    })
}

/// Gauss-Legendre nodes and weights on [-1, 1].
fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        const N: usize = 24;
        let mut rule = Vec::with_capacity(N);
        for i in 0..N {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=N {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        rule
    })
}

fn quadrature(term: &PowerTerm, a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    compensated_sum(
        gauss_legendre()
            .iter()
            .map(|&(x, w)| w * term.base(mid + half * x)),
    ) * half
}

pub(crate) struct PowerSum<'a> {
    name: &'static str,
    terms: &'a [PowerTerm],
    /// Index groups whose weights cancel; their tail integral is taken over a
    /// finite interval, which also covers exponent <= 1.
    cancelling: Vec<Vec<usize>>,
    isolated: Vec<usize>,
    bound_factor: f64,
}

impl<'a> PowerSum<'a> {
    pub fn new(name: &'static str, terms: &'a [PowerTerm]) -> Self {
        let mut used = vec![false; terms.len()];
        let mut cancelling = Vec::new();
        let mut isolated = Vec::new();
        for i in 0..terms.len() {
            if used[i] {
                continue;
            }
            let t = &terms[i];
            let group: Vec<usize> = (i..terms.len())
                .filter(|&k| {
                    !used[k]
                        && terms[k].scale == t.scale
                        && terms[k].exponent == t.exponent
                        && terms[k].log == t.log
                })
                .collect();
            let net: f64 = group.iter().map(|&k| terms[k].weight).sum();
            let gross: f64 = group.iter().map(|&k| terms[k].weight.abs()).sum();
            for &k in &group {
                used[k] = true;
            }
            if group.len() > 1 && net.abs() <= 1e-14 * gross {
                cancelling.push(group);
            } else {
                isolated.extend(group);
            }
        }
        let single_signed = terms.iter().all(|t| t.weight > 0.0 && !t.log)
            || terms.iter().all(|t| t.weight < 0.0 && !t.log);
        let bound_factor = if single_signed && cancelling.is_empty() {
            1.0
        } else {
            2.0
        };
        Self {
            name,
            terms,
            cancelling,
            isolated,
            bound_factor,
        }
    }

    fn value(&self, t: f64) -> f64 {
        compensated_sum(self.terms.iter().map(|c| c.value(t)))
    }

    fn derivative(&self, m: usize, t: f64) -> f64 {
        compensated_sum(self.terms.iter().map(|c| c.derivative(m, t)))
    }

    /// Bound on `sum_{j>=k} g(j)` from the integral test applied per component.
    fn direct_bound(&self, k: f64) -> f64 {
        self.terms
            .iter()
            .map(|c| {
                let u = c.arg(k);
                let b = c.base(u).abs() + c.tail_integral(u).abs() / c.scale;
                c.weight.abs() * b
            })
            .sum()
    }

    /// Signed `int_t^inf g`.
    fn tail_integral(&self, t: f64) -> f64 {
        let mut acc = CompensatedSum::new();
        for &i in &self.isolated {
            let c = &self.terms[i];
            acc.add(c.weight * c.tail_integral(c.arg(t)) / c.scale);
        }
        for group in &self.cancelling {
            let upper = group
                .iter()
                .map(|&i| self.terms[i].arg(t))
                .fold(f64::MIN, f64::max);
            for &i in group {
                let c = &self.terms[i];
                acc.add(c.weight * quadrature(c, c.arg(t), upper) / c.scale);
            }
        }
        acc.value()
    }

    /// Euler-Maclaurin tail from index `n`; `None` when the corrections stop
    /// decreasing before reaching the target.
    fn euler_maclaurin_tail(&self, n: f64, target: f64) -> Option<(f64, f64)> {
        let integral = self.tail_integral(n);
        if !integral.is_finite() {
            return None;
        }
        let mut acc = CompensatedSum::new();
        acc.add(integral);
        acc.add(0.5 * self.value(n));
        let mut previous = f64::INFINITY;
        for (j, ratio) in bernoulli_ratios().iter().enumerate() {
            let correction = -ratio * self.derivative(2 * j + 1, n);
            let size = correction.abs();
            if size * self.bound_factor <= target {
                return Some((acc.value(), size * self.bound_factor));
            }
            if size >= previous {
                return None;
            }
            previous = size;
            acc.add(correction);
        }
        None
    }

    pub fn sum(&self, target: f64) -> Result<SeriesValue> {
        if !(target > 0.0 && target.is_finite()) {
            return Err(Error::Parameter {
                name: "target_abs_err",
                value: target,
                lo: f64::MIN_POSITIVE,
                hi: f64::INFINITY,
            });
        }
        let s_max = self.terms.iter().map(|c| c.exponent).fold(0.0, f64::max);
        let (scale, shift) = self
            .terms
            .iter()
            .map(|c| (c.scale, c.shift))
            .fold((f64::MAX, f64::MAX), |(a, b), (s, h)| (a.min(s), b.min(h)));
        let u_needed = (8.0f64).max((s_max + 20.0) / 3.0);
        let mut cut = (((u_needed - shift) / scale).ceil().max(4.0)) as usize;

        let mut acc = CompensatedSum::new();
        let mut k = 0usize;
        loop {
            while k < cut {
                acc.add(self.value(k as f64));
                k += 1;
                if k >= 2 {
                    let bound = self.direct_bound(k as f64);
                    if bound <= target {
                        return Ok(SeriesValue::new(acc.value(), bound, k));
                    }
                }
            }
            if let Some((tail, bound)) = self.euler_maclaurin_tail(cut as f64, target) {
                let mut total = acc;
                total.add(tail);
                return Ok(SeriesValue::new(total.value(), bound, cut));
            }
            if cut >= TERM_CAP {
                return Err(Error::Convergence {
                    function: self.name,
                    target,
                    terms: cut,
                });
            }
            cut = (cut * 2).min(TERM_CAP);
        }
    }
}

/// Convenience wrapper around [`PowerSum`].
pub(crate) fn power_sum(
    name: &'static str,
    terms: &[PowerTerm],
    target: f64,
) -> Result<SeriesValue> {
    PowerSum::new(name, terms).sum(target)
}
