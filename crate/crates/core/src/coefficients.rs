//! The coefficient sequences of the two expansions
//! `f(x) = Σ aₙxⁿ = Σ bₙ(1−2x)^{2n}` and the sequences derived from them:
//! `cₙ = 1 − Σ_{k≤n} b_k`, `Aₙ = 2^{n+1}(b₀ − Σ_{k≤n} 2^{−k}a_k)`, and the
//! coefficients `dₙ`, `Dₙ` of the auxiliary functions `H` and `H₃`.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::dirichlet::{lambda_minus_one, phi3_series, zeta_value};
use crate::error::{Error, Result};
use crate::sum::{compensated_sum, power_sum, CompensatedSum, PowerTerm};

/// Smallest admissible table size.
pub const MIN_TABLE_N: usize = 40;
/// Largest table size; beyond it `bₙ` leaves the normal range.
pub const MAX_TABLE_N: usize = 150;
/// Table size used by the evaluators.
pub const DEFAULT_TABLE_N: usize = 80;

/// Extra `a` terms summed into the tail sums `Aₙ` (the weights fall like `4^{−j}`).
const A_TAIL_EXTRA: usize = 45;
/// Extra `b` terms summed into the tail sums `cₙ` (the terms fall like `25^{−j}`).
const B_TAIL_EXTRA: usize = 20;
/// Relative accuracy requested from every Dirichlet sum.
const REL: f64 = 1e-17;

/// `aₙ` from its parity closed form.
pub fn a_coefficient(n: usize) -> Result<f64> {
    match n {
        0 => Ok(1.0),
        1 => Ok(-1.0 - PI * PI / 6.0),
        2 => Ok(2.0 * zeta_value(3.0)?),
        _ => {
            let scale = (-(n as f64)).exp2();
            let s = n as f64;
            let (name, terms) = if n % 2 == 1 {
                // 2 Σ_{k≥2} [k^{−n} + (−1)^k k^{−(n+1)}]
                (
                    "a_odd",
                    vec![
                        PowerTerm::new(2.0, 1.0, 2.0, s),
                        PowerTerm::new(2.0, 2.0, 2.0, s + 1.0),
                        PowerTerm::new(-2.0, 2.0, 3.0, s + 1.0),
                    ],
                )
            } else {
                // −2 Σ_{k≥2} [k^{−(n−1)} − k^{−(n+1)}]
                (
                    "a_even",
                    vec![
                        PowerTerm::new(-2.0, 1.0, 2.0, s - 1.0),
                        PowerTerm::new(2.0, 1.0, 2.0, s + 1.0),
                    ],
                )
            };
            Ok(power_sum(name, &terms, scale * REL)?.value)
        }
    }
}

/// `bₙ` for `n ≥ 0`.
pub fn b_coefficient(n: usize) -> Result<f64> {
    match n {
        0 => Ok(5.0 * LN_2 - PI),
        1 => Ok(-LN_2 + (35.0 * zeta_value(3.0)? - PI.powi(3)) / 8.0),
        _ => Ok(phi3_series(2.0 * n as f64, REL)?.value),
    }
}

/// Names the six sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffKind {
    /// `aₙ`, origin expansion of `f`.
    SmallA,
    /// `bₙ`, center expansion of `f`.
    SmallB,
    /// `cₙ = Σ_{k>n} b_k`.
    SmallC,
    /// `Aₙ = Σ_{j≥0} 2^{−j} a_{n+1+j}`.
    BigA,
    /// `dₙ`, center expansion of `H`.
    SmallD,
    /// `Dₙ`, center expansion of `H₃`.
    BigD,
}

impl CoeffKind {
    pub const ALL: [CoeffKind; 6] = [
        Self::SmallA,
        Self::SmallB,
        Self::SmallC,
        Self::BigA,
        Self::SmallD,
        Self::BigD,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Self::SmallA => "a",
            Self::SmallB => "b",
            Self::SmallC => "c",
            Self::BigA => "A",
            Self::SmallD => "d",
            Self::BigD => "D",
        }
    }
}

impl fmt::Display for CoeffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for CoeffKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.symbol() == s)
            .ok_or_else(|| format!("unknown coefficient `{s}` (expected one of a, b, c, A, d, D)"))
    }
}

/// Precomputed sequences indexed `0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub big_a: Vec<f64>,
    pub d: Vec<f64>,
    pub big_d: Vec<f64>,
    n_max: usize,
}

/// `|Σ_{k≤N} a_k − 1|`, `|Σ_{k≤N} b_k − 1|` and `|Σ_{k≤N} 2^{−k}a_k − b₀|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResiduals {
    pub sum_a: f64,
    pub sum_b: f64,
    pub weighted_a: f64,
}

/// Largest deviation of `c_{n+1} = cₙ − b_{n+1}` and `A_{n+1} = 2(Aₙ − a_{n+1})`
/// from the stored values, in units of one rounding of the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceCheck {
    pub c_roundings: f64,
    pub big_a_roundings: f64,
}

impl RecurrenceCheck {
    /// True when every stored value is the rounded recurrence within one rounding.
    pub fn exact(&self) -> bool {
        self.c_roundings <= 1.0 && self.big_a_roundings <= 1.0
    }
}

/// Builds the table with every entry within `target_abs_err` of its true
/// value (and within about one rounding, relatively, where that is tighter).
pub fn build_table(n_max: usize, target_abs_err: f64) -> Result<CoefficientTable> {
    if !(MIN_TABLE_N..=MAX_TABLE_N).contains(&n_max) {
        return Err(Error::Parameter {
            name: "N",
            value: n_max as f64,
            lo: MIN_TABLE_N as f64,
            hi: MAX_TABLE_N as f64,
        });
    }
    if !(target_abs_err > 0.0 && target_abs_err.is_finite()) {
        return Err(Error::Parameter {
            name: "target_abs_err",
            value: target_abs_err,
            lo: f64::MIN_POSITIVE,
            hi: f64::INFINITY,
        });
    }

    let a_ext = (0..=n_max + A_TAIL_EXTRA)
        .map(a_coefficient)
        .collect::<Result<Vec<_>>>()?;
    let b_ext = (0..=n_max + B_TAIL_EXTRA)
        .map(b_coefficient)
        .collect::<Result<Vec<_>>>()?;

    let c = (0..=n_max)
        .map(|n| compensated_sum(b_ext[n + 1..].iter().rev().copied()))
        .collect::<Vec<_>>();
    let big_a = (0..=n_max)
        .map(|n| {
            let mut acc = CompensatedSum::new();
            for (j, a) in a_ext[n + 1..].iter().enumerate().rev() {
                acc.add(a * (-(j as f64)).exp2());
            }
            acc.value()
        })
        .collect::<Vec<_>>();

    // λ(2m) − 1 for m = 1..=n_max+1
    let lambda_even_m1 = (1..=n_max + 1)
        .map(|m| {
            let s = 2.0 * m as f64;
            Ok(lambda_minus_one(s, 3f64.powf(-s) * REL)?.value)
        })
        .collect::<Result<Vec<_>>>()?;

    let d = (0..=n_max)
        .map(|n| {
            // Σ_{k≤n} b_k λ(2n−2k+2) = (1 − c_n) + Σ_{k≤n} b_k (λ(2n−2k+2) − 1)
            let mut acc = CompensatedSum::new();
            acc.add(1.0);
            acc.add(-c[n]);
            for k in 0..=n {
                acc.add(b_ext[k] * lambda_even_m1[n - k]);
            }
            acc.add(-((n + 1) as f64) * b_ext[n + 1]);
            acc.value()
        })
        .collect::<Vec<_>>();
    let big_d = (0..=n_max)
        .map(|n| {
            if n == 0 {
                5.0 * d[0] - b_ext[0]
            } else {
                compensated_sum([5.0 * d[n], -d[n - 1], -b_ext[n]])
            }
        })
        .collect::<Vec<_>>();

    let table = CoefficientTable {
        a: a_ext[..=n_max].to_vec(),
        b: b_ext[..=n_max].to_vec(),
        c,
        big_a,
        d,
        big_d,
        n_max,
    };
    table.verify_invariants()?;
    Ok(table)
}

/// Table of size [`DEFAULT_TABLE_N`], built on first use.
pub fn default_table() -> &'static CoefficientTable {
    static TABLE: OnceLock<CoefficientTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        build_table(DEFAULT_TABLE_N, 1e-16).expect("default coefficient table must build")
    })
}

fn invariant(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant(msg()))
    }
}

impl CoefficientTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn sequence(&self, kind: CoeffKind) -> &[f64] {
        match kind {
            CoeffKind::SmallA => &self.a,
            CoeffKind::SmallB => &self.b,
            CoeffKind::SmallC => &self.c,
            CoeffKind::BigA => &self.big_a,
            CoeffKind::SmallD => &self.d,
            CoeffKind::BigD => &self.big_d,
        }
    }

    pub fn coeff(&self, kind: CoeffKind, n: usize) -> Result<f64> {
        self.sequence(kind).get(n).copied().ok_or(Error::Index {
            index: n,
            max: self.n_max,
        })
    }

    pub fn identity_residuals(&self) -> IdentityResiduals {
        let b0 = self.b[0];
        IdentityResiduals {
            sum_a: (compensated_sum(self.a.iter().copied()) - 1.0).abs(),
            sum_b: (compensated_sum(self.b.iter().copied()) - 1.0).abs(),
            weighted_a: (compensated_sum(
                self.a
                    .iter()
                    .enumerate()
                    .map(|(k, a)| a * (-(k as f64)).exp2()),
            ) - b0)
                .abs(),
        }
    }

    pub fn recurrence_check(&self) -> RecurrenceCheck {
        let eps = f64::EPSILON;
        let mut check = RecurrenceCheck {
            c_roundings: 0.0,
            big_a_roundings: 0.0,
        };
        for n in 0..self.n_max {
            let rhs = self.c[n] - self.b[n + 1];
            let unit = eps * (self.c[n].abs() + self.b[n + 1].abs());
            check.c_roundings = check.c_roundings.max((self.c[n + 1] - rhs).abs() / unit);
            let rhs = 2.0 * (self.big_a[n] - self.a[n + 1]);
            let unit = 2.0 * eps * (self.big_a[n].abs() + self.a[n + 1].abs());
            check.big_a_roundings = check
                .big_a_roundings
                .max((self.big_a[n + 1] - rhs).abs() / unit);
        }
        check
    }

    fn verify_invariants(&self) -> Result<()> {
        let n_max = self.n_max;
        let rec = self.recurrence_check();
        invariant(rec.exact(), || {
            format!("recurrences off by {rec:?} roundings")
        })?;
        for n in 1..=(n_max - 1) / 2 {
            let (odd, even) = (self.a[2 * n + 1], self.a.get(2 * n + 2).copied());
            invariant(odd > 0.0, || {
                format!("a[{}] = {odd} not positive", 2 * n + 1)
            })?;
            if let Some(even) = even {
                invariant(even < 0.0, || {
                    format!("a[{}] = {even} not negative", 2 * n + 2)
                })?;
                invariant(
                    even < self.big_a[2 * n + 1]
                        && self.big_a[2 * n + 1] < 0.0
                        && 0.0 < self.big_a[2 * n]
                        && self.big_a[2 * n] < odd,
                    || format!("A-chain broken at n = {n}"),
                )?;
            }
        }
        for n in 2..=n_max {
            invariant(self.b[n] < 0.0, || {
                format!("b[{n}] = {} not negative", self.b[n])
            })?;
            if n > 2 {
                invariant(self.b[n] > self.b[n - 1], || {
                    format!("b not increasing at {n}")
                })?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::eta;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn table() -> &'static CoefficientTable {
        default_table()
    }

    /// `aₙ = [1+(−1)ⁿ][ζ(n+1)−ζ(n−1)] + [1−(−1)ⁿ][ζ(n)−η(n+1)]`.
    fn a_bracket(n: i32) -> f64 {
        let s = f64::from(n);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        (1.0 + sign) * (zeta_value(s + 1.0).unwrap() - zeta_value(s - 1.0).unwrap())
            + (1.0 - sign) * (zeta_value(s).unwrap() - eta(s + 1.0).unwrap())
    }

    #[test]
    fn parity_form_matches_bracket_form() {
        for n in [3, 4] {
            let closed = a_coefficient(n as usize).unwrap();
            assert!((closed - a_bracket(n)).abs() < 1e-15, "n={n}");
        }
        assert_relative_eq!(
            a_coefficient(3).unwrap(),
            0.510_048_147_325,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            a_coefficient(4).unwrap(),
            -0.330_258_296_032,
            epsilon = 1e-12
        );
    }

    #[test]
    fn leading_values() {
        let t = table();
        assert_relative_eq!(t.a[1], -2.644_934_066_848_226, max_relative = 1e-15);
        assert_relative_eq!(t.a[2], 2.404_113_806_319_189, max_relative = 1e-15);
        assert_relative_eq!(t.b[0], 0.324_143_249_21, epsilon = 1e-11);
        assert_relative_eq!(t.b[1], 0.690_067_185_726, epsilon = 1e-12);
        assert_relative_eq!(t.b[2], -0.013_812_288_597_3, epsilon = 1e-13);
        assert_relative_eq!(t.c[1], -0.014_210_434_935_7, epsilon = 1e-13);
        assert_relative_eq!(t.c[2], -0.000_398_146_338_436, epsilon = 1e-15);
    }

    #[test]
    fn tail_sequences() {
        let t = table();
        let expected = [
            2.586_441_130_54,
            0.364_654_648_434,
            -0.290_786_997_781,
            0.078_942_596_502_1,
            -0.047_621_462_379_6,
            0.019_070_986_286_7,
        ];
        for (n, e) in expected.iter().enumerate() {
            assert_relative_eq!(t.big_a[n + 1], *e, epsilon = 1e-11);
        }
        assert_relative_eq!(t.big_a[0], 2.0 * (t.b[0] - 1.0), epsilon = 1e-15);
        let d = [
            -0.290_171_480_853,
            1.207_861_877_92,
            1.008_920_248_27,
            1.000_824_723_35,
        ];
        let big_d = [
            -1.775_000_653_47,
            5.639_413_684_73,
            3.850_551_652_01,
            3.995_587_419_57,
        ];
        for n in 0..4 {
            assert_relative_eq!(t.d[n], d[n], epsilon = 1e-11);
            assert_relative_eq!(t.big_d[n], big_d[n], epsilon = 1e-10);
        }
    }

    #[test]
    fn identities_and_recurrences() {
        let t = build_table(60, 1e-16).unwrap();
        let r = t.identity_residuals();
        assert!(
            r.sum_a <= 1e-11 && r.sum_b <= 1e-12 && r.weighted_a <= 1e-11,
            "{r:?}"
        );
        assert!(t.recurrence_check().exact(), "{:?}", t.recurrence_check());
    }

    #[test]
    fn index_errors() {
        let t = table();
        assert!(matches!(
            t.coeff(CoeffKind::BigD, 81),
            Err(Error::Index { .. })
        ));
        assert_eq!(t.coeff(CoeffKind::SmallB, 2).unwrap(), t.b[2]);
        assert!(build_table(39, 1e-16).is_err());
        assert!(build_table(40, 0.0).is_err());
    }

    #[test]
    fn kind_round_trip() {
        for k in CoeffKind::ALL {
            assert_eq!(k.symbol().parse::<CoeffKind>().unwrap(), k);
        }
        assert!("x".parse::<CoeffKind>().is_err());
    }

    #[test]
    fn sequence_shapes() {
        let t = table();
        let n_max = t.n_max();
        for n in 2..n_max {
            assert!(t.a[n + 1].abs() < t.a[n].abs(), "|a| not decreasing at {n}");
        }
        for n in 0..(n_max - 2) / 2 {
            if n >= 1 {
                assert!(0.0 < -t.a[2 * n + 2]);
                assert!(-t.a[2 * n + 2] < t.a[2 * n + 1]);
            }
            if n >= 2 {
                assert!(t.a[2 * n + 1] < -t.a[2 * n]);
            }
            if n >= 1 {
                assert!(t.big_a[2 * n + 1] < t.big_a[2 * n + 3] && t.big_a[2 * n + 3] < 0.0);
                assert!(t.big_a[2 * n] > t.big_a[2 * n + 2] && t.big_a[2 * n + 2] > 0.0);
            }
        }
        for n in 1..n_max {
            assert!(t.c[n] < 0.0 && t.c[n] < t.c[n + 1], "c at {n}");
        }
        for n in 0..n_max {
            assert!(t.c[n] < t.b[n + 1]);
        }
        for n in 1..n_max - 1 {
            let w = |k: usize| (k + 1) as f64 * t.b[k + 1];
            assert!(w(n + 1) > w(n));
            if n + 2 < n_max {
                assert!(w(n + 2) - w(n + 1) < w(n + 1) - w(n));
            }
        }
    }

    #[test]
    fn h_coefficient_bounds() {
        let t = table();
        let d_lower = 0.996_679_013_538;
        let d_tilde = 1.001_117_213_51;
        for n in 3..=t.n_max() {
            assert!(t.d[n] > d_lower && t.d[n] < d_tilde, "d[{n}] = {}", t.d[n]);
        }
        for n in 4..=t.n_max() {
            assert!(t.big_d[n] > 3.982_277, "D[{n}] = {}", t.big_d[n]);
        }
    }

    proptest! {
        #[test]
        fn b_matches_composition(n in 2usize..12) {
            use crate::dirichlet::{beta_value, lambda_value};
            let s = 2.0 * n as f64;
            let composed = 5.0 * lambda_value(s + 1.0).unwrap()
                - lambda_value(s - 1.0).unwrap()
                - 4.0 * beta_value(s + 1.0).unwrap();
            prop_assert!((b_coefficient(n).unwrap() - composed).abs() < 4e-15);
        }
    }
}
