//! Real-argument Dirichlet series: ζ, η, λ, β, the derivatives of λ and β,
//! and the auxiliary functions φ₁..φ₆ built from them.

use crate::error::{domain, Error, Result};
use crate::sum::{power_sum, PowerTerm, SeriesValue};

/// Absolute target used by the value-only helpers for O(1) results.
const UNIT_TARGET: f64 = 1e-17;

/// `C₁ = ln(π²/8)/ln 3`, the smallest shift for which φ₂ is increasing.
pub fn c1() -> f64 {
    (std::f64::consts::PI.powi(2) / 8.0).ln() / 3f64.ln()
}

fn check_target(target: f64) -> Result<()> {
    if target > 0.0 && target.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "target_abs_err",
            value: target,
            lo: f64::MIN_POSITIVE,
            hi: f64::INFINITY,
        })
    }
}

/// Riemann zeta `ζ(s) = Σ_{k≥1} k^{-s}` for real `s > 1`.
pub fn zeta(s: f64, target_abs_err: f64) -> Result<SeriesValue> {
    if !(s > 1.0) {
        return Err(domain("zeta", s, "s > 1"));
    }
    check_target(target_abs_err)?;
    power_sum("zeta", &[PowerTerm::new(1.0, 1.0, 1.0, s)], target_abs_err)
}

/// `ζ(s) − 1 = Σ_{k≥2} k^{-s}`, accurate in relative terms for large `s`.
pub fn zeta_minus_one(s: f64, target_abs_err: f64) -> Result<SeriesValue> {
    if !(s > 1.0) {
        return Err(domain("zeta_minus_one", s, "s > 1"));
    }
    check_target(target_abs_err)?;
    power_sum(
        "zeta_minus_one",
        &[PowerTerm::new(1.0, 1.0, 2.0, s)],
        target_abs_err,
    )
}

/// Dirichlet eta `η(s) = (1 − 2^{1−s}) ζ(s)`.
pub fn eta(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(domain("eta", s, "s > 1"));
    }
    let z = zeta(s, UNIT_TARGET)?;
    Ok(-(1.0 - s).exp2().mul_add(z.value, -z.value))
}

/// Dirichlet lambda `λ(x) = Σ_{k≥0} (2k+1)^{-x}` for `x > 1`.
pub fn lambda_fn(x: f64, target_abs_err: f64) -> Result<SeriesValue> {
    if !(x > 1.0) {
        return Err(domain("lambda", x, "x > 1"));
    }
    check_target(target_abs_err)?;
    power_sum(
        "lambda",
        &[PowerTerm::new(1.0, 2.0, 1.0, x)],
        target_abs_err,
    )
}

/// `λ(x) − 1 = Σ_{k≥1} (2k+1)^{-x}`.
pub fn lambda_minus_one(x: f64, target_abs_err: f64) -> Result<SeriesValue> {
    if !(x > 1.0) {
        return Err(domain("lambda_minus_one", x, "x > 1"));
    }
    check_target(target_abs_err)?;
    power_sum(
        "lambda_minus_one",
        &[PowerTerm::new(1.0, 2.0, 3.0, x)],
        target_abs_err,
    )
}

/// Dirichlet beta `β(x) = Σ_{k≥0} (−1)^k (2k+1)^{-x}` for `x ≥ 1`.
///
/// Consecutive terms are summed in pairs, so the series seen by the engine
/// has positive terms even at `x = 1`.
pub fn beta_fn(x: f64, target_abs_err: f64) -> Result<SeriesValue> {
    if !(x >= 1.0) {
        return Err(domain("beta", x, "x >= 1"));
    }
    check_target(target_abs_err)?;
    power_sum(
        "beta",
        &[
            PowerTerm::new(1.0, 4.0, 1.0, x),
            PowerTerm::new(-1.0, 4.0, 3.0, x),
        ],
        target_abs_err,
    )
}

/// Which Dirichlet series to differentiate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DirichletKind {
    Lambda,
    Beta,
}

/// Term-wise derivative in the argument: `λ'(x) = −Σ ln(2k+1)/(2k+1)^x` and
/// `β'(x) = −Σ (−1)^k ln(2k+1)/(2k+1)^x`.
pub fn dirichlet_derivative(
    kind: DirichletKind,
    x: f64,
    target_abs_err: f64,
) -> Result<SeriesValue> {
    check_target(target_abs_err)?;
    match kind {
        DirichletKind::Lambda => {
            if !(x > 1.0) {
                return Err(domain("lambda_derivative", x, "x > 1"));
            }
            power_sum(
                "lambda_derivative",
                &[PowerTerm::new(-1.0, 2.0, 1.0, x).with_log()],
                target_abs_err,
            )
        }
        DirichletKind::Beta => {
            if !(x >= 1.0) {
                return Err(domain("beta_derivative", x, "x >= 1"));
            }
            power_sum(
                "beta_derivative",
                &[
                    PowerTerm::new(-1.0, 4.0, 1.0, x).with_log(),
                    PowerTerm::new(1.0, 4.0, 3.0, x).with_log(),
                ],
                target_abs_err,
            )
        }
    }
}

pub fn zeta_value(s: f64) -> Result<f64> {
    Ok(zeta(s, UNIT_TARGET)?.value)
}

pub fn lambda_value(x: f64) -> Result<f64> {
    Ok(lambda_fn(x, UNIT_TARGET)?.value)
}

pub fn beta_value(x: f64) -> Result<f64> {
    Ok(beta_fn(x, UNIT_TARGET)?.value)
}

/// `φ₁(x) = λ(x) − λ(x+1)`, summed term-wise.
fn phi1(x: f64) -> Result<f64> {
    let terms = [
        PowerTerm::new(1.0, 2.0, 3.0, x),
        PowerTerm::new(-1.0, 2.0, 3.0, x + 1.0),
    ];
    let scale = 3f64.powf(-x);
    Ok(power_sum("phi1", &terms, scale * 1e-17)?.value)
}

/// `φ₃(x) = 5λ(x+1) − λ(x−1) − 4β(x+1)` as one series over odd `u`.
///
/// The `u = 1` and `u = 3` terms vanish identically, so the sum starts at
/// `u = 5` and its size is about `5^{1−x}`.
pub(crate) fn phi3_series(x: f64, rel_target: f64) -> Result<SeriesValue> {
    let terms = [
        PowerTerm::new(-1.0, 4.0, 5.0, x - 1.0),
        PowerTerm::new(1.0, 4.0, 5.0, x + 1.0),
        PowerTerm::new(-1.0, 4.0, 7.0, x - 1.0),
        PowerTerm::new(9.0, 4.0, 7.0, x + 1.0),
    ];
    let scale = 5f64.powf(1.0 - x);
    power_sum("phi3", &terms, scale * rel_target)
}

fn phi3(x: f64) -> Result<f64> {
    Ok(phi3_series(x, 1e-17)?.value)
}

fn phi5(x: f64) -> Result<f64> {
    Ok(x * phi3(x)?)
}

/// The auxiliary functions φ₁..φ₆. `c` is the shift of φ₂ and is required
/// for `k = 2` only.
pub fn phi(k: u8, x: f64, c: Option<f64>) -> Result<f64> {
    match k {
        1 => {
            if !(x > 1.0) {
                return Err(domain("phi1", x, "x > 1"));
            }
            phi1(x)
        }
        2 => {
            let c = c.ok_or(Error::MissingParameter {
                function: "phi2",
                parameter: "c",
            })?;
            if !(c >= c1()) || !c.is_finite() {
                return Err(Error::Parameter {
                    name: "c",
                    value: c,
                    lo: c1(),
                    hi: f64::INFINITY,
                });
            }
            if !(x >= 2.0) {
                return Err(domain("phi2", x, "x >= 2"));
            }
            Ok(lambda_value(x + c)? / lambda_value(x)?)
        }
        3..=6 => {
            if !(x >= 3.0) || !x.is_finite() {
                return Err(domain("phi", x, "x >= 3"));
            }
            match k {
                3 => phi3(x),
                4 => Ok((x - 3.0 + 1.0 / 5f64.ln()) * phi3(x)?),
                5 => phi5(x),
                _ => Ok(phi5(x + 2.0)? - phi5(x)?),
            }
        }
        _ => Err(Error::Parameter {
            name: "k",
            value: f64::from(k),
            lo: 1.0,
            hi: 6.0,
        }),
    }
}

/// `C₂(c) = 8λ(2+c)/π²`, the value of φ₂ at 2.
pub fn c2(c: f64) -> Result<f64> {
    Ok(8.0 * lambda_value(2.0 + c)? / std::f64::consts::PI.powi(2))
}

/// Margins of the chain `(1 − r)ζ(n) < ζ(n+1) < (ζ(n)+1)/2 < ζ(n)` with
/// `r = (1−μ)/(2^{n−1}−μ)` and `μ = 65/108`. All three are positive when the
/// chain holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaChain {
    pub n: u32,
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
}

impl ZetaChain {
    pub fn holds(&self) -> bool {
        self.lower > 0.0 && self.middle > 0.0 && self.upper > 0.0
    }
}

/// Evaluates [`ZetaChain`] with `ζ − 1` so the margins keep relative
/// accuracy at large `n`.
pub fn zeta_chain(n: u32) -> Result<ZetaChain> {
    if n < 2 {
        return Err(domain("zeta_chain", f64::from(n), "n >= 2"));
    }
    let mu = 65.0 / 108.0;
    let nf = f64::from(n);
    let rel = |s: f64| (-s).exp2() * 1e-18;
    let zn = zeta_minus_one(nf, rel(nf))?.value;
    let zn1 = zeta_minus_one(nf + 1.0, rel(nf + 1.0))?.value;
    let r = (1.0 - mu) / ((nf - 1.0).exp2() - mu);
    Ok(ZetaChain {
        n,
        lower: (zn1 - zn) + r * (1.0 + zn),
        middle: 0.5 * zn - zn1,
        upper: zn,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn zeta_special_values() {
        let z2 = zeta(2.0, 1e-16).unwrap();
        assert_relative_eq!(z2.value, PI * PI / 6.0, max_relative = 2e-16);
        assert!(z2.tail_bound <= 1e-16);
        assert_relative_eq!(
            zeta_value(4.0).unwrap(),
            PI.powi(4) / 90.0,
            max_relative = 2e-16
        );
        assert_relative_eq!(
            zeta_value(3.0).unwrap(),
            1.202_056_903_159_594_3,
            max_relative = 2e-16
        );
    }

    #[test]
    fn zeta_near_one() {
        // ζ(1.01) = 100.577943338497...
        let v = zeta(1.01, 1e-12).unwrap();
        assert_relative_eq!(v.value, 100.577_943_338_497_04, max_relative = 1e-13);
    }

    #[test]
    fn zeta_rejects_pole_side() {
        assert!(matches!(zeta(1.0, 1e-10), Err(Error::Domain { .. })));
        assert!(zeta(f64::NAN, 1e-10).is_err());
        assert!(zeta(2.0, -1.0).is_err());
    }

    #[test]
    fn eta_values() {
        assert_relative_eq!(eta(2.0).unwrap(), PI * PI / 12.0, max_relative = 4e-16);
        assert_relative_eq!(
            eta(4.0).unwrap(),
            7.0 * PI.powi(4) / 720.0,
            max_relative = 4e-16
        );
        assert_relative_eq!(
            eta(3.0).unwrap(),
            0.901_542_677_369_695_7,
            max_relative = 4e-16
        );
    }

    #[test]
    fn lambda_values() {
        assert_relative_eq!(
            lambda_value(2.0).unwrap(),
            PI * PI / 8.0,
            max_relative = 2e-16
        );
        assert_relative_eq!(
            lambda_value(4.0).unwrap(),
            PI.powi(4) / 96.0,
            max_relative = 2e-16
        );
        assert_relative_eq!(
            lambda_value(3.0).unwrap(),
            1.051_799_790_264_645,
            max_relative = 2e-16
        );
        let lm1 = lambda_minus_one(40.0, 1e-35).unwrap().value;
        assert_relative_eq!(lm1, 3f64.powi(-40) + 5f64.powi(-40), max_relative = 1e-15);
    }

    #[test]
    fn beta_values() {
        assert_relative_eq!(beta_value(1.0).unwrap(), PI / 4.0, max_relative = 4e-16);
        assert_relative_eq!(
            beta_value(3.0).unwrap(),
            PI.powi(3) / 32.0,
            max_relative = 2e-16
        );
        assert_relative_eq!(
            beta_value(2.0).unwrap(),
            0.915_965_594_177_219,
            max_relative = 2e-16
        );
    }

    #[test]
    fn derivative_values_and_signs() {
        let l2 = dirichlet_derivative(DirichletKind::Lambda, 2.0, 1e-16).unwrap();
        assert_relative_eq!(l2.value, -0.418_115_838_076_17, max_relative = 1e-13);
        for x in [1.5, 2.0, 3.0, 5.0] {
            let v = dirichlet_derivative(DirichletKind::Lambda, x, 1e-16)
                .unwrap()
                .value;
            assert!(v < 0.0, "λ'({x}) = {v}");
        }
        for x in [1.0, 2.0, 4.0] {
            let v = dirichlet_derivative(DirichletKind::Beta, x, 1e-16)
                .unwrap()
                .value;
            assert!(v > 0.0, "β'({x}) = {v}");
        }
        // β'(1) = (π/4)(γ + 2 ln 2 + 3 ln π − 4 ln Γ(1/4))
        let b1 = dirichlet_derivative(DirichletKind::Beta, 1.0, 1e-15)
            .unwrap()
            .value;
        assert_relative_eq!(b1, 0.192_901_316_796_912_9, max_relative = 1e-13);
    }

    #[test]
    fn phi_constants() {
        assert_relative_eq!(
            phi(3, 3.0, None).unwrap(),
            -0.116_088_599_08,
            epsilon = 1e-11
        );
        assert_relative_eq!(
            phi(4, 3.0, None).unwrap(),
            -0.072_129_902_112_3,
            epsilon = 1e-11
        );
        assert_relative_eq!(
            phi(5, 3.0, None).unwrap(),
            -0.348_265_797_239,
            epsilon = 1e-11
        );
        assert_relative_eq!(
            phi(6, 3.0, None).unwrap(),
            0.337_348_110_873,
            epsilon = 1e-11
        );
        assert_relative_eq!(c1(), 0.191_166_831_27, epsilon = 1e-11);
    }

    #[test]
    fn phi3_matches_composition() {
        for x in [3.0, 3.7, 5.0, 8.5, 12.0] {
            let composed = 5.0 * lambda_value(x + 1.0).unwrap()
                - lambda_value(x - 1.0).unwrap()
                - 4.0 * beta_value(x + 1.0).unwrap();
            let series = phi(3, x, None).unwrap();
            assert!(
                (composed - series).abs() < 4e-15,
                "x={x}: {composed} vs {series}"
            );
        }
        // The composed form cancels; the series keeps relative accuracy.
        let reference = [
            (3.7, -0.024_990_394_358_901_697),
            (8.5, -5.960_111_527_749_586e-6),
            (12.0, -2.010_906_846_220_529_6e-8),
        ];
        for (x, expected) in reference {
            assert_relative_eq!(phi(3, x, None).unwrap(), expected, max_relative = 1e-15);
        }
    }

    #[test]
    fn phi_errors() {
        assert!(matches!(
            phi(2, 3.0, None),
            Err(Error::MissingParameter { .. })
        ));
        assert!(matches!(
            phi(2, 3.0, Some(0.1)),
            Err(Error::Parameter { .. })
        ));
        assert!(matches!(phi(3, 2.5, None), Err(Error::Domain { .. })));
        assert!(matches!(phi(1, 1.0, None), Err(Error::Domain { .. })));
        assert!(phi(7, 4.0, None).is_err());
        assert_relative_eq!(
            phi(2, 2.0, Some(1.0)).unwrap(),
            c2(1.0).unwrap(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn zeta_chain_holds_to_sixty() {
        for n in 2..=60 {
            let chain = zeta_chain(n).unwrap();
            assert!(chain.holds(), "{chain:?}");
        }
    }

    proptest! {
        #[test]
        fn lambda_identity(n in 2u32..40) {
            let s = f64::from(n);
            let lhs = lambda_value(s).unwrap();
            let rhs = (1.0 - (-s).exp2()) * zeta_value(s).unwrap();
            prop_assert!((lhs - rhs).abs() <= 4e-16);
        }

        #[test]
        fn tail_bound_meets_target(x in 1.05f64..30.0, exp in 6i32..16) {
            let target = 10f64.powi(-exp);
            let v = lambda_fn(x, target).unwrap();
            prop_assert!(v.tail_bound <= target && v.terms_used >= 1);
            let b = beta_fn(x, target).unwrap();
            prop_assert!(b.tail_bound <= target);
        }

        #[test]
        fn lambda_decreasing_convex(x in 1.1f64..19.0, h in 0.01f64..0.5) {
            let (a, b, c) = (
                lambda_value(x).unwrap(),
                lambda_value(x + h).unwrap(),
                lambda_value(x + 2.0 * h).unwrap(),
            );
            prop_assert!(b < a);
            prop_assert!(a - 2.0 * b + c >= -1e-15);
        }

        #[test]
        fn beta_increasing(x in 1.0f64..19.0, h in 0.01f64..0.5) {
            prop_assert!(beta_value(x + h).unwrap() > beta_value(x).unwrap());
        }
    }
}
