//! Named constants with their published decimal expansions.

use ramanujan_core::analysis::{
    comparison, f2_second_derivative_at_half, h9_eval, h_eval, Comparison,
};
use ramanujan_core::coefficients::default_table;
use ramanujan_core::ramanujan::{r_derivative, r_eval};
use ramanujan_core::{constants, EvalMethod, Result};

/// A computed constant next to its reference digits, which are truncated
/// rather than rounded.
#[derive(Debug, Clone, PartialEq)]
pub struct LedgerEntry {
    pub name: &'static str,
    pub reference: &'static str,
    pub computed: f64,
}

impl LedgerEntry {
    pub fn reference_value(&self) -> f64 {
        self.reference.parse().expect("reference digits parse")
    }

    /// Weight of the last printed digit.
    pub fn last_digit_unit(&self) -> f64 {
        let (mantissa, exponent) = match self.reference.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().expect("reference exponent")),
            None => (self.reference, 0),
        };
        let decimals = mantissa.split_once('.').map_or(0, |(_, frac)| frac.len()) as i32;
        let shift = decimals - exponent;
        if shift >= 0 {
            1.0 / 10f64.powi(shift)
        } else {
            10f64.powi(-shift)
        }
    }

    /// Distance, in last-digit units, between the truncated computed value
    /// and the reference digits.
    pub fn digit_distance(&self) -> f64 {
        let unit = self.last_digit_unit();
        let computed = (self.computed / unit).trunc();
        let reference = (self.reference_value() / unit).round();
        (computed - reference).abs()
    }
}

pub fn constants_ledger() -> Result<Vec<LedgerEntry>> {
    let t = default_table();
    let k = constants();
    let entry = |name, reference, computed| LedgerEntry {
        name,
        reference,
        computed,
    };
    Ok(vec![
        entry("a1", "-2.644934", t.a[1]),
        entry("a2", "2.404113", t.a[2]),
        entry("a3", "0.510048", t.a[3]),
        entry("a4", "-0.395066", t.a[4]),
        entry("b0", "0.324143", t.b[0]),
        entry("b1", "0.690067", t.b[1]),
        entry("2b2", "-0.027624", 2.0 * t.b[2]),
        entry("c1", "-0.014210", t.c[1]),
        entry("c2", "-0.000398", t.c[2]),
        entry("d0", "-0.290171", t.d[0]),
        entry("d1", "1.207861", t.d[1]),
        entry("d2", "1.008920", t.d[2]),
        entry("d3", "1.000824", t.d[3]),
        entry("d", "0.996679", k.d_lower),
        entry("d_tilde", "1.001117", k.d_tilde),
        entry("D0", "-1.7750006", t.big_d[0]),
        entry("D1", "5.639413", t.big_d[1]),
        entry("D2", "3.850551", t.big_d[2]),
        entry("D3", "3.995587", t.big_d[3]),
        entry("mu1", "-0.116088", k.mu1),
        entry("mu2", "-0.072129", k.mu2),
        entry("mu3", "-0.348265", k.mu3),
        entry("mu4", "0.337348", k.mu4),
        entry("R(1/4)", "4.158883", r_eval(0.25, EvalMethod::Auto)?.value),
        entry("R'(1/4)", "-14.655449", r_derivative(1, 0.25)?),
        entry("rho", "0.259314", k.rho),
        entry("F1(1/2)", "1.103178", comparison(Comparison::F1, 0.5)?),
        entry("F2(1/2)", "0.082542", comparison(Comparison::F2, 0.5)?),
        entry("F(0+)", "0.0142104", k.b0 + k.b1 - 1.0),
        entry("H(1/4)", "0.095698", h_eval(0.25)?),
        entry("F2''(1/2)", "0.723202", f2_second_derivative_at_half()),
        entry("h9(0.276937)", "7.895e-8", h9_eval(0.276_937)?),
        entry("h9(0.276938)", "-1.37425e-6", h9_eval(0.276_938)?),
    ])
}
