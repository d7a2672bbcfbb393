//! The verification suite. Checks are grouped into numbered criteria that run
//! on separate threads and are merged back in criterion order.

use std::f64::consts::PI;
use std::thread;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use ramanujan_core::analysis::{
    cm_probe, comparison, convexity_violation, delta_estimate, h3_eval, h8_grid_max, h_eval,
    monotone_violation, uniform_grid, x0_root, x2_root, CmTarget, Comparison, DEFAULT_ROOT_TOL,
    EPS_GUARD,
};
use ramanujan_core::bounds::{bound, BoundMethod, DEFAULT_ENVELOPE_N};
use ramanujan_core::coefficients::build_table;
use ramanujan_core::dirichlet::{beta_value, c1, lambda_value, phi, zeta_chain, zeta_value};
use ramanujan_core::ramanujan::{f_eval, f_value, fn_ratio, gn_ratio, r_eval};
use ramanujan_core::{constants, EvalMethod, RFunctionValue};

use crate::format::{fmt_f64, json_f64};
use crate::ledger::constants_ledger;

pub const DEFAULT_GRID: usize = 10_000;
pub const DEFAULT_TABLE_N: usize = 60;
pub const DEFAULT_SEED: u64 = 1729;
pub const DEFAULT_TOL_CONSTANTS: f64 = 2e-6;
pub const DEFAULT_TOL_GRID: f64 = 1e-12;
pub const DEFAULT_MAX_CM_ORDER: u32 = 6;
/// Criteria run by [`run_verify`].
pub const CRITERIA: [u8; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

const SHAPE_GRID: usize = 2000;
const SHAPE_SLACK: f64 = 1e-9;
const CM_FLOOR: f64 = -1e-9;
const SERIES_SLACK: f64 = 1e-11;
const RANDOM_POINTS: usize = 200;
const SPECIAL_VALUE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub grid_size: usize,
    pub table_n: usize,
    pub seed: u64,
    /// Scales the constants tolerance; the default accepts the printed digits
    /// with the last one off by one.
    pub tol_constants: f64,
    pub tol_grid: f64,
    pub max_cm_order: u32,
    /// Count advisory checks as failures.
    pub strict: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            grid_size: DEFAULT_GRID,
            table_n: DEFAULT_TABLE_N,
            seed: DEFAULT_SEED,
            tol_constants: DEFAULT_TOL_CONSTANTS,
            tol_grid: DEFAULT_TOL_GRID,
            max_cm_order: DEFAULT_MAX_CM_ORDER,
            strict: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("grid size must be at least 100, got {0}")]
    Grid(usize),
    #[error("table size must be in 40..=150, got {0}")]
    TableSize(usize),
    #[error("{name} must be positive and finite, got {value}")]
    Tolerance { name: &'static str, value: f64 },
    #[error("complete-monotonicity order must be at most 8, got {0}")]
    CmOrder(u32),
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.grid_size < 100 {
            return Err(ConfigError::Grid(self.grid_size));
        }
        if !(40..=150).contains(&self.table_n) {
            return Err(ConfigError::TableSize(self.table_n));
        }
        for (name, value) in [
            ("tol_constants", self.tol_constants),
            ("tol_grid", self.tol_grid),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ConfigError::Tolerance { name, value });
            }
        }
        if self.max_cm_order > 8 {
            return Err(ConfigError::CmOrder(self.max_cm_order));
        }
        Ok(())
    }

    fn shape_grid(&self) -> usize {
        self.grid_size.min(SHAPE_GRID)
    }

    fn to_json(&self) -> Value {
        json!({
            "grid_size": self.grid_size,
            "table_n": self.table_n,
            "seed": self.seed,
            "tol_constants": json_f64(self.tol_constants),
            "tol_grid": json_f64(self.tol_grid),
            "max_cm_order": self.max_cm_order,
            "strict": self.strict,
        })
    }
}

/// One comparison. For one-sided checks `expected` holds the limit and
/// `tolerance` is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Advisory checks are reported but do not fail the suite unless strict.
    pub required: bool,
    pub detail: Option<String>,
}

impl Check {
    fn new(
        criterion: u8,
        name: impl Into<String>,
        expected: f64,
        actual: f64,
        tolerance: f64,
        pass: bool,
    ) -> Self {
        Self {
            criterion,
            name: name.into(),
            expected,
            actual,
            tolerance,
            pass,
            required: true,
            detail: None,
        }
    }

    fn close(criterion: u8, name: impl Into<String>, expected: f64, actual: f64, tol: f64) -> Self {
        Self::new(
            criterion,
            name,
            expected,
            actual,
            tol,
            (actual - expected).abs() <= tol,
        )
    }

    fn at_most(criterion: u8, name: impl Into<String>, actual: f64, limit: f64) -> Self {
        Self::new(criterion, name, limit, actual, 0.0, actual <= limit)
    }

    fn at_least(criterion: u8, name: impl Into<String>, actual: f64, limit: f64) -> Self {
        Self::new(criterion, name, limit, actual, 0.0, actual >= limit)
    }

    /// Strictly inside `(lo, hi)`.
    fn inside(criterion: u8, name: impl Into<String>, actual: f64, lo: f64, hi: f64) -> Self {
        let pass = lo < actual && actual < hi;
        Self::new(
            criterion,
            name,
            0.5 * (lo + hi),
            actual,
            0.5 * (hi - lo),
            pass,
        )
    }

    fn truth(criterion: u8, name: impl Into<String>, ok: bool) -> Self {
        Self::new(criterion, name, 1.0, if ok { 1.0 } else { 0.0 }, 0.0, ok)
    }

    fn advisory(mut self) -> Self {
        self.required = false;
        self
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// `PASS`, `FAIL`, or `NOTE` for a failed advisory check.
    pub fn status(&self, strict: bool) -> &'static str {
        match (self.pass, self.required || strict) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "NOTE",
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "criterion": self.criterion,
            "name": self.name,
            "expected": json_f64(self.expected),
            "actual": json_f64(self.actual),
            "tolerance": json_f64(self.tolerance),
            "pass": self.pass,
            "required": self.required,
            "detail": self.detail,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Counts {
    pub passed: usize,
    pub failed: usize,
    /// Failed advisory checks outside strict mode.
    pub advisory: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
    pub counts: Counts,
    pub runtime_ms: u128,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.counts.failed > 0)
    }

    /// Whether every required check of `criterion` passed.
    pub fn criterion_passed(&self, criterion: u8) -> bool {
        self.checks
            .iter()
            .filter(|c| c.criterion == criterion)
            .all(|c| c.pass || !(c.required || self.config.strict))
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} [{}] {}: expected {} actual {} tol {}",
                c.status(self.config.strict),
                c.criterion,
                c.name,
                fmt_f64(c.expected),
                fmt_f64(c.actual),
                fmt_f64(c.tolerance)
            ));
            if let Some(d) = &c.detail {
                out.push_str(&format!(" ({d})"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} advisory notes in {} ms\n",
            self.counts.passed, self.counts.failed, self.counts.advisory, self.runtime_ms
        ));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "meta": self.config.to_json(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "counts": {
                "passed": self.counts.passed,
                "failed": self.counts.failed,
                "advisory": self.counts.advisory,
            },
            "runtime_ms": self.runtime_ms,
        })
    }
}

fn tally(checks: &[Check], strict: bool) -> Counts {
    let mut counts = Counts::default();
    for c in checks {
        match c.status(strict) {
            "PASS" => counts.passed += 1,
            "FAIL" => counts.failed += 1,
            _ => counts.advisory += 1,
        }
    }
    counts
}

/// Runs every criterion in [`CRITERIA`].
pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport, ConfigError> {
    config.validate()?;
    let start = Instant::now();
    let checks: Vec<Check> = thread::scope(|scope| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|&n| scope.spawn(move || run_criterion(n, config)))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("criterion thread panicked"))
            .collect()
    });
    let counts = tally(&checks, config.strict);
    Ok(VerifyReport {
        config: config.clone(),
        checks,
        counts,
        runtime_ms: start.elapsed().as_millis(),
    })
}

/// The checks of one criterion; a numerical error becomes a failed check.
pub fn run_criterion(criterion: u8, config: &VerifyConfig) -> Vec<Check> {
    let result = match criterion {
        1 => constants_ledger_checks(config),
        2 => identity_checks(config),
        3 => series_agreement_checks(config),
        4 => bound_soundness_checks(config),
        5 => root_checks(config),
        6 => shape_checks(config),
        7 => cm_checks(config),
        8 => dirichlet_checks(),
        _ => Ok(vec![Check::truth(criterion, "unknown criterion", false)]),
    };
    result.unwrap_or_else(|e| {
        vec![Check::truth(
            criterion,
            format!("criterion {criterion} evaluation"),
            false,
        )
        .with_detail(e.to_string())]
    })
}

type Checks = ramanujan_core::Result<Vec<Check>>;

fn constants_ledger_checks(config: &VerifyConfig) -> Checks {
    let start = Instant::now();
    let scale = config.tol_constants / DEFAULT_TOL_CONSTANTS;
    let mut checks: Vec<Check> = constants_ledger()?
        .into_iter()
        .map(|e| {
            let reference = e.reference_value();
            let tol = 2.0 * e.last_digit_unit() * scale;
            let pass = e.digit_distance() <= 1.0 && (e.computed - reference).abs() <= tol;
            Check::new(
                1,
                format!("constant {}", e.name),
                reference,
                e.computed,
                tol,
                pass,
            )
        })
        .collect();
    checks.push(Check::at_most(
        1,
        "constants runtime (s)",
        start.elapsed().as_secs_f64(),
        5.0,
    ));
    Ok(checks)
}

fn identity_checks(config: &VerifyConfig) -> Checks {
    let table = build_table(config.table_n, 1e-16)?;
    let res = table.identity_residuals();
    let rec = table.recurrence_check();
    Ok(vec![
        Check::at_most(2, "|sum a_k - 1|", res.sum_a, 1e-11),
        Check::at_most(2, "|sum b_k - 1|", res.sum_b, 1e-12),
        Check::at_most(2, "|sum 2^-k a_k - b0|", res.weighted_a, 1e-11),
        Check::at_most(2, "c recurrence (roundings)", rec.c_roundings, 1.0),
        Check::at_most(2, "A recurrence (roundings)", rec.big_a_roundings, 1.0),
    ])
}

/// Largest `|u − v|/(err_u + err_v + slack)` over paired evaluations; at most 1
/// when every pair agrees within its combined error.
fn agreement(pairs: &[(RFunctionValue, RFunctionValue)]) -> f64 {
    pairs
        .iter()
        .map(|(u, v)| (u.value - v.value).abs() / (u.est_abs_err + v.est_abs_err + SERIES_SLACK))
        .fold(0.0, f64::max)
}

fn series_agreement_checks(config: &VerifyConfig) -> Checks {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let points: Vec<f64> = (0..RANDOM_POINTS)
        .map(|_| 0.5 - rng.gen_range(0.0..0.5))
        .collect();
    let methods = [
        EvalMethod::Direct,
        EvalMethod::OriginSeries,
        EvalMethod::CenterSeries,
    ];
    type Eval = fn(f64, EvalMethod) -> ramanujan_core::Result<RFunctionValue>;
    let mut checks = Vec::new();
    for (label, eval) in [("R", r_eval as Eval), ("f", f_eval as Eval)] {
        let values = points
            .iter()
            .map(|&x| {
                methods
                    .iter()
                    .map(|&m| eval(x, m))
                    .collect::<ramanujan_core::Result<Vec<_>>>()
            })
            .collect::<ramanujan_core::Result<Vec<_>>>()?;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let pairs: Vec<_> = values.iter().map(|v| (v[i], v[j])).collect();
            checks.push(Check::at_most(
                3,
                format!("{label} {} vs {}", methods[i], methods[j]),
                agreement(&pairs),
                1.0,
            ));
        }
    }
    Ok(checks)
}

/// Methods covered by the soundness grid and the tables.
pub fn bound_methods() -> Vec<BoundMethod> {
    let mut methods = vec![BoundMethod::SinePoly];
    methods.extend((1..=3).map(BoundMethod::OriginPoly));
    methods.extend((0..=3).map(BoundMethod::CenterPoly));
    methods.extend([
        BoundMethod::Multiplicative,
        BoundMethod::Additive,
        BoundMethod::Envelope(DEFAULT_ENVELOPE_N),
    ]);
    methods
}

fn bound_soundness_checks(config: &VerifyConfig) -> Checks {
    let start = Instant::now();
    let delta = delta_estimate(DEFAULT_ROOT_TOL)?.delta;
    let n = config.grid_size;
    let grid: Vec<f64> = (1..=n).map(|i| 0.5 * i as f64 / n as f64).collect();
    let r: Vec<f64> = grid
        .iter()
        .map(|&x| Ok(r_eval(x, EvalMethod::Auto)?.value))
        .collect::<ramanujan_core::Result<_>>()?;
    let mut checks = Vec::new();
    for method in bound_methods() {
        let mut worst: f64 = 0.0;
        let mut worst_x = grid[0];
        for (&x, &rx) in grid.iter().zip(&r) {
            let pair = bound(method, x, delta)?;
            let violation = (pair.lower - rx).max(rx - pair.upper) / rx.abs();
            if violation > worst {
                worst = violation;
                worst_x = x;
            }
        }
        let check = Check::at_most(
            4,
            format!("{method} soundness (relative)"),
            worst,
            config.tol_grid,
        );
        checks.push(if check.pass {
            check
        } else {
            check.with_detail(format!("worst at x={worst_x}"))
        });
        if method.equality_at_half() {
            let gap = bound(method, 0.5, delta)?.gap();
            checks.push(Check::at_most(
                4,
                format!("{method} gap at 1/2"),
                gap,
                config.tol_grid,
            ));
        }
    }
    checks.push(Check::at_most(
        4,
        "bounds runtime (s)",
        start.elapsed().as_secs_f64(),
        30.0,
    ));
    Ok(checks)
}

fn root_checks(config: &VerifyConfig) -> Checks {
    let k = constants();
    let x0 = x0_root(DEFAULT_ROOT_TOL)?;
    let d = delta_estimate(DEFAULT_ROOT_TOL)?;
    let x2 = x2_root(DEFAULT_ROOT_TOL)?;
    let h8_max = h8_grid_max(config.grid_size)?;
    Ok(vec![
        Check::inside(5, "x0 enclosure lower end", x0.lo, 0.276_937, 0.276_938),
        Check::inside(5, "x0 enclosure upper end", x0.hi, 0.276_937, 0.276_938),
        Check::inside(5, "x1 in (1/4, 1/2)", d.x1, 0.25, 0.5),
        Check::at_most(5, "|H(x1)|", d.residual_h, 1e-11),
        Check::inside(5, "delta = F1(x1)", d.delta, k.delta_lo, k.delta_hi),
        Check::inside(5, "x2 in (0, 1/2)", x2.x, 0.0, 0.5),
        Check::truth(
            5,
            "H3 changes sign at x2",
            h3_eval(x2.lo)? > 0.0 && h3_eval(x2.hi)? < 0.0,
        ),
        Check::at_most(5, "1 + max h8", 1.0 + h8_max, k.delta_hi),
    ])
}

type Scalar = Box<dyn Fn(f64) -> ramanujan_core::Result<f64>>;

fn sample(f: &Scalar, grid: &[f64]) -> ramanujan_core::Result<Vec<f64>> {
    grid.iter().map(|&x| f(x)).collect()
}

fn shape_checks(config: &VerifyConfig) -> Checks {
    let n = config.shape_grid();
    let closed = uniform_grid(EPS_GUARD, 0.5, n);
    let open = uniform_grid(EPS_GUARD, 0.5 - EPS_GUARD, n);
    let mut checks = Vec::new();

    // (name, function, open domain, increasing, convex)
    let mut shapes: Vec<(String, Scalar, bool, bool, bool)> = vec![
        ("f".into(), Box::new(f_value), false, false, true),
        (
            "F3".into(),
            Box::new(|x| comparison(Comparison::F3, x)),
            false,
            false,
            true,
        ),
        ("H".into(), Box::new(h_eval), true, false, true),
    ];
    for k in 0..=8u32 {
        let increasing = k == 0 || k % 2 == 1;
        let convex = k % 2 == 0;
        shapes.push((
            format!("f{k}"),
            Box::new(move |x| fn_ratio(k, x)),
            false,
            increasing,
            convex,
        ));
    }
    for k in 0..=5u32 {
        shapes.push((
            format!("g{k}"),
            Box::new(move |x| gn_ratio(k, x)),
            true,
            true,
            false,
        ));
    }
    for (name, f, open_domain, increasing, convex) in &shapes {
        let values = sample(f, if *open_domain { &open } else { &closed })?;
        let direction = if *increasing {
            "increasing"
        } else {
            "decreasing"
        };
        let curvature = if *convex { "convex" } else { "concave" };
        checks.push(Check::at_most(
            6,
            format!("{name} {direction}"),
            monotone_violation(&values, *increasing),
            SHAPE_SLACK,
        ));
        checks.push(Check::at_most(
            6,
            format!("{name} {curvature}"),
            convexity_violation(&values, *convex),
            SHAPE_SLACK,
        ));
    }

    for (kind, name, lo) in [(Comparison::F1, "F1", 0.25), (Comparison::F2, "F2", 0.0)] {
        let values = sample(&(Box::new(move |x| comparison(kind, x)) as Scalar), &closed)?;
        let peak = values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map_or(0, |(i, _)| i);
        let violation = monotone_violation(&values[..=peak], true)
            .max(monotone_violation(&values[peak..], false));
        checks.push(Check::at_most(
            6,
            format!("{name} unimodal"),
            violation,
            SHAPE_SLACK,
        ));
        checks.push(Check::inside(
            6,
            format!("{name} argmax interior"),
            closed[peak],
            lo,
            0.5,
        ));
        // Second differences change sign between the ends.
        let h = 0.01;
        let f = |x| comparison(kind, x);
        let near_zero = f(0.02 - h)? - 2.0 * f(0.02)? + f(0.02 + h)?;
        let near_half = 2.0 * (f(0.5 - h)? - f(0.5)?);
        checks.push(Check::at_most(
            6,
            format!("{name} concave near 0"),
            near_zero,
            0.0,
        ));
        checks.push(Check::at_least(
            6,
            format!("{name} convex near 1/2"),
            near_half,
            0.0,
        ));
    }
    Ok(checks)
}

fn cm_checks(config: &VerifyConfig) -> Checks {
    let grid = config.shape_grid();
    let order = config.max_cm_order;
    let mut checks = Vec::new();
    let mut probe = |target: CmTarget, from: u32, required: bool| -> ramanujan_core::Result<()> {
        let report = cm_probe(target, order, grid)?;
        let worst = report.worst_from(from);
        let name = if required {
            format!("{target} complete monotonicity (m >= {from})")
        } else {
            format!("{target} complete monotonicity (m >= {from}, conjecture probe)")
        };
        let check = Check::at_least(7, name, worst, CM_FLOOR);
        checks.push(if required { check } else { check.advisory() });
        Ok(())
    };
    probe(CmTarget::F, 0, true)?;
    for n in 0..=3 {
        probe(CmTarget::G(n), 0, true)?;
    }
    probe(CmTarget::H3, 1, true)?;
    probe(CmTarget::F3, 0, false)?;
    Ok(checks)
}

fn dirichlet_checks() -> Checks {
    let tol = SPECIAL_VALUE_TOL;
    let mut checks = vec![
        Check::close(8, "zeta(2) = pi^2/6", PI * PI / 6.0, zeta_value(2.0)?, tol),
        Check::close(
            8,
            "zeta(4) = pi^4/90",
            PI.powi(4) / 90.0,
            zeta_value(4.0)?,
            tol,
        ),
        Check::close(
            8,
            "lambda(2) = pi^2/8",
            PI * PI / 8.0,
            lambda_value(2.0)?,
            tol,
        ),
        Check::close(
            8,
            "lambda(4) = pi^4/96",
            PI.powi(4) / 96.0,
            lambda_value(4.0)?,
            tol,
        ),
        Check::close(8, "beta(1) = pi/4", PI / 4.0, beta_value(1.0)?, tol),
        Check::close(
            8,
            "beta(3) = pi^3/32",
            PI.powi(3) / 32.0,
            beta_value(3.0)?,
            tol,
        ),
    ];
    let failing: Vec<u32> = (2..=60)
        .map(|n| Ok((n, zeta_chain(n)?.holds())))
        .collect::<ramanujan_core::Result<Vec<_>>>()?
        .into_iter()
        .filter_map(|(n, ok)| (!ok).then_some(n))
        .collect();
    let chain = Check::truth(8, "zeta chain for n = 2..60", failing.is_empty());
    checks.push(if failing.is_empty() {
        chain
    } else {
        chain.with_detail(format!("fails at {failing:?}"))
    });

    let k = constants();
    let grid = |lo: f64, hi: f64| uniform_grid(lo, hi, 200);
    let sampled = |f: &dyn Fn(f64) -> ramanujan_core::Result<f64>, xs: &[f64]| {
        xs.iter()
            .map(|&x| f(x))
            .collect::<ramanujan_core::Result<Vec<_>>>()
    };
    let mut shape = |name: &str, values: &[f64], increasing: bool, convex: Option<bool>| {
        checks.push(Check::at_most(
            8,
            format!(
                "{name} {}",
                if increasing {
                    "increasing"
                } else {
                    "decreasing"
                }
            ),
            monotone_violation(values, increasing),
            0.0,
        ));
        if let Some(convex) = convex {
            checks.push(Check::at_most(
                8,
                format!("{name} {}", if convex { "convex" } else { "concave" }),
                convexity_violation(values, convex),
                0.0,
            ));
        }
    };

    let lambda = sampled(&lambda_value, &grid(1.05, 20.0))?;
    shape("lambda", &lambda, false, Some(true));
    let beta = sampled(&beta_value, &grid(1.0, 20.0))?;
    shape("beta", &beta, true, None);
    let beta_tail = sampled(&beta_value, &grid(2.0 / 3f64.ln(), 20.0))?;
    shape("beta on [2/ln 3, 20]", &beta_tail, true, Some(false));
    let phi1 = sampled(&|x| phi(1, x, None), &grid(1.05, 20.0))?;
    shape("phi1", &phi1, false, Some(true));
    for (label, c) in [("C1", c1()), ("1", 1.0)] {
        let phi2 = sampled(&|x| phi(2, x, Some(c)), &grid(2.0, 20.0))?;
        shape(&format!("phi2 (c = {label})"), &phi2, true, None);
    }
    let xs = grid(3.0, 20.0);
    let phi3 = sampled(&|x| phi(3, x, None), &xs)?;
    shape("phi3", &phi3, true, Some(false));
    let phi4 = sampled(&|x| phi(4, x, None), &xs)?;
    shape("phi4", &phi4, true, None);
    let phi5 = sampled(&|x| phi(5, x, None), &xs)?;
    shape("phi5", &phi5, true, None);
    let phi6 = sampled(&|x| phi(6, x, None), &xs)?;
    shape("phi6", &phi6, false, None);

    let range = |name: &str, values: &[f64], lo: f64, hi: f64, lo_closed: bool| {
        let (min, max) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
                (a.min(v), b.max(v))
            });
        let ok = (if lo_closed { min >= lo } else { min > lo })
            && (if lo_closed { max < hi } else { max <= hi });
        Check::truth(8, format!("{name} range"), ok)
    };
    checks.push(range("phi3 in [mu1, 0)", &phi3, k.mu1, 0.0, true));
    checks.push(range("phi4 in [mu2, 0)", &phi4, k.mu2, 0.0, true));
    checks.push(range("phi5 in [mu3, 0)", &phi5, k.mu3, 0.0, true));
    checks.push(range("phi6 in (0, mu4]", &phi6, 0.0, k.mu4, false));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(VerifyConfig::default().validate().is_ok());
        let bad = VerifyConfig {
            grid_size: 99,
            ..VerifyConfig::default()
        };
        assert_eq!(bad.validate(), Err(ConfigError::Grid(99)));
        let bad = VerifyConfig {
            tol_grid: 0.0,
            ..VerifyConfig::default()
        };
        assert!(matches!(bad.validate(), Err(ConfigError::Tolerance { .. })));
        let bad = VerifyConfig {
            max_cm_order: 9,
            ..VerifyConfig::default()
        };
        assert_eq!(bad.validate(), Err(ConfigError::CmOrder(9)));
    }

    #[test]
    fn counts_follow_statuses() {
        let checks = vec![
            Check::truth(1, "a", true),
            Check::truth(1, "b", false),
            Check::truth(1, "c", false).advisory(),
        ];
        assert_eq!(
            tally(&checks, false),
            Counts {
                passed: 1,
                failed: 1,
                advisory: 1
            }
        );
        assert_eq!(
            tally(&checks, true),
            Counts {
                passed: 1,
                failed: 2,
                advisory: 0
            }
        );
    }

    #[test]
    fn tight_constants_tolerance_fails() {
        let config = VerifyConfig {
            tol_constants: 1e-15,
            ..VerifyConfig::default()
        };
        let checks = run_criterion(1, &config);
        let b0 = checks.iter().find(|c| c.name == "constant b0").unwrap();
        assert!(!b0.pass);
    }
}
