//! Replays the printed tables, the closed forms and optional oracle data
//! against the production evaluation paths.

use serde::Serialize;

use crate::cgamma::{gamma_modulus, gamma_real, ComplexValue};
use crate::closed_forms::{u_halfodd, uv_integer_a, v_halfodd, w_zero_a};
use crate::dispatch::dispatch;
use crate::eval::{EvalResult, Function, Regime};
use crate::fixtures::{paper_fixtures, OracleRecord, ReferenceFixture};
use crate::numeric::{sinpi, EPS};

/// Relative tolerance of the closed-form comparisons.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-10;
/// Below this magnitude closed-form checks switch to an absolute 1e-13 bound.
pub const CLOSED_FORM_SMALL: f64 = 1e-8;
/// Relative tolerance of the origin anchors.
pub const ANCHOR_TOLERANCE: f64 = 1e-12;
/// Relative tolerance of oracle points with |x| <= 6.
pub const ORACLE_TOLERANCE: f64 = 1e-11;
/// Sample arguments of the closed-form suite.
pub const CLOSED_FORM_X: [f64; 6] = [0.5, 1.0, 2.0, 3.0, 4.0, 5.0];

/// A single comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub computed: f64,
    pub expected: f64,
    /// Largest accepted |computed - expected|.
    pub allowed: f64,
    pub rel_error: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(label: String, computed: f64, expected: f64, allowed: f64) -> Self {
        let diff = (computed - expected).abs();
        let rel_error = if expected == 0.0 {
            diff
        } else {
            diff / expected.abs()
        };
        Self {
            label,
            computed,
            expected,
            allowed,
            rel_error,
            passed: diff <= allowed,
        }
    }

    fn failed(label: String, expected: f64) -> Self {
        Self {
            label,
            computed: f64::NAN,
            expected,
            allowed: 0.0,
            rel_error: f64::INFINITY,
            passed: false,
        }
    }
}

/// Aggregate of one group of checks; only failures are kept in full.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Suite {
    pub name: String,
    pub checks: usize,
    pub passed: usize,
    pub max_rel_error: f64,
    pub failures: Vec<Check>,
}

impl Suite {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            checks: 0,
            passed: 0,
            max_rel_error: 0.0,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, check: Check) {
        self.checks += 1;
        self.max_rel_error = self.max_rel_error.max(check.rel_error);
        if check.passed {
            self.passed += 1;
        } else {
            self.failures.push(check);
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.checks
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelftestReport {
    pub suites: Vec<Suite>,
    pub elapsed_seconds: f64,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(Suite::ok)
    }

    pub fn checks(&self) -> usize {
        self.suites.iter().map(|s| s.checks).sum()
    }

    pub fn failures(&self) -> usize {
        self.suites.iter().map(|s| s.checks - s.passed).sum()
    }
}

/// One suite per table, in the order the fixtures first mention each table.
pub fn fixture_suites(fixtures: &[ReferenceFixture]) -> Vec<Suite> {
    let mut suites: Vec<(u8, Suite)> = Vec::new();
    for f in fixtures {
        let idx = match suites.iter().position(|(t, _)| *t == f.table) {
            Some(i) => i,
            None => {
                suites.push((f.table, Suite::new(format!("table {}", f.table))));
                suites.len() - 1
            }
        };
        let label = format!("{}({}, {})", f.function, f.a, f.x);
        let check = match dispatch(f.function, f.a, f.x, None) {
            Ok(r) => Check::new(label, r.value, f.expected, f.tolerance()),
            Err(_) => Check::failed(label, f.expected),
        };
        suites[idx].1.record(check);
    }
    suites.into_iter().map(|(_, s)| s).collect()
}

fn series(function: Function, a: f64, x: f64) -> Option<EvalResult> {
    dispatch(function, a, x, Some(Regime::ModerateSeries)).ok()
}

fn closed_check(suite: &mut Suite, label: String, computed: Option<f64>, expected: f64) {
    let allowed = if expected.abs() < CLOSED_FORM_SMALL {
        1e-13
    } else {
        CLOSED_FORM_TOLERANCE * expected.abs()
    };
    match computed {
        Some(c) => suite.record(Check::new(label, c, expected, allowed)),
        None => suite.record(Check::failed(label, expected)),
    }
}

/// Half-odd elementary forms, the erfc family and its derivatives, W at a = 0
/// through Bessel J and the integer-a Bessel forms, each against the series.
pub fn closed_form_suites() -> Vec<Suite> {
    let mut half_odd = Suite::new("half-odd elementary forms");
    let mut erfc = Suite::new("erfc forms");
    let mut w_bessel = Suite::new("W(0,x) Bessel forms");
    let mut integer = Suite::new("integer-a Bessel forms");

    for x in CLOSED_FORM_X {
        for n in 0..5 {
            let a = -0.5 - n as f64;
            if let Ok((v, _)) = u_halfodd(a, x) {
                let s = series(Function::U, a, x);
                closed_check(&mut half_odd, format!("U({a}, {x})"), s.map(|r| r.value), v);
            }
            let a = 0.5 + n as f64;
            if let Ok((v, _)) = v_halfodd(a, x) {
                let s = series(Function::V, a, x);
                closed_check(&mut half_odd, format!("V({a}, {x})"), s.map(|r| r.value), v);
            }
        }

        for a in [0.5, 1.5, 2.5] {
            if let Ok((v, d)) = u_halfodd(a, x) {
                let s = series(Function::U, a, x);
                closed_check(&mut erfc, format!("U({a}, {x})"), s.map(|r| r.value), v);
                closed_check(
                    &mut erfc,
                    format!("U'({a}, {x})"),
                    s.map(|r| r.derivative),
                    d,
                );
            }
        }

        if let Ok(w) = w_zero_a(x) {
            let p = series(Function::W, 0.0, x);
            let m = series(Function::W, 0.0, -x);
            closed_check(
                &mut w_bessel,
                format!("W(0, {x})"),
                p.map(|r| r.value),
                w.w_pos,
            );
            closed_check(
                &mut w_bessel,
                format!("W(0, -{x})"),
                m.map(|r| r.value),
                w.w_neg,
            );
            closed_check(
                &mut w_bessel,
                format!("W'(0, {x})"),
                p.map(|r| r.derivative),
                w.dw_pos,
            );
            closed_check(
                &mut w_bessel,
                format!("W'(0, -{x})"),
                m.map(|r| r.derivative),
                w.dw_neg,
            );
        }

        for a in -2..=2 {
            if let Ok((u, v)) = uv_integer_a(a, x) {
                let af = a as f64;
                let su = series(Function::U, af, x);
                let sv = series(Function::V, af, x);
                closed_check(&mut integer, format!("U({a}, {x})"), su.map(|r| r.value), u);
                closed_check(&mut integer, format!("V({a}, {x})"), sv.map(|r| r.value), v);
            }
        }
    }
    vec![half_odd, erfc, w_bessel, integer]
}

/// Twenty parameters in [-5, 5], most of them on half-odd or integer lines.
pub fn anchor_parameters() -> Vec<f64> {
    vec![
        -5.0, -4.5, -3.7, -3.5, -2.5, -2.0, -1.5, -1.0, -0.5, -0.2, 0.0, 0.3, 0.5, 1.0, 1.5, 2.5,
        3.0, 3.5, 4.25, 5.0,
    ]
}

/// 1/Gamma(x) through the gamma function itself, zero at the poles.
fn inverse_gamma(x: f64) -> f64 {
    gamma_real(x).map_or(0.0, |g| 1.0 / g)
}

/// Origin values from the dispatcher against the printed zero-point formulas,
/// evaluated with Gamma and |Gamma| rather than the reciprocal and log forms
/// the library uses.
pub fn anchor_suite(params: &[f64]) -> Suite {
    let mut suite = Suite::new("origin anchors");
    let sqrt_pi = std::f64::consts::PI.sqrt();
    for &a in params {
        let h = 0.5 * a;
        let u0 = sqrt_pi / 2f64.powf(h + 0.25) * inverse_gamma(h + 0.75);
        let du0 = -sqrt_pi / 2f64.powf(h - 0.25) * inverse_gamma(h + 0.25);
        let v0 = 2f64.powf(h + 0.25) * sinpi(0.75 - h) * inverse_gamma(0.75 - h);
        let dv0 = 2f64.powf(h + 0.75) * sinpi(0.25 - h) * inverse_gamma(0.25 - h);
        let mut push = |label: String, got: Option<f64>, want: f64| {
            let allowed = (ANCHOR_TOLERANCE * want.abs()).max(4.0 * EPS);
            match got {
                Some(g) => suite.record(Check::new(label, g, want, allowed)),
                None => suite.record(Check::failed(label, want)),
            }
        };
        let u = series(Function::U, a, 0.0);
        let v = series(Function::V, a, 0.0);
        let w = series(Function::W, a, 0.0);
        push(format!("U({a}, 0)"), u.map(|r| r.value), u0);
        push(format!("U'({a}, 0)"), u.map(|r| r.derivative), du0);
        push(format!("V({a}, 0)"), v.map(|r| r.value), v0);
        push(format!("V'({a}, 0)"), v.map(|r| r.derivative), dv0);
        let g1 = gamma_modulus(ComplexValue::new(0.25, h));
        let g3 = gamma_modulus(ComplexValue::new(0.75, h));
        if let (Ok(g1), Ok(g3)) = (g1, g3) {
            push(
                format!("W({a}, 0)"),
                w.map(|r| r.value),
                2f64.powf(-0.75) * (g1 / g3).sqrt(),
            );
            push(
                format!("W'({a}, 0)"),
                w.map(|r| r.derivative),
                -2f64.powf(-0.25) * (g3 / g1).sqrt(),
            );
        }
    }
    suite
}

fn oracle_allowed(x: f64, expected: f64, estimate: f64) -> f64 {
    let tight = ORACLE_TOLERANCE * expected.abs();
    if x.abs() <= 6.0 {
        tight
    } else {
        tight.max(estimate)
    }
}

/// High-precision reference points: 1e-11 relative for |x| <= 6, the
/// reported error estimate beyond.
pub fn oracle_suite(records: &[OracleRecord]) -> Suite {
    let mut suite = Suite::new("oracle");
    for rec in records {
        let label = format!("{}({}, {})", rec.function, rec.a, rec.x);
        let Some(expected) = rec.value() else {
            suite.record(Check::failed(format!("{label} unparsable"), f64::NAN));
            continue;
        };
        let got = dispatch(rec.function, rec.a, rec.x, None);
        match &got {
            Ok(r) => suite.record(Check::new(
                label.clone(),
                r.value,
                expected,
                oracle_allowed(rec.x, expected, r.accuracy_estimate),
            )),
            Err(_) => suite.record(Check::failed(label.clone(), expected)),
        }
        if let Some(d) = rec.derivative() {
            let label = format!("{}'({}, {})", rec.function, rec.a, rec.x);
            match &got {
                Ok(r) => suite.record(Check::new(
                    label,
                    r.derivative,
                    d,
                    oracle_allowed(rec.x, d, r.derivative_accuracy),
                )),
                Err(_) => suite.record(Check::failed(label, d)),
            }
        }
    }
    suite
}

/// Runs the given fixtures, the closed-form and anchor suites, and the
/// oracle points when supplied.
pub fn run_with(fixtures: &[ReferenceFixture], oracle: Option<&[OracleRecord]>) -> SelftestReport {
    let start = std::time::Instant::now();
    let mut suites = fixture_suites(fixtures);
    suites.extend(closed_form_suites());
    suites.push(anchor_suite(&anchor_parameters()));
    if let Some(records) = oracle {
        suites.push(oracle_suite(records));
    }
    SelftestReport {
        suites,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    }
}

/// Selftest over the embedded tables.
pub fn run(oracle: Option<&[OracleRecord]>) -> SelftestReport {
    run_with(&paper_fixtures(), oracle)
}
