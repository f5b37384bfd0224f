//! Regime selection.

use std::f64::consts::PI;

use crate::asymptotic;
use crate::cgamma::recip_gamma_real;
use crate::closed_forms::closed_form;
use crate::error::{ensure_finite, PcfError, Result};
use crate::eval::{EvalResult, Function, Method, Regime, Scaled};
use crate::numeric::{cospi, sinpi};
use crate::{uv, w};

/// Largest |a| accepted anywhere in the library.
pub const MAX_ABS_A: f64 = 25.0;

/// |x| up to which dispatch uses the origin series without further checks.
pub const SERIES_LIMIT: f64 = 6.0;

/// Relative error estimate below which the origin series is accepted as is.
pub(crate) const ROUTE_ACCEPT: f64 = 1e-14;

/// |x| from which dispatch switches to the large-argument expansions.
pub fn asymptotic_threshold(a: f64) -> f64 {
    8f64.max(2.0 * a.abs() + 6.0)
}

/// Largest |x| the moderate-regime routines accept.
pub fn moderate_limit(a: f64) -> f64 {
    asymptotic_threshold(a) + 4.0
}

pub(crate) fn check_parameter(a: f64) -> Result<()> {
    ensure_finite("a", a)?;
    if a.abs() > MAX_ABS_A {
        return Err(PcfError::Range(format!(
            "|a| = {} exceeds the supported bound {MAX_ABS_A}",
            a.abs()
        )));
    }
    Ok(())
}

pub(crate) fn check_moderate(a: f64, x: f64) -> Result<()> {
    check_parameter(a)?;
    ensure_finite("x", x)?;
    let lim = moderate_limit(a);
    if x.abs() > lim {
        return Err(PcfError::Regime(format!(
            "|x| = {} is beyond the moderate regime (limit {lim} at a = {a})",
            x.abs()
        )));
    }
    Ok(())
}

/// Evaluates U, V or W at (a, x), choosing the regime unless one is forced.
pub fn dispatch(function: Function, a: f64, x: f64, forced: Option<Regime>) -> Result<EvalResult> {
    check_parameter(a)?;
    ensure_finite("x", x)?;
    let regime = forced.unwrap_or(if x.abs() < asymptotic_threshold(a) {
        Regime::ModerateSeries
    } else {
        Regime::LargeArgAsymptotic
    });
    match regime {
        Regime::ModerateSeries => match function {
            Function::U => uv::pu(a, x),
            Function::V => uv::pv(a, x),
            Function::W => w::pw(a, x),
        },
        Regime::LargeArgAsymptotic => {
            let s = large_argument(function, a, x)?;
            EvalResult::from_scaled(s, Regime::LargeArgAsymptotic, Method::AsymptoticExpansion)
        }
        Regime::ClosedForm => {
            let (value, derivative, err) = closed_form(function, a, x).ok_or_else(|| {
                PcfError::Regime(format!("no closed form for {function}({a}, x)"))
            })??;
            Ok(EvalResult {
                value,
                derivative,
                accuracy_estimate: err,
                derivative_accuracy: err * (1.0 + 0.5 * x.abs()),
                regime: Regime::ClosedForm,
                method: Method::ClosedForm,
            })
        }
    }
}

fn large_argument(function: Function, a: f64, x: f64) -> Result<Scaled> {
    if x == 0.0 {
        return Err(PcfError::Regime(
            "the large-argument expansions need x != 0".into(),
        ));
    }
    let ax = x.abs();
    match function {
        Function::W => asymptotic::w_scaled(a, x),
        Function::U if x > 0.0 => asymptotic::u_scaled(a, x),
        Function::V if x > 0.0 => asymptotic::v_scaled(a, x),
        Function::U => {
            let (u, v) = (asymptotic::u_scaled(a, ax)?, asymptotic::v_scaled(a, ax)?);
            Ok(Scaled::combine(PI * recip_gamma_real(0.5 + a), v, -sinpi(a), u).reflected())
        }
        Function::V => {
            let (u, v) = (asymptotic::u_scaled(a, ax)?, asymptotic::v_scaled(a, ax)?);
            Ok(Scaled::combine(sinpi(a), v, cospi(a) * recip_gamma_real(0.5 - a), u).reflected())
        }
    }
}
