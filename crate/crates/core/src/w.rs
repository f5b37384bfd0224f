//! W(a,x) in the moderate regime from the minus-sign series.
//!
//! W(a,x) = W(a,0) y1(x) + W'(a,0) y2(x) with
//! W(a,0) = 2^{-3/4} sqrt(G1/G3), W'(a,0) = -2^{-1/4} sqrt(G3/G1),
//! G1 = |Gamma(1/4 + ia/2)|, G3 = |Gamma(3/4 + ia/2)|.

use serde::Serialize;

use crate::asymptotic;
use crate::cgamma::{log_gamma, ComplexValue};
use crate::continuation::propagate;
use crate::dispatch::{check_moderate, MAX_ABS_A};
use crate::error::{ensure_finite, PcfError, Result};
use crate::eval::{EvalResult, Method, Regime, Scaled};
use crate::numeric::EPS;
use crate::series::SeriesSign;
use crate::uv::{best_route, continuation_start, series_route};

/// Gamma moduli fixing W at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WPrefactors {
    pub g1: f64,
    pub g3: f64,
    /// sqrt(g1/g3), formed in log space.
    pub ratio_sqrt: f64,
}

impl WPrefactors {
    /// W(a,0).
    pub fn w0(&self) -> f64 {
        (-0.75f64).exp2() * self.ratio_sqrt
    }

    /// W'(a,0).
    pub fn dw0(&self) -> f64 {
        -(-0.25f64).exp2() / self.ratio_sqrt
    }

    /// Relative error of `w0` and `dw0`: the two log-moduli come from shifted
    /// Stirling sums of size up to about 30 and keep their absolute error.
    pub(crate) fn anchor_rel(&self) -> f64 {
        EPS * (24.0 + self.g1.ln().abs() + self.g3.ln().abs())
    }
}

/// G1, G3 and sqrt(G1/G3) for parameter a.
pub fn w_at_zero(a: f64) -> Result<WPrefactors> {
    ensure_finite("a", a)?;
    if a.abs() > MAX_ABS_A {
        return Err(PcfError::Range(format!(
            "|a| = {} exceeds the supported bound {MAX_ABS_A}",
            a.abs()
        )));
    }
    // |Gamma(conj z)| = |Gamma(z)|, so fold to a >= 0 for bitwise symmetry
    let h = 0.5 * a.abs();
    let l1 = log_gamma(ComplexValue::new(0.25, h))?.re;
    let l3 = log_gamma(ComplexValue::new(0.75, h))?.re;
    Ok(WPrefactors {
        g1: l1.exp(),
        g3: l3.exp(),
        ratio_sqrt: (0.5 * (l1 - l3)).exp(),
    })
}

pub(crate) fn w_route(a: f64, x: f64) -> Result<(Scaled, Method)> {
    let p = w_at_zero(a)?;
    let (w0, dw0) = (p.w0(), p.dw0());
    let series = series_route(a, x, (w0, dw0), p.anchor_rel(), SeriesSign::Minus);
    best_route(series, || {
        if x > 0.0 || a <= 0.0 {
            // decaying toward large |x| here, so integrate inward
            let xs = continuation_start(a, x).copysign(x);
            let start = asymptotic::w_scaled(a, xs)?;
            Ok((
                propagate(a, -1.0, xs, start, x).0,
                Method::TaylorContinuation,
            ))
        } else {
            let start = Scaled::plain(w0, dw0, 4.0 * EPS * w0.abs(), 4.0 * EPS * dw0.abs());
            Ok((
                propagate(a, -1.0, 0.0, start, x).0,
                Method::TaylorContinuation,
            ))
        }
    })
}

/// W(a,x) and W'(a,x) in the moderate regime, x of either sign.
pub fn pw(a: f64, x: f64) -> Result<EvalResult> {
    check_moderate(a, x)?;
    let (s, m) = w_route(a, x)?;
    EvalResult::from_scaled(s, Regime::ModerateSeries, m)
}

/// W'(a,x) in the moderate regime.
pub fn dpw(a: f64, x: f64) -> Result<f64> {
    Ok(pw(a, x)?.derivative)
}
