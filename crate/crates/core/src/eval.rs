//! Result types shared by every evaluation path.

use serde::{Deserialize, Serialize};

use crate::error::{PcfError, Result};
use crate::numeric::EPS;

/// Which of the three parabolic cylinder functions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Function {
    U,
    V,
    W,
}

impl std::str::FromStr for Function {
    type Err = PcfError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "U" | "u" => Ok(Function::U),
            "V" | "v" => Ok(Function::V),
            "W" | "w" => Ok(Function::W),
            other => Err(PcfError::Domain(format!("unknown function {other:?}"))),
        }
    }
}

impl std::fmt::Display for Function {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Function::U => "U",
            Function::V => "V",
            Function::W => "W",
        };
        f.write_str(s)
    }
}

/// Evaluation regime selected by dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    ModerateSeries,
    LargeArgAsymptotic,
    ClosedForm,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::ModerateSeries => "moderate_series",
            Regime::LargeArgAsymptotic => "large_arg_asymptotic",
            Regime::ClosedForm => "closed_form",
        };
        f.write_str(s)
    }
}

/// The concrete algorithm that produced a value inside a regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Power series about the origin.
    PowerSeries,
    /// Taylor stepping of the differential equation from a trusted start value.
    TaylorContinuation,
    /// Reflection x -> -x through the connection formulas.
    ConnectionFormula,
    /// Optimally truncated large-x expansion.
    AsymptoticExpansion,
    /// Elementary or Bessel closed form.
    ClosedForm,
}

/// A function value with its x-derivative and absolute error estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub derivative: f64,
    pub accuracy_estimate: f64,
    pub derivative_accuracy: f64,
    pub regime: Regime,
    pub method: Method,
}

impl EvalResult {
    pub(crate) fn from_scaled(s: Scaled, regime: Regime, method: Method) -> Result<Self> {
        let (value, derivative, err, derr) = s.finish()?;
        Ok(Self {
            value,
            derivative,
            accuracy_estimate: err,
            derivative_accuracy: derr,
            regime,
            method,
        })
    }

    /// Largest of the value and derivative relative error estimates.
    pub fn relative_accuracy(&self) -> f64 {
        rel_score(self.value, self.accuracy_estimate)
            .max(rel_score(self.derivative, self.derivative_accuracy))
    }
}

fn rel_score(v: f64, err: f64) -> f64 {
    if err == 0.0 {
        0.0
    } else {
        err / v.abs().max(f64::MIN_POSITIVE)
    }
}

/// Value and derivative carried as mantissas times exp(ln_scale).
///
/// `err` and `derr` are absolute errors in the same scaled units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Scaled {
    pub y: f64,
    pub dy: f64,
    pub ln_scale: f64,
    pub err: f64,
    pub derr: f64,
}

impl Scaled {
    pub fn plain(y: f64, dy: f64, err: f64, derr: f64) -> Self {
        Self {
            y,
            dy,
            ln_scale: 0.0,
            err,
            derr,
        }
    }

    /// Relative error score used to pick between candidate routes.
    pub fn score(&self) -> f64 {
        rel_score(self.y, self.err).max(rel_score(self.dy, self.derr))
    }

    /// Moves the mantissa magnitude to about one.
    pub fn normalized(self) -> Self {
        let m = self.y.abs().max(self.dy.abs());
        if m == 0.0 || !m.is_finite() {
            return self;
        }
        let l = m.ln();
        Self {
            y: self.y / m,
            dy: self.dy / m,
            ln_scale: self.ln_scale + l,
            err: self.err / m,
            derr: self.derr / m,
        }
    }

    /// c1*p + c2*q with rounding folded into the error terms.
    pub fn combine(c1: f64, p: Scaled, c2: f64, q: Scaled) -> Self {
        let base = if c1 == 0.0 {
            q.ln_scale
        } else if c2 == 0.0 {
            p.ln_scale
        } else {
            p.ln_scale.max(q.ln_scale)
        };
        let fp = if c1 == 0.0 {
            0.0
        } else {
            (p.ln_scale - base).exp() * c1
        };
        let fq = if c2 == 0.0 {
            0.0
        } else {
            (q.ln_scale - base).exp() * c2
        };
        let y = fp * p.y + fq * q.y;
        let dy = fp * p.dy + fq * q.dy;
        let round = 4.0 * EPS;
        Self {
            y,
            dy,
            ln_scale: base,
            err: fp.abs() * p.err
                + fq.abs() * q.err
                + round * (fp * p.y).abs().max((fq * q.y).abs()),
            derr: fp.abs() * p.derr
                + fq.abs() * q.derr
                + round * (fp * p.dy).abs().max((fq * q.dy).abs()),
        }
    }

    /// Flips the sign of the derivative (reflection x -> -x).
    pub fn reflected(self) -> Self {
        Self {
            dy: -self.dy,
            ..self
        }
    }

    /// Unscaled (value, derivative, err, derr).
    pub fn finish(self) -> Result<(f64, f64, f64, f64)> {
        let direct = self.ln_scale.exp();
        let s = if direct.is_normal() && (self.y * direct).is_finite() {
            self
        } else {
            self.normalized()
        };
        let f = s.ln_scale.exp();
        if !f.is_finite() {
            return Err(PcfError::Range(format!(
                "result overflows double precision (log magnitude {:.3})",
                s.ln_scale
            )));
        }
        // exp of a large exponent amplifies its rounding error
        let exp_err = EPS * (1.0 + s.ln_scale.abs());
        let value = s.y * f;
        let derivative = s.dy * f;
        Ok((
            value,
            derivative,
            s.err * f + exp_err * value.abs(),
            s.derr * f + exp_err * derivative.abs(),
        ))
    }
}
