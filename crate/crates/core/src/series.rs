//! Power series for the fundamental solution pair about x = 0.
//!
//! Both Weber equations share the series y1 = sum A_n x^n/n! (even n,
//! A_0 = 1) and y2 (odd n, A_1 = 1) with A_{n+2} = a A_n +/- n(n-1)/4 A_{n-2};
//! the plus sign belongs to y'' = (x^2/4 + a) y, the minus sign to
//! y'' = (a - x^2/4) y. Terms are generated on the fly in the scaled form
//! T_n = A_n x^n/n!, which obeys
//!
//! T_{n+2} = (a x^2 T_n +/- x^4 T_{n-2}/4) / ((n+1)(n+2)).
//!
//! Terms and sums are carried in double-double, so cancellation between terms
//! costs digits only below the final rounding.

use serde::Serialize;

use crate::error::{ensure_finite, PcfError, Result};
use crate::numeric::DoubleDouble;

/// Maximum number of powers of x summed before giving up.
pub const MAX_TERMS: usize = 400;

/// Relative size below which a term no longer contributes.
pub const TERM_TOLERANCE: f64 = 1e-17;

/// Selects the sign of the n(n-1)/4 coefficient term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeriesSign {
    /// U/V equation: y'' - (x^2/4 + a) y = 0.
    Plus,
    /// W equation: y'' + (x^2/4 - a) y = 0.
    Minus,
}

impl SeriesSign {
    fn factor(self) -> f64 {
        match self {
            SeriesSign::Plus => 0.25,
            SeriesSign::Minus => -0.25,
        }
    }
}

/// y1, y2 and their x-derivatives from one summation.
///
/// The `abs_*` fields hold the sums of term magnitudes; their ratio to the
/// corresponding value is the cancellation factor of that sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult {
    pub y1: f64,
    pub y2: f64,
    pub dy1: f64,
    pub dy2: f64,
    pub terms_used: usize,
    pub trunc_estimate: f64,
    pub abs_y1: f64,
    pub abs_y2: f64,
    pub abs_dy1: f64,
    pub abs_dy2: f64,
}

/// Coefficients A_0..A_{count-1} of the x^n/n! expansion (even entries for
/// y1, odd entries for y2).
pub fn coefficients(a: f64, sign: SeriesSign, count: usize) -> Vec<f64> {
    let s = sign.factor();
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        let v = match n {
            0 | 1 => 1.0,
            2 | 3 => a,
            _ => {
                let m = (n - 2) as f64;
                a * out[n - 2] + s * m * (m - 1.0) * out[n - 4]
            }
        };
        out.push(v);
    }
    out
}

/// One parity of the series: rolling pair of scaled terms plus sums, all
/// carried in double-double.
struct ParitySum {
    prev: DoubleDouble,
    cur: DoubleDouble,
    n: usize,
    value: DoubleDouble,
    deriv: DoubleDouble,
    abs_value: f64,
    abs_deriv: f64,
    quiet_run: u8,
}

impl ParitySum {
    fn new(first: f64, first_deriv: f64, parity: usize) -> Self {
        Self {
            prev: DoubleDouble::ZERO,
            cur: first.into(),
            n: parity,
            value: first.into(),
            deriv: first_deriv.into(),
            abs_value: first.abs(),
            abs_deriv: first_deriv.abs(),
            quiet_run: 0,
        }
    }

    /// Advances to T_{n+2}; returns (T, dT).
    fn advance(
        &mut self,
        ax2: DoubleDouble,
        sx4: DoubleDouble,
        x: f64,
    ) -> (DoubleDouble, DoubleDouble) {
        let n = self.n as f64;
        let next = (ax2 * self.cur + sx4 * self.prev) / ((n + 1.0) * (n + 2.0));
        self.prev = self.cur;
        self.cur = next;
        self.n += 2;
        let d = next * self.n as f64 / x;
        (next, d)
    }

    fn push(&mut self, t: DoubleDouble, d: DoubleDouble) {
        self.value = self.value + t;
        self.deriv = self.deriv + d;
        self.abs_value += t.hi.abs();
        self.abs_deriv += d.hi.abs();
        let small = t.hi.abs() <= TERM_TOLERANCE * (1.0 + self.value.hi.abs())
            && d.hi.abs() <= TERM_TOLERANCE * (1.0 + self.deriv.hi.abs());
        self.quiet_run = if small { self.quiet_run + 1 } else { 0 };
    }
}

/// y1, y2, y1', y2' before rounding to double.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSums {
    pub y1: DoubleDouble,
    pub y2: DoubleDouble,
    pub dy1: DoubleDouble,
    pub dy2: DoubleDouble,
}

/// Sums y1, y2 and their derivatives at (a, x).
pub fn sum_y12(a: f64, x: f64, sign: SeriesSign) -> Result<SeriesResult> {
    sum_y12_extended(a, x, sign).map(|(r, _)| r)
}

pub(crate) fn sum_y12_extended(
    a: f64,
    x: f64,
    sign: SeriesSign,
) -> Result<(SeriesResult, SeriesSums)> {
    ensure_finite("a", a)?;
    ensure_finite("x", x)?;
    if x == 0.0 {
        let one = DoubleDouble::new(1.0);
        let sums = SeriesSums {
            y1: one,
            y2: DoubleDouble::ZERO,
            dy1: DoubleDouble::ZERO,
            dy2: one,
        };
        let r = SeriesResult {
            y1: 1.0,
            y2: 0.0,
            dy1: 0.0,
            dy2: 1.0,
            terms_used: 2,
            trunc_estimate: 0.0,
            abs_y1: 1.0,
            abs_y2: 0.0,
            abs_dy1: 0.0,
            abs_dy2: 1.0,
        };
        return Ok((r, sums));
    }
    let x2 = DoubleDouble::product(x, x);
    let ax2 = x2 * a;
    let sx4 = x2 * x2 * sign.factor();
    let x2 = x2.hi;

    let mut even = ParitySum::new(1.0, 0.0, 0);
    let mut odd = ParitySum::new(x, 1.0, 1);
    let mut terms = 2;

    let converged = loop {
        if terms + 2 > MAX_TERMS {
            break false;
        }
        let (te, de) = even.advance(ax2, sx4, x);
        let (to, d_o) = odd.advance(ax2, sx4, x);
        terms += 2;
        if !(te.hi.is_finite() && to.hi.is_finite() && de.hi.is_finite() && d_o.hi.is_finite()) {
            break false;
        }
        even.push(te, de);
        odd.push(to, d_o);
        // only stop once the term ratio is safely below one
        let n = even.n as f64;
        let past_peak = n * n > x2 * (a.abs() + a.hypot(n));
        if past_peak && even.quiet_run >= 2 && odd.quiet_run >= 2 {
            break true;
        }
    };

    let sums = SeriesSums {
        y1: even.value,
        y2: odd.value,
        dy1: even.deriv,
        dy2: odd.deriv,
    };
    let mut result = SeriesResult {
        y1: even.value.to_f64(),
        y2: odd.value.to_f64(),
        dy1: even.deriv.to_f64(),
        dy2: odd.deriv.to_f64(),
        terms_used: terms,
        trunc_estimate: 0.0,
        abs_y1: even.abs_value,
        abs_y2: odd.abs_value,
        abs_dy1: even.abs_deriv,
        abs_dy2: odd.abs_deriv,
    };
    if !converged {
        result.trunc_estimate = f64::INFINITY;
        return Err(PcfError::Convergence {
            partial: Box::new(result),
        });
    }
    let (te, de) = even.advance(ax2, sx4, x);
    let (to, d_o) = odd.advance(ax2, sx4, x);
    result.trunc_estimate = te
        .hi
        .abs()
        .max(to.hi.abs())
        .max(de.hi.abs())
        .max(d_o.hi.abs());
    Ok((result, sums))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_values() {
        for a in [-3.0, 0.0, 2.5] {
            for sign in [SeriesSign::Plus, SeriesSign::Minus] {
                let r = sum_y12(a, 0.0, sign).unwrap();
                assert_eq!((r.y1, r.y2, r.dy1, r.dy2), (1.0, 0.0, 0.0, 1.0));
            }
        }
    }

    #[test]
    fn eighth_coefficient_matches_printed_polynomial() {
        for a in [-2.0, 0.5, 3.0] {
            let plus = coefficients(a, SeriesSign::Plus, 10);
            let minus = coefficients(a, SeriesSign::Minus, 10);
            let a2 = a * a;
            assert!((plus[8] - (a2 * a2 + 11.0 * a2 + 3.75)).abs() < 1e-12);
            assert!((minus[8] - (a2 * a2 - 11.0 * a2 + 3.75)).abs() < 1e-12);
        }
    }

    #[test]
    fn printed_coefficients_through_ninth_power() {
        let a: f64 = 1.7;
        let (a2, a3, a4) = (a * a, a * a * a, a * a * a * a);
        let plus = coefficients(a, SeriesSign::Plus, 10);
        let minus = coefficients(a, SeriesSign::Minus, 10);
        let want_plus = [
            1.0,
            1.0,
            a,
            a,
            a2 + 0.5,
            a2 + 1.5,
            a3 + 3.5 * a,
            a3 + 6.5 * a,
            a4 + 11.0 * a2 + 3.75,
            a4 + 17.0 * a2 + 15.75,
        ];
        let want_minus = [
            1.0,
            1.0,
            a,
            a,
            a2 - 0.5,
            a2 - 1.5,
            a3 - 3.5 * a,
            a3 - 6.5 * a,
            a4 - 11.0 * a2 + 3.75,
            a4 - 17.0 * a2 + 15.75,
        ];
        for n in 0..10 {
            assert!((plus[n] - want_plus[n]).abs() < 1e-12, "plus n={n}");
            assert!((minus[n] - want_minus[n]).abs() < 1e-12, "minus n={n}");
        }
    }

    #[test]
    fn unit_argument_reference_values() {
        // 40-digit summation of the recurrences
        let p = sum_y12(0.0, 1.0, SeriesSign::Plus).unwrap();
        assert!((p.y1 - 1.020_926_515_616_959_3).abs() < 2e-16, "{}", p.y1);
        let m = sum_y12(0.0, 1.0, SeriesSign::Minus).unwrap();
        assert!((m.y1 - 0.979_259_496_654_777).abs() < 2e-16, "{}", m.y1);
    }

    #[test]
    fn term_cap_reports_partial_result() {
        match sum_y12(1.0, 40.0, SeriesSign::Plus) {
            Err(PcfError::Convergence { partial }) => {
                assert!(partial.terms_used <= MAX_TERMS);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn non_finite_input_is_domain_error() {
        assert!(matches!(
            sum_y12(f64::NAN, 1.0, SeriesSign::Plus),
            Err(PcfError::Domain(_))
        ));
    }
}
