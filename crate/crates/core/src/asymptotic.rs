//! Large-argument expansions of U, V and W with optimal truncation.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::cgamma::{gamma_arg, ComplexValue};
use crate::dispatch::MAX_ABS_A;
use crate::error::{ensure_finite, PcfError, Result};
use crate::eval::{EvalResult, Method, Regime, Scaled};
use crate::numeric::{quarter_square_mod_2pi, wrap_pi, EPS};

/// Hard cap on the number of terms kept from a divergent expansion.
pub const MAX_ASYMPTOTIC_TERMS: usize = 20;

/// Truncated bracket sums and their x-derivatives.
///
/// For U and V only `s1`/`ds1` are used; W uses both parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticTerms {
    pub s1: f64,
    pub s2: f64,
    pub ds1: f64,
    pub ds2: f64,
    pub terms_used: usize,
    pub first_omitted: f64,
    /// Error bound for the truncated sum: the first omitted term, enlarged by
    /// the geometric tail when the term cap stopped the summation early.
    pub tail_estimate: f64,
}

/// Sum of magnitudes of the omitted terms while they keep shrinking.
fn tail_sum(first_omitted: f64, ratio: impl Fn(usize) -> f64, from: usize) -> f64 {
    let mut t = first_omitted;
    let mut sum = t;
    for j in from..from + 40 {
        let r = ratio(j);
        if r >= 1.0 {
            break;
        }
        t *= r;
        sum += t;
    }
    sum
}

/// Amplitude and phase data of the oscillatory W expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WAsymptoticContext {
    pub k: f64,
    pub k_inv: f64,
    /// x^2/4 - a ln x + pi/4 + phi/2, reduced to (-pi, pi].
    pub gamma_phase: f64,
    pub phi: f64,
}

#[derive(Clone, Copy)]
enum RealKind {
    U,
    V,
}

fn check_x(x: f64) -> Result<()> {
    ensure_finite("x", x)?;
    if x <= 0.0 {
        return Err(PcfError::Domain(format!(
            "large-argument expansion needs x > 0, got {x}"
        )));
    }
    Ok(())
}

fn too_small(x: f64, a: f64, t1: f64) -> PcfError {
    PcfError::Regime(format!(
        "x = {x} is too small for the large-argument expansion at a = {a} (first correction {t1:.3e})"
    ))
}

fn real_bracket(a: f64, x: f64, kind: RealKind) -> Result<AsymptoticTerms> {
    let x2 = x * x;
    let ratio = |k: f64| match kind {
        RealKind::U => -(a + 0.5 + 2.0 * k) * (a + 1.5 + 2.0 * k) / (2.0 * (k + 1.0) * x2),
        RealKind::V => (a - 0.5 - 2.0 * k) * (a - 1.5 - 2.0 * k) / (2.0 * (k + 1.0) * x2),
    };
    let mut t = 1.0;
    let mut sum = 1.0;
    let mut dsum = 0.0;
    let mut used = 1;
    let (first_omitted, tail_estimate) = loop {
        let k = (used - 1) as f64;
        let next = t * ratio(k);
        if used == 1 && next.abs() >= 1.0 {
            return Err(too_small(x, a, next));
        }
        if next == 0.0 {
            break (0.0, 0.0);
        }
        if used == MAX_ASYMPTOTIC_TERMS {
            let tail = tail_sum(next.abs(), |j| ratio(j as f64).abs(), used);
            break (next.abs(), tail);
        }
        // small factors (a +/- 1/2 + 2k near 0) can dip the terms early
        let beyond_zeros = 2.0 * k > a.abs() + 2.0;
        if next.abs() >= t.abs() && beyond_zeros {
            break (next.abs(), next.abs());
        }
        sum += next;
        dsum += -2.0 * (k + 1.0) / x * next;
        t = next;
        used += 1;
    };
    Ok(AsymptoticTerms {
        s1: sum,
        s2: 0.0,
        ds1: dsum,
        ds2: 0.0,
        terms_used: used,
        first_omitted,
        tail_estimate,
    })
}

/// U(a,x) for x > 0 in scaled form.
pub(crate) fn u_scaled(a: f64, x: f64) -> Result<Scaled> {
    ensure_finite("a", a)?;
    check_x(x)?;
    let b = real_bracket(a, x, RealKind::U)?;
    let lx = x.ln();
    let ln_scale = -(a + 0.5) * lx - 0.25 * x * x;
    let log_slope = -0.5 * x - (a + 0.5) / x;
    let err = b.tail_estimate + EPS * (4.0 + 2.0 * ln_scale.abs()) * b.s1.abs();
    Ok(Scaled {
        y: b.s1,
        dy: b.ds1 + b.s1 * log_slope,
        ln_scale,
        err,
        derr: err * (log_slope.abs() + 1.0),
    })
}

/// V(a,x) for x > 0 in scaled form.
pub(crate) fn v_scaled(a: f64, x: f64) -> Result<Scaled> {
    ensure_finite("a", a)?;
    check_x(x)?;
    let b = real_bracket(a, x, RealKind::V)?;
    let lx = x.ln();
    let ln_scale = 0.5 * (2.0 / PI).ln() + (a - 0.5) * lx + 0.25 * x * x;
    let log_slope = 0.5 * x + (a - 0.5) / x;
    let err = b.tail_estimate + EPS * (4.0 + 2.0 * ln_scale.abs()) * b.s1.abs();
    Ok(Scaled {
        y: b.s1,
        dy: b.ds1 + b.s1 * log_slope,
        ln_scale,
        err,
        derr: err * (log_slope.abs() + 1.0),
    })
}

/// Bracket of the U expansion (exposed for diagnostics).
pub fn u_terms(a: f64, x: f64) -> Result<AsymptoticTerms> {
    ensure_finite("a", a)?;
    check_x(x)?;
    real_bracket(a, x, RealKind::U)
}

/// Bracket of the V expansion.
pub fn v_terms(a: f64, x: f64) -> Result<AsymptoticTerms> {
    ensure_finite("a", a)?;
    check_x(x)?;
    real_bracket(a, x, RealKind::V)
}

fn asym_result(s: Scaled) -> Result<EvalResult> {
    EvalResult::from_scaled(s, Regime::LargeArgAsymptotic, Method::AsymptoticExpansion)
}

/// U(a,x) for large positive x.
pub fn pulx(a: f64, x: f64) -> Result<EvalResult> {
    asym_result(u_scaled(a, x)?)
}

/// U'(a,x) for large positive x.
pub fn dpulx(a: f64, x: f64) -> Result<f64> {
    Ok(pulx(a, x)?.derivative)
}

/// V(a,x) for large positive x.
pub fn pvlx(a: f64, x: f64) -> Result<EvalResult> {
    asym_result(v_scaled(a, x)?)
}

/// V'(a,x) for large positive x.
pub fn dpvlx(a: f64, x: f64) -> Result<f64> {
    Ok(pvlx(a, x)?.derivative)
}

/// k = sqrt(1+e^{2 pi a}) - e^{pi a} and its reciprocal, each without cancellation.
pub fn k_pair(a: f64) -> (f64, f64) {
    if a >= 0.0 {
        let t = (-PI * a).exp();
        let r = 1.0 + t.hypot(1.0);
        (t / r, r / t)
    } else {
        let t = (PI * a).exp();
        let r = t.hypot(1.0) + t;
        (1.0 / r, r)
    }
}

/// k, 1/k, phi = arg Gamma(1/2 + ia) and the reduced phase gamma at |x|.
pub fn w_context(a: f64, x: f64) -> Result<WAsymptoticContext> {
    ensure_finite("a", a)?;
    check_x(x)?;
    if a.abs() > MAX_ABS_A {
        return Err(PcfError::Range(format!(
            "|a| = {} exceeds the supported bound {MAX_ABS_A}",
            a.abs()
        )));
    }
    let (k, k_inv) = k_pair(a);
    let phi = gamma_arg(ComplexValue::new(0.5, a))?;
    let rest = wrap_pi(FRAC_PI_4 + 0.5 * phi - a * x.ln());
    let gamma_phase = wrap_pi(quarter_square_mod_2pi(x) + rest);
    Ok(WAsymptoticContext {
        k,
        k_inv,
        gamma_phase,
        phi,
    })
}

/// (u_m, v_m) = Gamma(m + ia + 1/2)/Gamma(ia + 1/2) as a finite product.
pub fn um_vm(a: f64, m: i64) -> Result<ComplexValue> {
    ensure_finite("a", a)?;
    if m <= 0 || m % 2 != 0 {
        return Err(PcfError::Domain(format!(
            "m must be a positive even integer, got {m}"
        )));
    }
    let mut p = Complex64::new(1.0, 0.0);
    for j in 0..m {
        p *= Complex64::new(j as f64 + 0.5, a);
    }
    Ok(p)
}

/// s1 + i s2 = sum_r (-i)^r (u_{2r} + i v_{2r}) / (r! 2^r x^{2r}), optimally truncated.
pub fn w_terms(a: f64, x: f64) -> Result<AsymptoticTerms> {
    ensure_finite("a", a)?;
    check_x(x)?;
    let x2 = x * x;
    let minus_i = Complex64::new(0.0, -1.0);
    let mut c = Complex64::new(1.0, 0.0);
    let mut s = c;
    let mut ds = Complex64::new(0.0, 0.0);
    let mut used = 1;
    let ratio = |r: f64| {
        Complex64::new(2.0 * r - 1.5, a).norm() * Complex64::new(2.0 * r - 0.5, a).norm()
            / (2.0 * r * x2)
    };
    let (first_omitted, tail_estimate) = loop {
        let r = used as f64;
        let f = Complex64::new(2.0 * r - 1.5, a) * Complex64::new(2.0 * r - 0.5, a);
        let next = c * minus_i * f / (2.0 * r * x2);
        if used == 1 && next.norm() >= 1.0 {
            return Err(too_small(x, a, next.norm()));
        }
        if next.norm() >= c.norm() {
            break (next.norm(), next.norm());
        }
        if used == MAX_ASYMPTOTIC_TERMS {
            break (
                next.norm(),
                tail_sum(next.norm(), |j| ratio(j as f64), used + 1),
            );
        }
        s += next;
        ds += next * (-2.0 * r / x);
        c = next;
        used += 1;
    };
    Ok(AsymptoticTerms {
        s1: s.re,
        s2: s.im,
        ds1: ds.re,
        ds2: ds.im,
        terms_used: used,
        first_omitted,
        tail_estimate,
    })
}

/// W(a,x) for large |x| of either sign in scaled form.
pub(crate) fn w_scaled(a: f64, x: f64) -> Result<Scaled> {
    ensure_finite("x", x)?;
    if x == 0.0 {
        return Err(PcfError::Domain(
            "large-argument expansion needs x != 0".into(),
        ));
    }
    let ax = x.abs();
    let ctx = w_context(a, ax)?;
    let t = w_terms(a, ax)?;
    let (sg, cg) = ctx.gamma_phase.sin_cos();
    let dgamma = 0.5 * ax - a / ax;
    let phase_err = EPS * (8.0 + (a * ax.ln()).abs() + 0.25 * ax * ax * EPS);
    let (y, dy, amp) = if x > 0.0 {
        let amp = (2.0 * ctx.k / ax).sqrt();
        let f = t.s1 * cg - t.s2 * sg;
        let g = t.s1 * sg + t.s2 * cg;
        let df = -f / (2.0 * ax) + t.ds1 * cg - t.ds2 * sg - dgamma * g;
        (amp * f, amp * df, amp)
    } else {
        let amp = (2.0 * ctx.k_inv / ax).sqrt();
        let f = t.s1 * sg + t.s2 * cg;
        let g = t.s1 * cg - t.s2 * sg;
        let df = -f / (2.0 * ax) + t.ds1 * sg + t.ds2 * cg + dgamma * g;
        // d/dx W(a, -|x|) = -d/d|x|
        (amp * f, -amp * df, amp)
    };
    let err = amp * (t.tail_estimate + phase_err + 4.0 * EPS);
    Ok(Scaled::plain(y, dy, err, err * (dgamma.abs() + 1.0 / ax)))
}

/// W(a,x) for large |x|; negative x selects the W(a,-|x|) branch.
pub fn pwlx(a: f64, x: f64) -> Result<EvalResult> {
    asym_result(w_scaled(a, x)?)
}

/// W'(a,x) for large |x| of either sign.
pub fn dpwlx(a: f64, x: f64) -> Result<f64> {
    Ok(pwlx(a, x)?.derivative)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_terminates_at_half_odd_a() {
        let x: f64 = 10.0;
        let r = pulx(-0.5, x).unwrap();
        assert_eq!(r.value, (-25.0f64).exp());
        assert!((r.derivative - (-5.0 * (-25.0f64).exp())).abs() <= 1e-15 * 5.0 * (-25.0f64).exp());
        let r = pulx(-1.5, x).unwrap();
        assert!((r.value / (10.0 * (-25.0f64).exp()) - 1.0).abs() < 1e-14);
        assert!((r.derivative / (-49.0 * (-25.0f64).exp()) - 1.0).abs() < 1e-14);
        let r = pvlx(0.5, x).unwrap();
        let base = (2.0 / PI).sqrt() * 25f64.exp();
        assert!((r.value / base - 1.0).abs() < 1e-14);
        assert!((r.derivative / (5.0 * base) - 1.0).abs() < 1e-14);
        let r = pvlx(1.5, x).unwrap();
        assert!((r.derivative / (51.0 * base) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn small_argument_is_regime_error() {
        assert!(matches!(pulx(5.0, 1.0), Err(PcfError::Regime(_))));
        assert!(matches!(pwlx(5.0, 1.0), Err(PcfError::Regime(_))));
        assert!(matches!(pulx(1.0, -3.0), Err(PcfError::Domain(_))));
        assert!(matches!(pvlx(1.0, 0.0), Err(PcfError::Domain(_))));
    }

    #[test]
    fn um_vm_products() {
        assert_eq!(um_vm(0.0, 2).unwrap(), Complex64::new(0.75, 0.0));
        assert_eq!(um_vm(0.0, 4).unwrap(), Complex64::new(105.0 / 16.0, 0.0));
        assert_eq!(um_vm(1.0, 2).unwrap(), Complex64::new(-0.25, 2.0));
        assert!(um_vm(1.0, 3).is_err());
        assert!(um_vm(1.0, 0).is_err());
    }

    #[test]
    fn k_at_zero_and_identity() {
        let (k, ki) = k_pair(0.0);
        assert!((k - (2f64.sqrt() - 1.0)).abs() < 1e-16);
        assert!((ki - (2f64.sqrt() + 1.0)).abs() < 1e-15);
        for i in 0..=100 {
            let a = -10.0 + 0.2 * i as f64;
            let (k, ki) = k_pair(a);
            assert!((k * ki - 1.0).abs() <= 1e-13, "a={a}");
        }
    }

    #[test]
    fn context_at_zero_a() {
        let c = w_context(0.0, 10.0).unwrap();
        assert_eq!(c.phi, 0.0);
        let want = wrap_pi(25.0 + FRAC_PI_4);
        assert!((c.gamma_phase - want).abs() < 1e-14);
        assert!(matches!(w_context(30.0, 10.0), Err(PcfError::Range(_))));
    }

    #[test]
    fn w_leading_order_at_zero_a() {
        let x = 40.0;
        let r = pwlx(0.0, x).unwrap();
        let k = 2f64.sqrt() - 1.0;
        let lead = (2.0 * k / x).sqrt() * wrap_pi(400.0 + FRAC_PI_4).cos();
        assert!((r.value - lead).abs() < 2e-3 * (2.0 * k / x).sqrt());
    }

    #[test]
    fn first_omitted_shrinks_with_x() {
        for a in [-2.0, 0.0, 2.0] {
            let mut last = f64::INFINITY;
            for x in [8.0, 12.0, 16.0, 20.0] {
                let f = u_terms(a, x).unwrap().first_omitted;
                assert!(f < last, "a={a} x={x}");
                last = f;
            }
        }
    }
}
