//! Closed forms: half-odd a (exponentials, erfc), integer a (fractional-order
//! Bessel functions of argument x^2/4) and W at a = 0 (Bessel J).

use std::f64::consts::{FRAC_2_SQRT_PI, PI};

use serde::Serialize;

use crate::cgamma::recip_gamma_real;
use crate::error::{ensure_finite, PcfError, Result};
use crate::numeric::{cospi, sinpi, CompensatedSum, EPS};

const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;
const SQRT_PI_OVER_2: f64 = 1.253_314_137_315_500_3;

/// Largest Bessel argument for which the ascending series is trusted.
pub const BESSEL_MAX_Z: f64 = 30.0;

/// exp(-x^2) with the rounding error of x^2 compensated.
fn exp_neg_square(x: f64) -> f64 {
    let p = x * x;
    let e = x.mul_add(x, -p);
    (-p).exp() * (1.0 - e)
}

/// erf by its Maclaurin series, for |x| < 1/2.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= -x2 / n;
        let t = term / (2.0 * n + 1.0);
        sum += t;
        if t.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    FRAC_2_SQRT_PI * sum
}

/// exp(x^2) erfc(x) for x >= 1/2 by the Laplace continued fraction (modified Lentz).
fn erfcx_cf(x: f64) -> f64 {
    // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..5000 {
        let an = 0.5 * k as f64;
        d = x + an * d;
        d = if d == 0.0 { tiny } else { d };
        c = x + an / c;
        c = if c == 0.0 { tiny } else { c };
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() <= 1e-16 {
            break;
        }
    }
    1.0 / (f * PI.sqrt())
}

/// Complementary error function.
pub fn erfc_real(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.abs() < 0.5 {
        return 1.0 - erf_series(x);
    }
    if x < 0.0 {
        return 2.0 - erfc_real(-x);
    }
    if x > 27.3 {
        return 0.0;
    }
    exp_neg_square(x) * erfcx_cf(x)
}

/// exp(x^2/4) erfc(x/sqrt 2) without overflow for large positive x.
fn scaled_erfc_half(x: f64) -> f64 {
    let z = x / std::f64::consts::SQRT_2;
    if z >= 0.5 {
        // exp(x^2/4) erfc(z) = exp(-x^2/4) erfcx(z)
        exp_neg_square(0.5 * x) * erfcx_cf(z)
    } else {
        (0.25 * x * x).exp() * erfc_real(z)
    }
}

/// Probabilists' Hermite polynomial He_n and its derivative, n <= 4.
fn hermite(n: usize, x: f64, sign: f64) -> (f64, f64) {
    // sign = -1 gives He_n; sign = +1 gives the all-plus companion used by V
    let x2 = x * x;
    match n {
        0 => (1.0, 0.0),
        1 => (x, 1.0),
        2 => (x2 + sign, 2.0 * x),
        3 => (x * (x2 + 3.0 * sign), 3.0 * x2 + 3.0 * sign),
        _ => (
            x2 * x2 + 6.0 * sign * x2 + 3.0,
            4.0 * x2 * x + 12.0 * sign * x,
        ),
    }
}

fn half_odd_index(a: f64) -> Option<i64> {
    let t = a - 0.5;
    (t == t.round()).then_some(t as i64)
}

/// U(a,x) and U'(a,x) for a in {-4.5, ..., 2.5} (half-odd).
pub fn u_halfodd(a: f64, x: f64) -> Result<(f64, f64)> {
    ensure_finite("x", x)?;
    let n = half_odd_index(a)
        .filter(|n| (-5..=2).contains(n))
        .ok_or_else(|| {
            PcfError::Domain(format!(
                "U closed form needs half-odd a in [-4.5, 2.5], got {a}"
            ))
        })?;
    let g = (-0.25 * x * x).exp();
    if n < 0 {
        let (p, dp) = hermite((-n - 1) as usize, x, -1.0);
        return Ok((p * g, (dp - 0.5 * x * p) * g));
    }
    let u05 = SQRT_PI_OVER_2 * scaled_erfc_half(x);
    let du05 = 0.5 * x * u05 - g;
    Ok(match n {
        0 => (u05, du05),
        1 => (-x * u05 + g, -(0.5 * x * x + 1.0) * u05 + 0.5 * x * g),
        _ => (
            0.5 * (x * x + 1.0) * u05 - 0.5 * x * g,
            0.25 * x * (x * x + 5.0) * u05 - (0.25 * x * x + 1.0) * g,
        ),
    })
}

/// V(a,x) and V'(a,x) for a in {0.5, ..., 4.5} (half-odd).
pub fn v_halfodd(a: f64, x: f64) -> Result<(f64, f64)> {
    ensure_finite("x", x)?;
    let n = half_odd_index(a)
        .filter(|n| (0..=4).contains(n))
        .ok_or_else(|| {
            PcfError::Domain(format!(
                "V closed form needs half-odd a in [0.5, 4.5], got {a}"
            ))
        })?;
    let g = SQRT_2_OVER_PI * (0.25 * x * x).exp();
    let (p, dp) = hermite(n as usize, x, 1.0);
    Ok((p * g, (dp + 0.5 * x * p) * g))
}

/// Bessel-type function selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BesselKind {
    J,
    I,
    K,
    /// (I_{-nu} + I_nu)/cos(pi nu).
    GothicI,
}

fn check_order(nu: f64) -> Result<()> {
    ensure_finite("nu", nu)?;
    let q = 4.0 * nu;
    if q != q.round() || (q as i64) % 2 == 0 || nu.abs() > 2.25 {
        return Err(PcfError::Domain(format!(
            "Bessel order must be an odd multiple of 1/4 with |nu| <= 9/4, got {nu}"
        )));
    }
    Ok(())
}

/// Ascending series sum_k (-+1)^k (z/2)^{nu+2k} / (k! Gamma(nu+k+1)).
fn ascending(nu: f64, z: f64, alternating: bool) -> f64 {
    let h = 0.5 * z;
    let q = if alternating { -h * h } else { h * h };
    let mut term = h.powf(nu) * recip_gamma_real(nu + 1.0);
    let mut sum = CompensatedSum::new(term);
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (nu + k));
        sum.add(term);
        if term.abs() <= 1e-18 * sum.value().abs() && k > h {
            break;
        }
    }
    sum.value()
}

/// K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt by the trapezoidal rule.
fn k_integral(nu: f64, z: f64) -> f64 {
    // the integrand is entire and decays doubly exponentially, so the
    // trapezoidal rule converges geometrically in 1/h
    let step = 0.125;
    let scale = (-z).exp();
    let mut sum = 0.5 * scale;
    let mut t: f64 = 0.0;
    loop {
        t += step;
        let v = (-z * t.cosh()).exp() * (nu * t).cosh();
        sum += v;
        if v <= 1e-18 * sum {
            break;
        }
    }
    sum * step
}

/// J, I, K or GothicI of quarter-odd order nu at z in (0, 30].
pub fn bessel_series(kind: BesselKind, nu: f64, z: f64) -> Result<f64> {
    check_order(nu)?;
    ensure_finite("z", z)?;
    if z <= 0.0 {
        return Err(PcfError::Domain(format!(
            "Bessel argument must be positive, got {z}"
        )));
    }
    if z > BESSEL_MAX_Z {
        return Err(PcfError::Range(format!(
            "Bessel argument {z} exceeds the series bound {BESSEL_MAX_Z}"
        )));
    }
    Ok(match kind {
        BesselKind::J => ascending(nu, z, true),
        BesselKind::I => ascending(nu, z, false),
        BesselKind::K => {
            let nu = nu.abs();
            if z <= 2.0 {
                0.5 * PI * (ascending(-nu, z, false) - ascending(nu, z, false)) / sinpi(nu)
            } else {
                k_integral(nu, z)
            }
        }
        BesselKind::GothicI => {
            let nu = nu.abs();
            (ascending(-nu, z, false) + ascending(nu, z, false)) / cospi(nu)
        }
    })
}

/// U(a,x) and V(a,x) for integer a in [-2, 2], x > 0.
pub fn uv_integer_a(a: i32, x: f64) -> Result<(f64, f64)> {
    ensure_finite("x", x)?;
    if x <= 0.0 {
        return Err(PcfError::Domain(format!(
            "integer-a closed forms need x > 0, got {x}"
        )));
    }
    let z = 0.25 * x * x;
    let k = |nu| bessel_series(BesselKind::K, nu, z);
    let gi = |nu| bessel_series(BesselKind::GothicI, nu, z);
    let (k1, k3, k5) = (k(0.25)?, k(0.75)?, k(1.25)?);
    let (g1, g3, g5) = (gi(0.25)?, gi(0.75)?, gi(1.25)?);
    let h = 0.5 * x;
    let rp = 1.0 / PI.sqrt();
    Ok(match a {
        0 => (rp * h.sqrt() * k1, 0.5 * h.sqrt() * g1),
        1 => (
            2.0 * rp * h.powf(1.5) * (k3 - k1),
            0.5 * h.powf(1.5) * (g1 - g3),
        ),
        2 => (
            4.0 / 3.0 * rp * h.powf(2.5) * (2.0 * k1 - 3.0 * k3 + k5),
            0.5 * h.powf(2.5) * (2.0 * g1 - 3.0 * g3 + g5),
        ),
        -1 => (rp * h.powf(1.5) * (k1 + k3), h.powf(1.5) * (g1 + g3)),
        -2 => (
            rp * h.powf(2.5) * (2.0 * k1 + 3.0 * k3 - k5),
            2.0 / 3.0 * h.powf(2.5) * (2.0 * g1 + 3.0 * g3 - g5),
        ),
        _ => {
            return Err(PcfError::Domain(format!(
                "integer-a closed forms cover a in [-2, 2], got {a}"
            )))
        }
    })
}

/// W(0, +-x) and W'(0, +-x) for x > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WZeroA {
    pub w_pos: f64,
    pub w_neg: f64,
    /// d/dx W(0,x).
    pub dw_pos: f64,
    /// W'(0,-x): derivative with respect to the argument, taken at -x.
    pub dw_neg: f64,
}

/// W(0, +-x) and derivatives from Bessel J of argument x^2/4.
pub fn w_zero_a(x: f64) -> Result<WZeroA> {
    ensure_finite("x", x)?;
    if x <= 0.0 {
        return Err(PcfError::Domain(format!(
            "W(0, x) closed form needs x > 0, got {x}"
        )));
    }
    let z = 0.25 * x * x;
    let j = |nu| bessel_series(BesselKind::J, nu, z);
    let (jm1, jp1, jm3, jp3) = (j(-0.25)?, j(0.25)?, j(-0.75)?, j(0.75)?);
    let c = (-1.25f64).exp2() * (PI * x).sqrt();
    let d = (-2.25f64).exp2() * x * (PI * x).sqrt();
    Ok(WZeroA {
        w_pos: c * (jm1 - jp1),
        w_neg: c * (jm1 + jp1),
        dw_pos: -d * (jp3 + jm3),
        // d/dx [W(0,-x)] = -d (J_{3/4} - J_{-3/4}); flip for the argument derivative
        dw_neg: d * (jp3 - jm3),
    })
}

/// Closed-form U, V or W where one exists: (value, derivative, error estimate).
pub(crate) fn closed_form(
    f: crate::eval::Function,
    a: f64,
    x: f64,
) -> Option<Result<(f64, f64, f64)>> {
    use crate::eval::Function;
    let est = |v: f64, d: f64, pieces: f64| (v, d, 16.0 * EPS * pieces.max(v.abs()));
    match f {
        Function::U => {
            half_odd_index(a).filter(|n| (-5..=2).contains(n))?;
            Some(u_halfodd(a, x).map(|(v, d)| {
                let g = (-0.25 * x * x).exp();
                est(v, d, g * (1.0 + x * x) * (1.0 + x.abs()))
            }))
        }
        Function::V => {
            half_odd_index(a).filter(|n| (0..=4).contains(n))?;
            Some(v_halfodd(a, x).map(|(v, d)| est(v, d, v.abs())))
        }
        Function::W => {
            if a != 0.0 {
                return None;
            }
            if x == 0.0 {
                let p = crate::w::w_at_zero(0.0);
                return Some(p.map(|p| est(p.w0(), p.dw0(), p.w0())));
            }
            Some(w_zero_a(x.abs()).map(|w| {
                let (v, d) = if x > 0.0 {
                    (w.w_pos, w.dw_pos)
                } else {
                    (w.w_neg, w.dw_neg)
                };
                let amp = (PI * x.abs()).sqrt() * (0.25 * x * x).exp();
                est(v, d, amp)
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(got: f64, want: f64, rel: f64) -> bool {
        (got - want).abs() <= rel * want.abs()
    }

    #[test]
    fn erfc_values() {
        assert_eq!(erfc_real(0.0), 1.0);
        assert!(close(erfc_real(1.0), 0.157_299_207_050_285_13, 1e-14));
        assert!(close(erfc_real(-1.0), 1.842_700_792_949_715, 1e-15));
        assert!(close(erfc_real(0.3), 0.671_373_240_540_872_6, 1e-15));
        assert!(close(erfc_real(0.5), 0.479_500_122_186_953_5, 1e-14));
        assert!(close(erfc_real(3.0), 2.209_049_699_858_544e-5, 1e-14));
        assert!(close(erfc_real(10.0), 2.088_487_583_762_545e-45, 1e-14));
    }

    #[test]
    fn erfc_half_derivative() {
        let f = |x: f64| erfc_real(x / std::f64::consts::SQRT_2);
        for x in [0.3, 1.0, 2.5] {
            let h = 1e-4;
            let fd =
                (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
            let want = -SQRT_2_OVER_PI * (-0.5 * x * x).exp();
            assert!(close(fd, want, 1e-9), "{x}");
        }
    }

    #[test]
    fn half_odd_values() {
        let e1 = (-1.0f64).exp();
        let (v, _) = u_halfodd(-4.5, 2.0).unwrap();
        assert!(close(v, -5.0 * e1, 1e-15));
        let (v, _) = u_halfodd(0.5, 0.0).unwrap();
        assert!(close(v, SQRT_PI_OVER_2, 1e-15));
        let u05 = SQRT_PI_OVER_2 * 0.25f64.exp() * erfc_real(1.0 / std::f64::consts::SQRT_2);
        let (v, _) = u_halfodd(2.5, 1.0).unwrap();
        assert!(close(v, u05 - 0.5 * (-0.25f64).exp(), 1e-14));
        let (v, _) = v_halfodd(2.5, 1.0).unwrap();
        assert!(close(v, SQRT_2_OVER_PI * 2.0 * 0.25f64.exp(), 1e-15));
        assert_eq!(v_halfodd(3.5, 0.0).unwrap().0, 0.0);
        assert!(close(
            v_halfodd(4.5, 2.0).unwrap().0,
            SQRT_2_OVER_PI * 43.0 * 1f64.exp(),
            1e-15
        ));
        assert!(u_halfodd(3.5, 1.0).is_err());
        assert!(v_halfodd(-0.5, 1.0).is_err());
    }

    #[test]
    fn bessel_reference_and_recurrences() {
        // J_{1/4}(1), 30-digit reference
        let j = bessel_series(BesselKind::J, 0.25, 1.0).unwrap();
        assert!(close(j, 0.752_231_333_340_790_1, 1e-15), "{j}");
        let z = 2.0;
        let i = |nu| bessel_series(BesselKind::I, nu, z).unwrap();
        let k = |nu| bessel_series(BesselKind::K, nu, z).unwrap();
        let nu = 0.25;
        assert!(close(
            i(nu + 1.0),
            i(nu - 1.0) - 2.0 * nu / z * i(nu),
            1e-12
        ));
        assert!(close(
            k(nu + 1.0),
            k(nu - 1.0) + 2.0 * nu / z * k(nu),
            1e-12
        ));
    }

    #[test]
    fn bessel_domain() {
        assert!(bessel_series(BesselKind::K, 1.0, 1.0).is_err());
        assert!(bessel_series(BesselKind::J, 0.25, 0.0).is_err());
        assert!(matches!(
            bessel_series(BesselKind::I, 0.25, 31.0),
            Err(PcfError::Range(_))
        ));
    }

    #[test]
    fn w_zero_sum_rule() {
        let x: f64 = 1.7;
        let w = w_zero_a(x).unwrap();
        let jm = bessel_series(BesselKind::J, -0.25, 0.25 * x * x).unwrap();
        let want = (-0.25f64).exp2() * (PI * x).sqrt() * jm;
        assert!(close(w.w_pos + w.w_neg, want, 1e-14));
    }
}
