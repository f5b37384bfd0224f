//! Complex gamma and log-gamma, plus a reciprocal real gamma that is
//! finite (zero) at the poles.
//!
//! `log_gamma` shifts the argument upward with Gamma(z+1) = z Gamma(z) until
//! it is at least 10 in modulus in the right half plane, then sums the
//! Stirling series with the ten Bernoulli numbers B_2..B_20. The imaginary
//! part is the sum of principal logarithms of the shift factors plus the
//! Stirling value, which is real on the positive axis and continuous along
//! any path that avoids the non-positive real axis.

use num_complex::Complex64;

use crate::error::{ensure_finite, PcfError, Result};
use crate::numeric::sinpi;

/// Complex number used by the gamma kernel and the W asymptotics.
pub type ComplexValue = Complex64;

/// Exact rational number `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub const fn new(num: i64, den: i64) -> Self {
        Self { num, den }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// B_2, B_4, ..., B_20.
pub const BERNOULLI_EVEN: [Rational; 10] = [
    Rational::new(1, 6),
    Rational::new(-1, 30),
    Rational::new(1, 42),
    Rational::new(-1, 30),
    Rational::new(5, 66),
    Rational::new(-691, 2730),
    Rational::new(7, 6),
    Rational::new(-3617, 510),
    Rational::new(43867, 798),
    Rational::new(-174611, 330),
];

/// Below this modulus the Stirling series is not summed directly.
pub const STIRLING_THRESHOLD: f64 = 10.0;

/// Distance to a non-positive integer treated as a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn stirling_coefficients() -> [f64; 10] {
    let mut c = [0.0; 10];
    for (n, b) in BERNOULLI_EVEN.iter().enumerate() {
        let two_n = 2.0 * (n as f64 + 1.0);
        c[n] = b.to_f64() / (two_n * (two_n - 1.0));
    }
    c
}

fn check_pole(z: ComplexValue) -> Result<()> {
    ensure_finite("re(z)", z.re)?;
    ensure_finite("im(z)", z.im)?;
    if z.re <= POLE_TOLERANCE {
        let n = z.re.round();
        if n <= 0.0 && (z - ComplexValue::new(n, 0.0)).norm() <= POLE_TOLERANCE {
            return Err(PcfError::Domain(format!(
                "gamma has a pole at z = {n} (input {} {:+}i)",
                z.re, z.im
            )));
        }
    }
    Ok(())
}

/// Principal-branch ln Gamma(z).
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    check_pole(z)?;
    if z.im == 0.0 && z.re > 0.0 {
        let re = if z.re <= RGAMMA_RECURRENCE_LIMIT {
            -recip_gamma_real(z.re).ln()
        } else {
            ln_gamma_positive(z.re)
        };
        return Ok(ComplexValue::new(re, 0.0));
    }
    let mut w = z;
    let mut prod = ComplexValue::new(1.0, 0.0);
    let mut ln_scale = 0.0;
    let mut arg_sum = 0.0;
    while w.re < 0.0 || w.norm() < STIRLING_THRESHOLD {
        prod *= w;
        arg_sum += w.arg();
        let m = prod.norm();
        if !(1e-150..=1e150).contains(&m) {
            ln_scale += m.ln();
            prod /= m;
        }
        w += 1.0;
    }
    let shift_log = ComplexValue::new(ln_scale + prod.norm().ln(), arg_sum);
    Ok(stirling(w) - shift_log)
}

fn stirling(w: ComplexValue) -> ComplexValue {
    let c = stirling_coefficients();
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut tail = ComplexValue::new(c[9], 0.0);
    for &ck in c[..9].iter().rev() {
        tail = tail * inv2 + ck;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + tail * inv
}

/// Gamma(z) = exp(ln Gamma(z)).
pub fn gamma(z: ComplexValue) -> Result<ComplexValue> {
    let lg = log_gamma(z)?;
    if lg.re > f64::MAX.ln() {
        return Err(PcfError::Range(format!(
            "gamma overflows: ln Gamma = {} {:+}i",
            lg.re, lg.im
        )));
    }
    Ok(lg.exp())
}

/// |Gamma(z)| without forming Gamma(z).
pub fn gamma_modulus(z: ComplexValue) -> Result<f64> {
    Ok(log_gamma(z)?.re.exp())
}

/// arg Gamma(z) on the continuous branch of ln Gamma.
pub fn gamma_arg(z: ComplexValue) -> Result<f64> {
    Ok(log_gamma(z)?.im)
}

/// 1/Gamma(1+t) = sum RGAMMA_TAYLOR[k] t^k, accurate to 1e-17 for |t| <= 1/2.
#[allow(clippy::excessive_precision)]
const RGAMMA_TAYLOR: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_860_6,
    -0.655_878_071_520_253_881_1,
    -0.042_002_635_034_095_235_53,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_75,
    -0.009_621_971_527_876_973_562,
    0.007_218_943_246_663_099_542,
    -0.001_165_167_591_859_065_112,
    -0.000_215_241_674_114_950_972_8,
    0.000_128_050_282_388_116_186_2,
    -0.000_020_134_854_780_788_238_66,
    -0.000_001_250_493_482_142_670_657,
    0.000_001_133_027_231_981_695_882,
    -2.056_338_416_977_607_103e-7,
    6.116_095_104_481_415_818e-9,
    5.002_007_644_469_222_930e-9,
    -1.181_274_570_487_020_145e-9,
    1.043_426_711_691_100_510e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783e-14,
    -5.348_122_539_423_017_982e-15,
    1.226_778_628_238_260_790e-15,
    -1.181_259_301_697_458_770e-16,
];

/// Beyond this |x| the recurrence products get long; use ln Gamma instead.
const RGAMMA_RECURRENCE_LIMIT: f64 = 30.0;

/// 1/Gamma(x) for real x; exactly 0 at non-positive integers.
pub fn recip_gamma_real(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= POLE_TOLERANCE {
        let n = x.round();
        if (x - n).abs() <= POLE_TOLERANCE {
            return 0.0;
        }
    }
    if x > RGAMMA_RECURRENCE_LIMIT {
        return (-ln_gamma_positive(x)).exp();
    }
    if x < -RGAMMA_RECURRENCE_LIMIT {
        // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
        let lg = ln_gamma_positive(1.0 - x);
        return sinpi(x) * lg.exp() / std::f64::consts::PI;
    }
    // x = 1 + t + n with |t| <= 1/2
    let n = (x - 1.0).round();
    let t = (x - 1.0) - n;
    let mut r = 0.0;
    for &c in RGAMMA_TAYLOR.iter().rev() {
        r = r * t + c;
    }
    // r = 1/Gamma(1+t)
    if n > 0.0 {
        let mut prod = 1.0;
        for k in 1..=(n as i64) {
            prod *= t + k as f64;
        }
        r / prod
    } else {
        let mut prod = 1.0;
        for k in ((n as i64 + 1)..=0).rev() {
            prod *= t + k as f64;
        }
        r * prod
    }
}

/// Gamma(x) for real non-pole x.
pub fn gamma_real(x: f64) -> Result<f64> {
    check_pole(ComplexValue::new(x, 0.0))?;
    let r = recip_gamma_real(x);
    if r == 0.0 {
        return Err(PcfError::Range(format!("gamma({x}) overflows")));
    }
    Ok(1.0 / r)
}

/// ln Gamma(x) for x > 0 via the complex kernel restricted to the real axis.
pub(crate) fn ln_gamma_positive(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut w = x;
    let mut shift = 1.0;
    while w < STIRLING_THRESHOLD {
        shift *= w;
        w += 1.0;
    }
    let c = stirling_coefficients();
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut tail = c[9];
    for &ck in c[..9].iter().rev() {
        tail = tail * inv2 + ck;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + tail * inv - shift.ln()
}
