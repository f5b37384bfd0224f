//! Small floating-point helpers: compensated accumulation, exact trig of
//! multiples of pi, and extended-precision phase reduction.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Neg};

/// Machine epsilon for f64.
pub const EPS: f64 = f64::EPSILON;

const TWO_PI_HI: f64 = std::f64::consts::TAU;
const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;

/// Neumaier (improved Kahan-Babuska) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new(init: f64) -> Self {
        Self {
            sum: init,
            comp: 0.0,
        }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Unevaluated sum `hi + lo` carrying about 106 bits.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact product of two doubles.
    pub fn product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::new(x)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Mul<f64> for DoubleDouble {
    type Output = Self;
    fn mul(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }
}

impl Div<f64> for DoubleDouble {
    type Output = Self;
    fn div(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self + -DoubleDouble::product(q1, b);
        let q2 = r.hi / b;
        let r = r + -DoubleDouble::product(q2, b);
        let q3 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::new(q3)
    }
}

/// sin(pi x), exact at integers and half-integers.
pub fn sinpi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // sin(pi x) is odd; reduce |x| into [0, 2)
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let mut r = x.abs() % 2.0;
    let mut s = sign;
    if r >= 1.0 {
        r -= 1.0;
        s = -s;
    }
    if r > 0.5 {
        r = 1.0 - r;
    }
    let v = if r <= 0.25 {
        (PI * r).sin()
    } else {
        (PI * (0.5 - r)).cos()
    };
    s * v
}

/// cos(pi x), exact at integers and half-integers.
pub fn cospi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let mut r = x.abs() % 2.0;
    if r > 1.0 {
        r = 2.0 - r;
    }
    let mut s = 1.0;
    if r > 0.5 {
        r = 1.0 - r;
        s = -1.0;
    }
    let v = if r <= 0.25 {
        (PI * r).cos()
    } else {
        (PI * (0.5 - r)).sin()
    };
    s * v
}

/// `x*x/4` reduced modulo 2pi, carrying the rounding error of the square.
///
/// Result lies in (-pi, pi].
pub fn quarter_square_mod_2pi(x: f64) -> f64 {
    let p = x * x;
    let e = x.mul_add(x, -p);
    let (hi, lo) = (0.25 * p, 0.25 * e);
    let k = (hi / TWO_PI_HI).round();
    let mut r = (-k).mul_add(TWO_PI_HI, hi);
    r = (-k).mul_add(TWO_PI_LO, r) + lo;
    wrap_pi(r)
}

/// Wrap an angle into (-pi, pi].
pub fn wrap_pi(t: f64) -> f64 {
    if t.abs() <= PI {
        return t;
    }
    let k = (t / TWO_PI_HI).round();
    let r = (-k).mul_add(TWO_PI_LO, (-k).mul_add(TWO_PI_HI, t));
    if r <= -PI {
        r + TWO_PI_HI
    } else if r > PI {
        r - TWO_PI_HI
    } else {
        r
    }
}

/// Relative difference with an absolute floor for values near zero.
pub fn rel_diff(computed: f64, expected: f64) -> f64 {
    let scale = expected.abs().max(f64::MIN_POSITIVE);
    (computed - expected).abs() / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinpi_exact_points() {
        assert_eq!(sinpi(0.0), 0.0);
        assert_eq!(sinpi(1.0), 0.0);
        assert_eq!(sinpi(-3.0), 0.0);
        assert_eq!(sinpi(0.5), 1.0);
        assert_eq!(sinpi(-0.5), -1.0);
        assert_eq!(sinpi(1.5), -1.0);
        assert_eq!(cospi(0.5), 0.0);
        assert_eq!(cospi(-3.5), 0.0);
        assert_eq!(cospi(1.0), -1.0);
        assert_eq!(cospi(-2.0), 1.0);
    }

    #[test]
    fn sinpi_matches_libm_off_grid() {
        for i in -400..400 {
            let x = i as f64 * 0.0137 + 0.001;
            assert!((sinpi(x) - (PI * x).sin()).abs() < 1e-14, "x={x}");
            assert!((cospi(x) - (PI * x).cos()).abs() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let mut s = CompensatedSum::new(1.0);
        s.add(1e-16);
        s.add(1e-16);
        s.add(-1.0);
        assert!((s.value() - 2e-16).abs() < 1e-30);
    }

    #[test]
    fn double_double_keeps_low_bits() {
        let third = DoubleDouble::new(1.0) / 3.0;
        let back = third * 3.0 + DoubleDouble::new(-1.0);
        assert!(back.to_f64().abs() < 1e-31);
        let tiny = DoubleDouble::new(1.0) + DoubleDouble::new(1e-20) + DoubleDouble::new(-1.0);
        assert!((tiny.to_f64() - 1e-20).abs() < 1e-35);
        let sq = DoubleDouble::product(0.1, 0.1);
        assert_eq!(sq.hi, 0.1 * 0.1);
        assert_eq!(sq.lo, 0.1f64.mul_add(0.1, -(0.1 * 0.1)));
    }

    #[test]
    fn phase_reduction_large_argument() {
        // 20^2/4 = 100 rad; 100 - 32 pi = -0.5309649148733836...
        let r = quarter_square_mod_2pi(20.0);
        assert!((r - (-0.530_964_914_873_383_6)).abs() < 2e-15, "{r}");
        assert!((r.cos() - 100f64.cos()).abs() < 1e-13);
    }
}
