//! Taylor stepping of y'' = (s x^2/4 + a) y between two points.
//!
//! Used where the origin series cancels badly: recessive solutions are
//! carried inward from an asymptotic start, dominant ones outward from the
//! origin. The state is kept as mantissa times exp(ln_scale) so values far
//! outside double range can be passed through.

use crate::eval::Scaled;
use crate::numeric::EPS;

/// Largest step in units of the local oscillation/growth length.
const STEP_LENGTH: f64 = 2.0;
const MAX_STEP: f64 = 0.5;
const MAX_TAYLOR_TERMS: usize = 80;

/// Local Taylor expansion of one step of size h from x0.
fn step(a: f64, s: f64, x0: f64, y: f64, dy: f64, h: f64) -> (f64, f64) {
    let q0 = s * 0.25 * x0 * x0 + a;
    let q1 = s * 0.5 * x0;
    let q2 = s * 0.25;
    let (h2, h3, h4) = (h * h, h * h * h, h * h * h * h);
    // e_n = c_n h^n
    let mut e = [y, dy * h, 0.0, 0.0];
    let mut val = e[0] + e[1];
    let mut der = e[1];
    let mut quiet = 0;
    for n in 0..MAX_TAYLOR_TERMS {
        let m2 = if n >= 1 { e[(n - 1) % 4] } else { 0.0 };
        let m3 = if n >= 2 { e[(n - 2) % 4] } else { 0.0 };
        let next = (q0 * h2 * e[n % 4] + q1 * h3 * m2 + q2 * h4 * m3)
            / ((n as f64 + 1.0) * (n as f64 + 2.0));
        e[(n + 2) % 4] = next;
        val += next;
        der += (n as f64 + 2.0) * next;
        let scale = val.abs() + der.abs();
        quiet = if next.abs() * (n as f64 + 3.0) <= 1e-18 * scale {
            quiet + 1
        } else {
            0
        };
        if quiet >= 3 {
            break;
        }
    }
    (val, der / h)
}

/// Advances `start` (at x0) to x1, returning the new state and the step count.
///
/// `start.err`/`derr` are carried as a relative envelope error and grown by
/// a few ulps per step.
pub(crate) fn propagate(a: f64, s: f64, x0: f64, start: Scaled, x1: f64) -> (Scaled, usize) {
    let q_at = |x: f64| (s * 0.25 * x * x + a).abs().max(1.0);
    let envelope = |st: &Scaled, x: f64| st.y.hypot(st.dy / q_at(x).sqrt());
    let start = start.normalized();
    let env0 = envelope(&start, x0);
    let rel0 = if env0 > 0.0 {
        start.err.max(start.derr / q_at(x0).sqrt()) / env0
    } else {
        0.0
    };

    let mut x = x0;
    let mut y = start.y;
    let mut dy = start.dy;
    let mut ln_scale = start.ln_scale;
    let mut steps = 0usize;
    while x != x1 {
        let remaining = x1 - x;
        let qmax = q_at(x).max(q_at(x + remaining.signum() * MAX_STEP.min(remaining.abs())));
        let hmax = (STEP_LENGTH / qmax.sqrt()).min(MAX_STEP);
        // land on representable points so the expansion centres never drift
        let next = if remaining.abs() <= hmax * 1.000_001 {
            x1
        } else {
            x + hmax.copysign(remaining)
        };
        let (ny, ndy) = step(a, s, x, y, dy, next - x);
        y = ny;
        dy = ndy;
        x = next;
        steps += 1;
        let m = y.abs().max(dy.abs());
        if m > 1e100 || (m < 1e-100 && m > 0.0) {
            y /= m;
            dy /= m;
            ln_scale += m.ln();
        }
    }
    let mut out = Scaled {
        y,
        dy,
        ln_scale,
        err: 0.0,
        derr: 0.0,
    };
    let env = envelope(&out, x1);
    let rel = rel0 + 8.0 * EPS * (steps as f64 + 1.0);
    out.err = env * rel;
    out.derr = env * rel * q_at(x1).sqrt();
    (out, steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_gaussian_solution() {
        // U(-1/2, x) = exp(-x^2/4) solves the plus equation with a = -1/2
        let f = |x: f64| (-0.25 * x * x).exp();
        let df = |x: f64| -0.5 * x * f(x);
        let start = Scaled::plain(f(6.0), df(6.0), 0.0, 0.0);
        let (end, steps) = propagate(-0.5, 1.0, 6.0, start, 1.0);
        assert!(steps > 1);
        let (v, d, err, _) = end.finish().unwrap();
        assert!((v / f(1.0) - 1.0).abs() < 1e-13, "{v}");
        assert!((d / df(1.0) - 1.0).abs() < 1e-13, "{d}");
        assert!(err > 0.0 && err < 1e-13);
    }

    #[test]
    fn forward_and_back_round_trip() {
        let start = Scaled::plain(0.3, -0.7, 0.0, 0.0);
        let (mid, _) = propagate(-2.0, -1.0, -3.0, start, 4.0);
        let (back, _) = propagate(-2.0, -1.0, 4.0, mid, -3.0);
        let (v, d, _, _) = back.finish().unwrap();
        assert!(
            (v - 0.3).abs() < 1e-12 && (d + 0.7).abs() < 1e-12,
            "{v} {d}"
        );
    }
}
