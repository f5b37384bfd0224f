use pcf_core::series::coefficients;
use pcf_core::{sum_y12, SeriesSign};
use proptest::prelude::*;

fn sign() -> impl Strategy<Value = SeriesSign> {
    prop_oneof![Just(SeriesSign::Plus), Just(SeriesSign::Minus)]
}

fn second_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
        / (12.0 * h * h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn parity_is_exact(a in -5.0f64..5.0, x in 0.0f64..6.0, s in sign()) {
        let p = sum_y12(a, x, s).unwrap();
        let m = sum_y12(a, -x, s).unwrap();
        prop_assert_eq!(p.y1.to_bits(), m.y1.to_bits());
        prop_assert_eq!(p.y2.to_bits(), (-m.y2).to_bits());
        prop_assert_eq!(p.dy1.to_bits(), (-m.dy1).to_bits());
        prop_assert_eq!(p.dy2.to_bits(), m.dy2.to_bits());
    }

    #[test]
    fn derivatives_match_central_differences(a in -5.0f64..5.0, x in 0.1f64..6.0, s in sign()) {
        let h = 1e-5 * x.abs().max(1.0);
        let r = sum_y12(a, x, s).unwrap();
        let up = sum_y12(a, x + h, s).unwrap();
        let dn = sum_y12(a, x - h, s).unwrap();
        let fd1 = (up.y1 - dn.y1) / (2.0 * h);
        let fd2 = (up.y2 - dn.y2) / (2.0 * h);
        let scale1 = r.dy1.abs().max(r.abs_y1 * 1e-3);
        let scale2 = r.dy2.abs().max(r.abs_y2 * 1e-3);
        prop_assert!((fd1 - r.dy1).abs() <= 1e-6 * scale1, "dy1 {} vs {fd1}", r.dy1);
        prop_assert!((fd2 - r.dy2).abs() <= 1e-6 * scale2, "dy2 {} vs {fd2}", r.dy2);
    }

    #[test]
    fn weber_equation_residual(a in -3.0f64..3.0, x in -4.0f64..4.0, s in sign()) {
        let pot = match s {
            SeriesSign::Plus => 0.25 * x * x + a,
            SeriesSign::Minus => a - 0.25 * x * x,
        };
        let h = 2e-3;
        let y1 = |t: f64| sum_y12(a, t, s).unwrap().y1;
        let y2 = |t: f64| sum_y12(a, t, s).unwrap().y2;
        let tol = |y: f64| 1e-8 * y.abs().max(1.0);
        prop_assert!((second_difference(y1, x, h) - pot * y1(x)).abs() <= tol(y1(x)));
        prop_assert!((second_difference(y2, x, h) - pot * y2(x)).abs() <= tol(y2(x)));
    }
}

#[test]
fn seventh_power_coefficient() {
    let a: f64 = -2.3;
    let plus = coefficients(a, SeriesSign::Plus, 8);
    let minus = coefficients(a, SeriesSign::Minus, 8);
    assert!((plus[7] - (a.powi(3) + 6.5 * a)).abs() < 1e-12);
    assert!((minus[7] - (a.powi(3) - 6.5 * a)).abs() < 1e-12);
}

#[test]
fn truncated_series_matches_coefficients() {
    // through x^9 the series and the explicit coefficients agree once the
    // remaining terms are below rounding
    let (a, x): (f64, f64) = (0.7, 1e-2);
    let c = coefficients(a, SeriesSign::Plus, 10);
    let mut fact = 1.0;
    let (mut y1, mut y2) = (0.0, 0.0);
    for (n, cn) in c.iter().enumerate() {
        if n > 0 {
            fact *= n as f64;
        }
        let t = cn * x.powi(n as i32) / fact;
        if n % 2 == 0 {
            y1 += t;
        } else {
            y2 += t;
        }
    }
    let r = sum_y12(a, x, SeriesSign::Plus).unwrap();
    assert!((r.y1 - y1).abs() < 1e-16);
    assert!((r.y2 - y2).abs() < 1e-18);
}
