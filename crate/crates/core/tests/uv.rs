use std::f64::consts::PI;

use pcf_core::cgamma::gamma_real;
use pcf_core::numeric::sinpi;
use pcf_core::uv::{dpu, dpv, pu, pv, uv_at_zero};
use proptest::prelude::*;

fn u(a: f64, x: f64) -> f64 {
    pu(a, x).unwrap().value
}

fn v(a: f64, x: f64) -> f64 {
    pv(a, x).unwrap().value
}

fn residual(terms: &[f64]) -> f64 {
    let sum: f64 = terms.iter().sum();
    let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    sum.abs() / scale
}

#[test]
fn v_from_u_connection() {
    for a in [-1.0, 1.0, 3.5, 5.0] {
        let g = gamma_real(0.5 + a).unwrap();
        for x in [0.0, 1.0, 3.0, 5.0] {
            let lhs = PI * v(a, x);
            let rhs = g * (sinpi(a) * u(a, x) + u(a, -x));
            assert!(
                (lhs - rhs).abs() <= 1e-10 * lhs.abs(),
                "a={a} x={x}: {lhs} vs {rhs}"
            );
        }
    }
}

#[test]
fn u_from_v_connection() {
    for a in [-5.0, -1.0, 1.0, 5.0] {
        let g = gamma_real(a + 0.5).unwrap();
        let c2 = (PI * a).cos().powi(2);
        for x in [1.0, 3.0] {
            let lhs = u(a, x) * g * c2;
            let rhs = PI * (v(a, -x) - sinpi(a) * v(a, x));
            let scale = lhs.abs().max(PI * v(a, x).abs() * sinpi(a).abs());
            assert!(
                (lhs - rhs).abs() <= 1e-10 * scale,
                "a={a} x={x}: {lhs} vs {rhs}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn u_recurrences(a in -4.0f64..4.0, x in 0.0f64..5.0) {
        let (um, u0, up) = (u(a - 1.0, x), u(a, x), u(a + 1.0, x));
        prop_assert!(residual(&[x * u0, -um, (a + 0.5) * up]) <= 1e-10);
        let du = dpu(a, x).unwrap();
        prop_assert!(residual(&[du, -0.5 * x * u0, um]) <= 1e-10);
    }

    #[test]
    fn v_recurrences(a in -4.0f64..4.0, x in 0.0f64..5.0) {
        let (vm, v0, vp) = (v(a - 1.0, x), v(a, x), v(a + 1.0, x));
        prop_assert!(residual(&[x * v0, -vp, (a - 0.5) * vm]) <= 1e-10);
        let dv = dpv(a, x).unwrap();
        prop_assert!(residual(&[dv, -0.5 * x * v0, -(a - 0.5) * vm]) <= 1e-10);
    }

    #[test]
    fn weber_equation_through_recurrences(a in -4.0f64..4.0, x in -5.0f64..5.0) {
        // U'' = U/2 + x U'/2 - U'(a-1), V'' = V/2 + x V'/2 + (a - 1/2) V'(a-1)
        let r = pu(a, x).unwrap();
        let upp = 0.5 * r.value + 0.5 * x * r.derivative - dpu(a - 1.0, x).unwrap();
        let pot = 0.25 * x * x + a;
        prop_assert!(residual(&[upp, -pot * r.value]) <= 1e-9 || (upp - pot * r.value).abs() <= 1e-13);
        let s = pv(a, x).unwrap();
        let vpp = 0.5 * s.value + 0.5 * x * s.derivative + (a - 0.5) * dpv(a - 1.0, x).unwrap();
        prop_assert!(residual(&[vpp, -pot * s.value]) <= 1e-9 || (vpp - pot * s.value).abs() <= 1e-13);
    }
}

#[test]
fn anchors_match_series_at_origin() {
    for i in 0..20 {
        let a = -5.0 + i as f64 * 10.0 / 19.0;
        let z = uv_at_zero(a);
        let (ur, vr) = (pu(a, 0.0).unwrap(), pv(a, 0.0).unwrap());
        for (got, want) in [
            (ur.value, z.u0),
            (ur.derivative, z.du0),
            (vr.value, z.v0),
            (vr.derivative, z.dv0),
        ] {
            assert!(
                (got - want).abs() <= 1e-13 * want.abs(),
                "a={a}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn pole_lines_are_finite() {
    // both the sine and 1/Gamma vanish on these lines
    assert_eq!(uv_at_zero(1.5).v0, 0.0);
    assert_eq!(uv_at_zero(5.5).v0, 0.0);
    assert_eq!(uv_at_zero(0.5).dv0, 0.0);
    assert_eq!(uv_at_zero(4.5).dv0, 0.0);
    assert_eq!(uv_at_zero(-1.5).u0, 0.0);
    assert_eq!(uv_at_zero(-0.5).du0, 0.0);
    assert!((uv_at_zero(-1.5).du0 - 1.0).abs() < 1e-15);
    assert!(pv(3.5, 2.0).unwrap().value.is_finite());
}

#[test]
fn half_odd_values_through_the_series() {
    for x in [0.5f64, 2.0, 5.0] {
        let g = (-0.25 * x * x).exp();
        assert!((u(-0.5, x) - g).abs() <= 2e-15 * g);
        assert!((u(-2.5, x) - (x * x - 1.0) * g).abs() <= 1e-14 * g * (x * x + 1.0));
        let e = (2.0 / PI).sqrt() * (0.25 * x * x).exp();
        assert!((v(0.5, x) - e).abs() <= 2e-15 * e);
    }
}

#[test]
fn range_and_regime_errors() {
    assert!(matches!(pu(25.5, 1.0), Err(pcf_core::PcfError::Range(_))));
    assert!(matches!(pu(1.0, 100.0), Err(pcf_core::PcfError::Regime(_))));
    assert!(matches!(
        pv(f64::NAN, 1.0),
        Err(pcf_core::PcfError::Domain(_))
    ));
}
