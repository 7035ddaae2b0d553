//! Public API: dispatch, closed forms, diagnostics and the I∞ assembly.

mod common;

use std::f64::consts::PI;

use common::{axis_value, TABLE1};
use kelvin_core::levin::LevinVariant;
use kelvin_core::wavelike::{
    closed_form_axis, critical_points, eval_I, eval_I_infinity, EvalConfig, Method, MethodUsed,
};
use kelvin_core::{Error, FieldPoint};

fn pt(x: f64, y: f64, z: f64) -> FieldPoint {
    FieldPoint::new(x, y, z).unwrap()
}

#[test]
fn closed_form_examples() {
    assert!((closed_form_axis(-1.0).unwrap().re - 0.3260247).abs() < 1e-7);
    assert!((closed_form_axis(-4.0).unwrap().re - 0.008_115_906_170_032_93).abs() < 1e-16);
    let mut prev = f64::INFINITY;
    for y in [-1.0, -5.0, -20.0, -50.0] {
        let v = closed_form_axis(y).unwrap().re;
        assert!(v < prev);
        prev = v;
    }
    assert!(prev < 1e-20);
}

#[test]
fn critical_point_examples() {
    let c = critical_points(&pt(-4.0, -0.3, 1.0));
    assert!((c[0] - 0.2928932).abs() < 1e-7 && (c[1] - 1.7071068).abs() < 1e-7);
    assert_eq!(critical_points(&pt(-2.0 * 2f64.sqrt(), -0.3, 1.0)).len(), 1);
    assert!(critical_points(&pt(-1.0, -0.3, 1.0)).is_empty());
}

#[test]
fn engines_agree_through_dispatch() {
    let p = pt(-1.0, -0.5, 0.5);
    let a = eval_I(&p, &EvalConfig::with_method(Method::ClenshawCurtis, 1e-12)).unwrap();
    let b = eval_I(&p, &EvalConfig::with_method(Method::Levin(LevinVariant::Plain), 1e-12)).unwrap();
    assert_eq!(a.method, MethodUsed::ClenshawCurtis);
    assert_eq!(b.method, MethodUsed::LevinPlain);
    assert!((a.value - b.value).norm() <= 1e-10);
}

#[test]
fn errors_and_closed_form() {
    let cfg = EvalConfig::default();
    assert_eq!(eval_I(&pt(-1.0, 0.0, 0.0), &cfg).unwrap_err(), Error::TrackSingularity { x: -1.0 });
    assert!(matches!(eval_I(&pt(1.0, -1.0, 0.0), &cfg), Err(Error::Domain(_))));
    assert!(matches!(eval_I(&pt(-1.0, 1.0, 0.0), &cfg), Err(Error::Domain(_))));
    let r = eval_I(&pt(0.0, -1.0, 0.0), &cfg).unwrap();
    assert_eq!(r.method, MethodUsed::ClosedForm);
    assert!((r.value.re - axis_value(-1.0)).abs() < 1e-15);
}

#[test]
fn report_diagnostics_are_consistent() {
    let p = pt(-4.0, -0.3, 1.0);
    let r = eval_I(&p, &EvalConfig::default()).unwrap();
    let rho = (0.09f64 + 1.0).sqrt();
    assert!((r.d_param.unwrap() - 16.0 / (4.0 * rho)).abs() < 1e-14);
    let cos2 = 0.3 / rho;
    assert!(((2.0 * r.theta.unwrap()).cos() - cos2).abs() < 1e-14);
    assert_eq!(r.critical_points.len(), 2);
}

#[test]
fn infinity_examples() {
    let cfg = EvalConfig::with_method(Method::ClenshawCurtis, 1e-10);
    assert_eq!(eval_I_infinity(1.0, -0.5, 0.5, &cfg).unwrap().value, 0.0);
    let v = eval_I_infinity(-1.0, -0.5, 0.5, &cfg).unwrap().value;
    assert!((v - -0.3132089735).abs() <= 1e-8);
    let v = eval_I_infinity(-1.0, -0.01, 0.1, &cfg).unwrap().value;
    assert!((v - -2.1157417380).abs() <= 1e-8);
}

#[test]
fn all_benchmarks_with_default_dispatch() {
    let cfg = EvalConfig { eps: 1e-11, ..EvalConfig::default() };
    for &(y, z, expected) in &TABLE1 {
        let r = eval_I_infinity(-1.0, y, z, &cfg).unwrap();
        assert!(r.converged);
        assert!((r.value - expected).abs() <= 1e-8, "y = {y}, z = {z}: {}", r.value);
    }
}

#[test]
fn infinity_is_even_in_z() {
    let cfg = EvalConfig::default();
    for &(x, y, z) in &[(-1.0, -0.5, 0.5), (-3.0, 0.0, 0.2), (-7.5, -0.2, 1.3)] {
        let a = eval_I_infinity(x, y, z, &cfg).unwrap().value;
        let b = eval_I_infinity(x, y, -z, &cfg).unwrap().value;
        assert_eq!(a, b);
    }
}

#[test]
fn infinity_equals_pair_assembly() {
    let cfg = EvalConfig::with_method(Method::ClenshawCurtis, 1e-12);
    let a = eval_I(&pt(-2.0, -0.2, 0.4), &cfg).unwrap().value;
    let b = eval_I(&pt(-2.0, -0.2, -0.4), &cfg).unwrap().value;
    let v = eval_I_infinity(-2.0, -0.2, 0.4, &cfg).unwrap().value;
    assert!((v - (a.im + b.im) / PI).abs() < 1e-15);
}
