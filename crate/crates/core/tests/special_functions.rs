use std::f64::consts::PI;

use disclination_qm::specialfn::{
    gauss_laguerre_rule, integrate_interval, integrate_line, integrate_semiline, laguerre,
    laguerre_at_zero, laguerre_series, ln_factorial, log_gamma, SemilineIntegrator,
};
use disclination_qm::Error;

#[test]
fn laguerre_orthogonality() {
    // int_0^inf x^a e^-x L_m^a L_n^a dx = Gamma(n + a + 1) / n! delta_mn
    for &a in &[0.0, 0.5, 1.45, 3.0] {
        for m in 0..6u32 {
            for n in 0..6u32 {
                let q = integrate_semiline(
                    |x: f64| {
                        x.powf(a)
                            * (-x).exp()
                            * laguerre(m, a, x).unwrap()
                            * laguerre(n, a, x).unwrap()
                    },
                    1e-11,
                )
                .unwrap();
                let expected = if m == n {
                    (log_gamma(n as f64 + a + 1.0).unwrap() - ln_factorial(n)).exp()
                } else {
                    0.0
                };
                assert!((q.value - expected).abs() < 1e-9 * (1.0 + expected), "a={a} m={m} n={n}: {}", q.value);
            }
        }
    }
}

#[test]
fn laguerre_recurrence_against_series() {
    for &a in &[-0.5, 0.0, 0.7, 2.0] {
        for n in 0..12u32 {
            for &x in &[0.0, 0.1, 1.0, 3.5, 8.0] {
                let r = laguerre(n, a, x).unwrap();
                let s = laguerre_series(n, a, x);
                assert!((r - s).abs() <= 1e-10 * (1.0 + s.abs()), "n={n} a={a} x={x}: {r} vs {s}");
            }
            assert!((laguerre(n, a, 0.0).unwrap() - laguerre_at_zero(n, a)).abs() < 1e-10 * laguerre_at_zero(n, a).abs().max(1.0));
        }
    }
    assert!(matches!(laguerre(2, -1.0, 0.3), Err(Error::Domain(_))));
}

#[test]
fn log_gamma_values() {
    let cases = [
        (0.5, 0.5 * PI.ln()),
        (1.0, 0.0),
        (2.0, 0.0),
        (3.5, 1.200_973_602_347_074_2),
        (10.0, 12.801_827_480_081_469),
        (0.1, 2.252_712_651_734_206),
        (100.5, 361.435_540_467_777_6),
    ];
    for (x, v) in cases {
        let g = log_gamma(x).unwrap();
        assert!((g - v).abs() <= 1e-13 * (1.0 + v.abs()), "x={x}: {g} vs {v}");
    }
    assert!(log_gamma(0.0).is_err());
    assert!(log_gamma(-1.5).is_err());
    for n in 0..30u32 {
        assert!((ln_factorial(n) - log_gamma(n as f64 + 1.0).unwrap()).abs() < 1e-12 * (1.0 + n as f64));
    }
}

#[test]
fn gauss_laguerre_moments() {
    for n in [16usize, 32, 64] {
        let rule = gauss_laguerre_rule(n);
        for k in 0..(n.min(20) as i32) {
            let v: f64 = rule.iter().map(|(x, w)| w * x.powi(k)).sum();
            let exact = ln_factorial(k as u32).exp();
            assert!((v - exact).abs() <= 1e-10 * exact, "n={n} k={k}: {v} vs {exact}");
        }
    }
}

/// The reported error estimate must bound the actual error.
#[test]
fn quadrature_is_honest() {
    type Case = (&'static str, Box<dyn Fn(f64) -> f64>, f64, f64, f64);
    let cases: Vec<Case> = vec![
        ("sqrt", Box::new(|x: f64| x.sqrt()), 0.0, 1.0, 2.0 / 3.0),
        ("log", Box::new(|x: f64| if x > 0.0 { x.ln() } else { 0.0 }), 0.0, 1.0, -1.0),
        ("peak", Box::new(|x: f64| 1.0 / (1e-4 + (x - 0.3).powi(2))), 0.0, 1.0, 100.0 * ((70.0f64).atan() + (30.0f64).atan())),
        ("oscillatory", Box::new(|x: f64| (50.0 * x).cos()), 0.0, 2.0, (100.0f64).sin() / 50.0),
        ("power", Box::new(|x: f64| x.powf(-0.5)), 0.0, 1.0, 2.0),
        ("smooth", Box::new(|x: f64| (-x * x).exp()), -3.0, 3.0, PI.sqrt() * ERF_3),
    ];
    for (name, f, a, b, exact) in cases {
        for tol in [1e-6, 1e-10] {
            let q = integrate_interval(&*f, a, b, tol).unwrap();
            let err = (q.value - exact).abs();
            assert!(err <= q.abs_error_estimate.max(1e-15 * exact.abs()), "{name} tol={tol}: err {err:e} est {:e}", q.abs_error_estimate);
            assert!(err <= 10.0 * tol * exact.abs().max(1.0), "{name} tol={tol}: err {err:e}");
        }
    }
}

const ERF_3: f64 = 0.999_977_909_503_001_4;

#[test]
fn semiline_and_line() {
    let q = integrate_semiline(|x| (-x).exp() * x.powi(3), 1e-12).unwrap();
    assert!((q.value - 6.0).abs() < 1e-10);
    let q = SemilineIntegrator::new(1e-12).with_fast_path(false).integrate(|x| 1.0 / (1.0 + x * x)).unwrap();
    assert!((q.value - PI / 2.0).abs() < 1e-10, "{}", q.value);
    let q = integrate_line(|x| (-0.5 * x * x).exp(), 1e-12).unwrap();
    assert!((q.value - (2.0 * PI).sqrt()).abs() < 1e-10);
}
