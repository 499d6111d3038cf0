//! Comparison against 60-digit mpmath reference values in `data/oracle.json`.

use necrotica::radial::{lambda_coeff, stationarity_f};
use necrotica::specfun::{bessel_pair, cross_kernel, y_n0};
use necrotica::spectrum::q_n;
use necrotica::{solve_radius, spectrum_coeffs, ModelParams};
use serde_json::Value;

fn oracle() -> Value {
    serde_json::from_str(include_str!("data/oracle.json")).expect("oracle.json parses")
}

fn num(v: &Value) -> f64 {
    v.as_str().expect("reals are stored as strings").parse().unwrap()
}

fn rel(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

// A relative error `e` in a value is an absolute error `e` in its logarithm;
// the second term allows for rounding of the logarithm itself.
fn ln_close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol + 4.0 * f64::EPSILON * want.abs()
}

fn golden() -> (ModelParams, Value) {
    let g = oracle()["golden"].clone();
    let p = ModelParams::new(num(&g["rho"]), num(&g["beta"]), num(&g["sigma_under"])).unwrap();
    (p, g)
}

#[test]
fn scaled_bessel_values() {
    let data = oracle();
    let rows = data["bessel"].as_array().unwrap();
    assert!(rows.len() > 100);
    for row in rows {
        let n = row["n"].as_u64().unwrap() as u32;
        let s = num(&row["s"]);
        let e = bessel_pair(n, s).unwrap();
        let (li, lk) = (e.i_hat().ln_abs(), e.k_hat().ln_abs());
        assert!(ln_close(li, num(&row["ln_i_hat"]), 1e-12), "i_hat n={n} s={s}: {li} vs {}", row["ln_i_hat"]);
        assert!(ln_close(lk, num(&row["ln_k_hat"]), 1e-12), "k_hat n={n} s={s}: {lk} vs {}", row["ln_k_hat"]);
    }
}

#[test]
fn cross_kernels() {
    let data = oracle();
    for row in data["kernels"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap() as u32;
        let (a, b) = (num(&row["a"]), num(&row["b"]));
        let k = cross_kernel(n, a, b).unwrap();
        for (got, key) in [(k.k1, "ln_k1"), (k.k2, "ln_k2"), (k.k3, "ln_k3")] {
            let want = num(&row[key]);
            assert!(ln_close(got.ln_abs(), want, 1e-11), "{key} n={n} a={a} b={b}: {} vs {want}", got.ln_abs());
        }
    }
}

#[test]
fn legendre_values() {
    let data = oracle();
    for row in data["legendre"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap() as u32;
        let t = num(&row["theta"]);
        let got = y_n0(n, t).unwrap();
        let want = num(&row["y"]);
        // P_n(cos θ) amplifies the rounding of cos θ by roughly n.
        assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "n={n}: {got} vs {want}");
    }
}

#[test]
fn stationarity_function_off_root() {
    let (p, g) = golden();
    let (f, fp) = stationarity_f(&p, 5.0).unwrap();
    assert!(rel(f, num(&g["f_at_5"])) < 1e-12, "f(5) = {f}");
    assert!(rel(fp, num(&g["fp_at_5"])) < 1e-12, "f'(5) = {fp}");
}

#[test]
fn golden_radial_solution() {
    let (p, g) = golden();
    let s = solve_radius(&p).unwrap();
    assert!(rel(s.outer_radius, num(&g["R"])) < 1e-13, "R = {}", s.outer_radius);
    assert!(rel(s.sigma_tilde, num(&g["sigma_tilde"])) < 1e-12);
    assert!(rel(s.sigma_r, num(&g["sigma_R"])) < 1e-12);
    assert!(rel(s.lambda, num(&g["lambda"])) < 1e-12);
    let direct = lambda_coeff(p.rho, s.outer_radius, p.beta, p.sigma_under).unwrap();
    assert!(rel(direct, s.lambda) < 1e-14);
}

#[test]
fn golden_mode_data() {
    let (p, g) = golden();
    let s = solve_radius(&p).unwrap();
    let mid = 0.5 * (s.rho() + s.outer_radius);
    for row in g["modes"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap() as u32;
        let m = spectrum_coeffs(&s, n).unwrap();
        let checks = [
            ("Q_R", m.q_r, 1e-11),
            ("Qp_rho", m.qp_rho, 1e-11),
            ("Qp_R", m.qp_r, 1e-11),
            ("Q_mid", q_n(&s, n, mid).unwrap(), 1e-11),
            ("B", m.b_n, 1e-9),
        ];
        for (key, got, tol) in checks {
            let want = num(&row[key]);
            assert!(rel(got, want) < tol, "{key} n={n}: {got} vs {want}");
        }
        let a = num(&row["A"]);
        assert!((m.a_n - a).abs() <= 1e-12 * a.abs().max(1.0), "A n={n}: {} vs {a}", m.a_n);
    }
}
