use k2pm::kernel::{g, g_derivative};
use k2pm::operator::{build_operator, characteristic_poly, leading_coeff};
use k2pm::oracle::{compare, dense_solve, dense_solve_uniform, uniform_nodes};
use k2pm::poly::{euler_frobenius, euler_frobenius_coeffs, geom_power_tail, geom_trig_tail, poly_roots, Polynomial};
use k2pm::real::cabs;
use k2pm::{build_spline, Dd, Real, SampleSet, SplineConfig};
use proptest::prelude::*;

fn config() -> impl Strategy<Value = SplineConfig> {
    (2usize..=5, 0.05f64..1.0, 4usize..=30).prop_filter_map("valid config", |(m, hw, n)| {
        let omega = hw * n as f64;
        if omega.cos().abs() <= 0.1 {
            return None;
        }
        SplineConfig::new(m, omega, n).ok()
    })
}

fn config_and_samples() -> impl Strategy<Value = (SplineConfig, Vec<f64>)> {
    config().prop_flat_map(|c| (Just(c), prop::collection::vec(-1.0f64..1.0, c.n() + 1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_frobenius_is_palindromic(k in 0u32..=10, e in -3.0f64..3.0, neg in any::<bool>()) {
        let x = if neg { -(10f64.powf(e)) } else { 10f64.powf(e) };
        let p = euler_frobenius::<f64>(k);
        let lhs = p.eval(x);
        let rhs = x.powi(k as i32) * p.eval(1.0 / x);
        let scale = p.coeffs().iter().map(|c| c.abs()).sum::<f64>() * x.abs().max(1.0).powi(k as i32);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale);
    }

    #[test]
    fn power_tail_matches_partial_sums(qi in 0usize..5, k in 0u32..=6) {
        let q = [0.1, -0.1, 0.5, -0.5, 0.9][qi];
        let exact = geom_power_tail(q, k).unwrap();
        let brute: f64 = (0..2000).map(|g| q.powi(g) * (g as f64).powi(k as i32)).sum();
        prop_assert!((exact - brute).abs() <= 1e-12 * brute.abs().max(1.0));
    }

    #[test]
    fn trig_tail_matches_partial_sums(l in -0.95f64..0.95, theta in -3.0f64..3.0, phase in -3.0f64..3.0) {
        let (s, c) = geom_trig_tail(l, theta, phase).unwrap();
        let (mut bs, mut bc) = (0.0, 0.0);
        for g in 1..1500 {
            let t = theta * g as f64 + phase;
            bs += l.powi(g) * t.sin();
            bc += l.powi(g) * t.cos();
        }
        prop_assert!((s - bs).abs() < 1e-12 && (c - bc).abs() < 1e-12);
    }

    #[test]
    fn root_product_and_residuals(coeffs in prop::collection::vec(-5.0f64..5.0, 3..9)) {
        prop_assume!(coeffs[0].abs() > 0.1 && coeffs.last().unwrap().abs() > 0.1);
        let p = Polynomial::new(coeffs.clone());
        let roots = match poly_roots(&p) {
            Ok(r) => r,
            // clustered roots may legitimately be rejected
            Err(_) => return Ok(()),
        };
        let deg = p.degree();
        prop_assert_eq!(roots.len(), deg);
        let prod = roots.iter().fold(num_complex::Complex::new(1.0, 0.0), |a, z| a * z);
        let sign = if deg % 2 == 0 { 1.0 } else { -1.0 };
        let expected = sign * coeffs[0] / coeffs[deg];
        prop_assert!((prod.re - expected).abs() <= 1e-10 * expected.abs() && prod.im.abs() <= 1e-10 * expected.abs());
    }

    #[test]
    fn characteristic_roots_pair_reciprocally(m in 2usize..=5, hw in 0.05f64..=1.0) {
        let cfg = SplineConfig::new(m, hw * 20.0, 20).unwrap();
        let p = characteristic_poly::<Dd>(&cfg);
        let roots = poly_roots(&p).unwrap();
        for z in &roots {
            let inv = num_complex::Complex::new(Dd::ONE, Dd::ZERO) / *z;
            let closest = roots.iter().map(|w| cabs(*w - inv).to_f64()).fold(f64::INFINITY, f64::min);
            prop_assert!(closest <= 1e-9 * cabs(inv).to_f64().max(1.0));
        }
        let op = build_operator::<Dd>(&cfg).unwrap();
        prop_assert_eq!(op.lambda().len(), m - 1);
        prop_assert!(op.lambda().iter().all(|z| cabs(*z).to_f64() < 1.0));
        let top = *p.coeffs().last().unwrap();
        let lead = leading_coeff::<Dd>(&cfg).unwrap();
        prop_assert!(((lead - top) / top).abs().to_f64() <= 1e-12);
        for beta in 0..30 {
            let (v, im) = op.eval_d_checked(beta);
            prop_assert!(im.abs().to_f64() <= 1e-10 * v.abs().to_f64());
        }
    }

    #[test]
    fn kernel_is_even(m in 2usize..=6, omega in 0.1f64..5.0, x in -1.0f64..1.0) {
        prop_assert_eq!(g(m, omega, x), g(m, omega, -x));
        let xd = Dd::from_f64(x);
        prop_assert_eq!(g(m, Dd::from_f64(omega), xd), g(m, Dd::from_f64(omega), -xd));
    }

    #[test]
    fn kernel_derivatives_match_differences(m in 2usize..=5, j in 1usize..=4, x in 0.05f64..1.0, neg in any::<bool>()) {
        prop_assume!(j <= 2 * m);
        let x = if neg { -x } else { x };
        let w = Dd::from_f64(1.3);
        let h = Dd::from_f64(1e-8);
        let xd = Dd::from_f64(x);
        let fd = (g_derivative(m, w, j - 1, xd + h).unwrap() - g_derivative(m, w, j - 1, xd - h).unwrap())
            / (h + h);
        let exact = g_derivative(m, w, j, xd).unwrap();
        prop_assert!((fd - exact).abs().to_f64() <= 1e-5 * exact.abs().to_f64().max(1e-6));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn splines_interpolate_and_satisfy_side_conditions((cfg, v) in config_and_samples()) {
        let s = SampleSet::new(&cfg, v.clone()).unwrap();
        let sp = build_spline::<Dd>(&cfg, &s).unwrap();
        let co = sp.coefficients();
        prop_assert!(co.side_conditions(&cfg).max() <= 1e-8 * co.max_abs_c().max(1.0));
        let scale = s.max_abs().max(1.0);
        for (x, &val) in uniform_nodes::<Dd>(&cfg).iter().zip(&v) {
            prop_assert!((sp.eval(*x).unwrap() - Dd::from_f64(val)).abs().to_f64() <= 1e-8 * scale);
        }
    }

    #[test]
    fn operator_path_matches_dense_oracle((cfg, v) in config_and_samples()) {
        let s = SampleSet::new(&cfg, v.clone()).unwrap();
        let sp = build_spline::<Dd>(&cfg, &s).unwrap();
        let dense = dense_solve_uniform::<Dd>(&cfg, &v).unwrap();
        prop_assert!(dense.relative_residual <= 1e-9);
        prop_assert!(dense.coeffs.side_conditions(&cfg).max() <= 1e-8 * dense.coeffs.max_abs_c().max(1.0));
        let rep = compare(sp.coefficients(), &dense.coeffs, 1e-6).unwrap();
        prop_assert!(rep.pass, "deviation {:e}", rep.max_rel());
    }

    #[test]
    fn null_space_members_are_exact(cfg in config(), which in 0usize..5, x in 0.0f64..=1.0) {
        let w = Dd::from_f64(cfg.omega());
        let m = cfg.m();
        // Samples are generated in Dd so the data lie in the null space to that precision.
        let f = move |t: Dd| match which {
            0 => (w * t).sin(),
            1 => (w * t).cos(),
            a => if a - 2 < m - 2 { t.powi((a - 2) as i32) } else { (w * t).sin() },
        };
        let values: Vec<Dd> = uniform_nodes::<Dd>(&cfg).into_iter().map(f).collect();
        let sp = build_spline::<Dd>(&cfg, &values).unwrap();
        let xd = Dd::from_f64(x);
        let err = (sp.eval(xd).unwrap() - f(xd)).abs().to_f64();
        prop_assert!(err <= 1e-7);
        prop_assert!(sp.seminorm(10 * (cfg.n() + 1)).unwrap().to_f64() <= 1e-7);
    }

    #[test]
    fn rounded_null_space_data_stay_exact_pointwise(cfg in config(), x in 0.0f64..=1.0) {
        let w = cfg.omega();
        let sp = build_spline::<Dd>(&cfg, &SampleSet::from_fn(&cfg, |t| (w * t).cos()).unwrap()).unwrap();
        prop_assert!((sp.eval(Dd::from_f64(x)).unwrap().to_f64() - (w * x).cos()).abs() <= 1e-7);
    }

    #[test]
    fn dense_oracle_accepts_nonuniform_nodes(m in 2usize..=4, gaps in prop::collection::vec(0.1f64..1.0, 6..12)) {
        let n = gaps.len();
        let total: f64 = gaps.iter().sum();
        let mut nodes = vec![0.0f64];
        for gp in &gaps {
            nodes.push((nodes.last().unwrap() + gp / total).min(1.0));
        }
        let cfg = SplineConfig::new(m, 1.0, n).unwrap();
        let samples: Vec<f64> = nodes.iter().map(|x| (3.0 * x).exp()).collect();
        let nd: Vec<Dd> = nodes.iter().map(|&x| Dd::from_f64(x)).collect();
        let sol = dense_solve(&cfg, &nd, &samples).unwrap();
        prop_assert!(sol.relative_residual <= 1e-9);
    }
}

#[test]
fn euler_frobenius_integers() {
    let mut fact: i128 = 1;
    for k in 0..=8u32 {
        fact *= k as i128 + 1;
        let c = euler_frobenius_coeffs(k);
        let rev: Vec<i128> = c.iter().rev().copied().collect();
        assert_eq!(c, rev);
        assert_eq!(c.iter().sum::<i128>(), fact);
    }
}
