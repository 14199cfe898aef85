use genfit::{maximize, Method, OptimizerConfig};

fn concave(x: &[f64]) -> f64 {
    -(x[0] - 1.0).powi(2) - 2.0 * (x[1] + 0.5).powi(2) - 0.5 * (x[0] - x[1]).powi(2) - (x[2] - 3.0).powi(2)
}

fn methods() -> [Method; 4] {
    [Method::NelderMead, Method::Bfgs, Method::Cg, Method::Sann]
}

#[test]
fn never_worse_than_start() {
    let x0 = [5.0, -4.0, 0.0];
    for m in methods() {
        let r = maximize(concave, &x0, &OptimizerConfig::with_method(m)).unwrap();
        assert!(r.f_opt >= concave(&x0), "{m}");
        assert_eq!(r.f_opt, concave(&r.x_opt));
    }
}

#[test]
fn deterministic_given_seed() {
    for m in methods() {
        let cfg = OptimizerConfig { seed: 11, ..OptimizerConfig::with_method(m) };
        let a = maximize(concave, &[0.0, 0.0, 0.0], &cfg).unwrap();
        let b = maximize(concave, &[0.0, 0.0, 0.0], &cfg).unwrap();
        assert_eq!(a.x_opt, b.x_opt);
        assert_eq!(a.n_evals, b.n_evals);
    }
}

#[test]
fn nelder_mead_and_bfgs_agree() {
    let problems: [(fn(&[f64]) -> f64, Vec<f64>); 3] = [
        (concave, vec![5.0, -4.0, 0.0]),
        (|x| -(x[0].exp() - x[0]) - (x[1] - 2.0).powi(4) - x[1].powi(2), vec![1.0, 1.0]),
        (|x| -(x[0] * x[0] + 1.0).ln() - (x[1] - 0.3).powi(2) - 0.1 * x[0] * x[1], vec![0.8, -0.7]),
    ];
    for (f, x0) in problems {
        let nm = maximize(f, &x0, &OptimizerConfig::with_method(Method::NelderMead)).unwrap();
        let bfgs = maximize(f, &x0, &OptimizerConfig::with_method(Method::Bfgs)).unwrap();
        assert!((nm.f_opt - bfgs.f_opt).abs() < 1e-4, "{} vs {}", nm.f_opt, bfgs.f_opt);
    }
}

#[test]
fn stays_in_feasible_half_space() {
    let f = |x: &[f64]| {
        if x[0] + x[1] > 1.0 {
            f64::NEG_INFINITY
        } else {
            -(x[0] - 2.0).powi(2) - (x[1] - 2.0).powi(2)
        }
    };
    for m in methods() {
        let r = maximize(f, &[0.0, 0.0], &OptimizerConfig::with_method(m)).unwrap();
        assert!(r.x_opt[0] + r.x_opt[1] <= 1.0, "{m}");
        assert!((r.x_opt[0] - 0.5).abs() < 0.05 && (r.x_opt[1] - 0.5).abs() < 0.05, "{m}: {:?}", r.x_opt);
    }
}

#[test]
fn rosenbrock_from_the_classic_start() {
    let f = |x: &[f64]| -(100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2));
    for m in [Method::NelderMead, Method::Bfgs] {
        let r = maximize(f, &[-1.2, 1.0], &OptimizerConfig::with_method(m)).unwrap();
        assert!((r.x_opt[0] - 1.0).abs() < 1e-4 && (r.x_opt[1] - 1.0).abs() < 1e-4, "{m}: {:?}", r.x_opt);
    }
}
