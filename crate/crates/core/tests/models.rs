mod common;

use common::{all_models, draw_theta};
use genfit::gof::{ks_test, KsMethod};
use genfit::{BaseDist, Family, Model, ShiftedParams, TailFlags};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const UPPER: TailFlags = TailFlags {
    log_p: false,
    lower_tail: false,
};

#[test]
fn betaexpg_unit_shapes_is_gamma() {
    let m = Model::new(Family::BetaExpG, BaseDist::Gamma, true);
    let d = m.dist(&[1.0, 1.0, 1.0, 2.0, 1.0, 0.0]).unwrap();
    let p = ShiftedParams::new(BaseDist::Gamma, &[2.0, 1.0], 0.0).unwrap();
    for i in 1..=200 {
        let x = i as f64 * 0.1;
        let (f, g) = (d.cdf(x, TailFlags::default()), BaseDist::Gamma.cdf(x, &p));
        assert!((f - g).abs() < 1e-12, "cdf at {x}");
        let (f, g) = (d.pdf(x, false), BaseDist::Gamma.pdf(x, &p));
        assert!((f - g).abs() < 1e-12 * (1.0 + g), "pdf at {x}");
    }
}

#[test]
fn cdf_at_infinity_is_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for m in all_models(true) {
        let theta = draw_theta(&m, &mut rng);
        let d = m.dist(&theta).unwrap();
        assert_eq!(d.cdf(f64::INFINITY, TailFlags::default()), 1.0, "{} {}", m.family, m.base);
        assert_eq!(d.cdf(d.mu(), TailFlags::default()), 0.0);
        assert!(d.pdf(d.mu() - 1.0, false) == 0.0);
    }
}

#[test]
fn upper_tail_flags() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for m in all_models(true) {
        let theta = draw_theta(&m, &mut rng);
        let d = m.dist(&theta).unwrap();
        let x = d.quantile(rng.gen_range(0.05..0.95), TailFlags::default()).unwrap();
        let f = d.cdf(x, TailFlags::default());
        assert!((d.cdf(x, UPPER) - (1.0 - f)).abs() <= 1e-15);
        let p: f64 = rng.gen_range(0.05..0.95);
        let a = d.quantile(p, UPPER).unwrap();
        let b = d.quantile_pair(1.0 - p, p).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn samples_pass_ks_in_most_replications() {
    let cases = [
        (Family::KumG, BaseDist::Weibull, vec![2.0, 0.7, 1.5, 2.0, 1.0]),
        (Family::MoG, BaseDist::Exp, vec![0.4, 1.3, 0.0]),
        (Family::GammaG2, BaseDist::LogNormal, vec![1.7, 0.2, 0.8, -1.0]),
    ];
    for (fam, base, theta) in cases {
        let d = Model::new(fam, base, true).dist(&theta).unwrap();
        let passed = (0..100)
            .filter(|&rep| {
                let mut x = d.sample(500, 1000 + rep).unwrap();
                assert!(x.iter().all(|&v| v > d.mu()));
                x.sort_by(f64::total_cmp);
                let u: Vec<f64> = x.iter().map(|&v| d.cdf(v, TailFlags::default())).collect();
                ks_test(&u, KsMethod::Asymptotic).p_value > 0.05
            })
            .count();
        assert!(passed >= 90, "{fam}/{base}: {passed} of 100");
    }
}

#[test]
fn empty_sample() {
    let d = Model::new(Family::ExpG, BaseDist::Exp, false).dist(&[2.0, 1.0]).unwrap();
    assert!(d.sample(0, 1).unwrap().is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shifting_data_shifts_the_model(mi in 0usize..360, seed in 0u64..10_000, shift in -50.0f64..50.0, q in 0.01f64..0.99) {
        let m = all_models(true)[mi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut theta = draw_theta(&m, &mut rng);
        let d0 = m.dist(&theta).unwrap();
        *theta.last_mut().unwrap() += shift;
        let d1 = m.dist(&theta).unwrap();
        let x0 = d0.quantile(q, TailFlags::default()).unwrap();
        let x1 = d1.quantile(q, TailFlags::default()).unwrap();
        let scale = 1.0 + x0.abs() + shift.abs();
        prop_assert!((x1 - (x0 + shift)).abs() <= 1e-9 * scale);
        let t = x0 - d0.mu();
        let l0 = d0.pdf(d0.mu() + t, true);
        let l1 = d1.pdf(d1.mu() + t, true);
        if l0.is_finite() && t > 1e-6 {
            prop_assert!((l0 - l1).abs() <= 1e-6 * (1.0 + l0.abs()), "{l0} vs {l1}");
        }
    }

    #[test]
    fn cdf_is_monotone(mi in 0usize..360, seed in 0u64..10_000) {
        let m = all_models(true)[mi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = m.dist(&draw_theta(&m, &mut rng)).unwrap();
        let hi = d.quantile(0.999, TailFlags::default()).unwrap();
        let mut prev = 0.0;
        for i in 0..=200 {
            let x = d.mu() + (hi - d.mu()) * i as f64 / 200.0;
            let v = d.cdf(x, TailFlags::default());
            prop_assert!(v >= prev);
            prev = v;
        }
    }
}
