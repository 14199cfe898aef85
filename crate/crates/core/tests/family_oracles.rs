use genfit::{Domain, Family};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn draw_induced(f: Family, rng: &mut impl Rng) -> Vec<f64> {
    (0..f.n_induced())
        .map(|i| match f.induced_domain(i) {
            Domain::Symmetric => rng.gen_range(-0.9..0.9),
            Domain::Unit => rng.gen_range(0.05..0.95),
            _ => rng.gen_range(0.5..5.0),
        })
        .collect()
}

fn reductions() -> Vec<(Family, Vec<f64>)> {
    use Family::*;
    vec![
        (ExpG, vec![1.0]),
        (KumG, vec![1.0, 1.0]),
        (BetaG, vec![1.0, 1.0]),
        (ExpGG, vec![1.0, 1.0]),
        (ExpKumG, vec![1.0, 1.0, 1.0]),
        (GBetaG, vec![1.0, 1.0, 1.0]),
        (MBetaG, vec![1.0, 1.0, 1.0]),
        (MoG, vec![1.0]),
        (MoKumG, vec![1.0, 1.0, 1.0]),
        (GammaG, vec![1.0]),
        (GammaG1, vec![1.0]),
        (LogGammaG1, vec![1.0, 1.0]),
        (LogGammaG2, vec![1.0, 1.0]),
        (WeibullG, vec![1.0, 1.0]),
        (GTransG, vec![1.0, 0.0]),
        (OLogLogG, vec![1.0, 1.0, 1.0]),
        (BetaExpG, vec![1.0, 1.0, 1.0]),
    ]
}

#[test]
fn reduction_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cases = reductions();
    assert_eq!(cases.len(), 17);
    for (f, ind) in cases {
        for _ in 0..100 {
            let u: f64 = rng.gen();
            let h = f.h_forward(u, &ind).unwrap();
            assert!((h - u).abs() <= 1e-12, "{f} at u={u}: {h}");
        }
    }
}

#[test]
fn betaexpg_with_unit_d_is_swapped_betag() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let a = rng.gen_range(0.3..6.0);
        let b = rng.gen_range(0.3..6.0);
        let u: f64 = rng.gen();
        let lhs = Family::BetaExpG.h_forward(u, &[a, b, 1.0]).unwrap();
        let rhs = Family::BetaG.h_forward(u, &[b, a]).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12, "a={a} b={b} u={u}");
    }
}

// Differences the smaller of h and 1 − h so the subtraction keeps its digits.
fn central_difference(f: Family, ind: &[f64], u: f64) -> f64 {
    let step = 1e-5 * u.min(1.0 - u);
    let (lo, hi) = (u - step, u + step);
    let (h_lo, hc_lo) = f.h_pair(lo, 1.0 - lo, ind);
    let (h_hi, hc_hi) = f.h_pair(hi, 1.0 - hi, ind);
    if h_lo < 0.5 {
        (h_hi - h_lo) / (hi - lo)
    } else {
        (hc_lo - hc_hi) / (hi - lo)
    }
}

#[test]
fn log_derivative_matches_finite_difference() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for f in Family::ALL {
        for _ in 0..5 {
            let ind = draw_induced(f, &mut rng);
            for j in 1..=20 {
                let u = j as f64 / 21.0;
                let fd = central_difference(f, &ind, u);
                let an = f.ln_h_prime(u, &ind).unwrap().exp();
                if an < 1e-200 && fd.abs() < 1e-200 {
                    continue;
                }
                let rel = (fd - an).abs() / an.abs().max(1e-300);
                assert!(rel <= 1e-5, "{f} {ind:?} u={u}: fd={fd} an={an}");
            }
        }
    }
}

#[test]
fn inverse_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for i in 0..1000 {
        let f = Family::ALL[i % Family::ALL.len()];
        let ind = draw_induced(f, &mut rng);
        let p: f64 = rng.gen();
        let u = f.h_inverse(p, &ind).unwrap();
        let back = f.h_forward(u, &ind).unwrap();
        assert!((back - p).abs() <= 1e-9, "{f} {ind:?} p={p} u={u} h={back}");
    }
}

#[test]
fn forward_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for f in Family::ALL {
        for _ in 0..100 {
            let ind = draw_induced(f, &mut rng);
            let mut prev = 0.0;
            for j in 0..=1000 {
                let u = j as f64 / 1000.0;
                let h = f.h_forward(u, &ind).unwrap();
                assert!((0.0..=1.0).contains(&h), "{f} {ind:?} u={u}");
                assert!(h >= prev - 1e-15, "{f} {ind:?} u={u}: {h} < {prev}");
                prev = h;
            }
        }
    }
}

proptest! {
    #[test]
    fn complement_is_consistent(fi in 0usize..24, u in 0.0f64..1.0, seed in 0u64..1000) {
        let f = Family::ALL[fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ind = draw_induced(f, &mut rng);
        let (h, hc) = f.h_pair(u, 1.0 - u, &ind);
        prop_assert!((h + hc - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn inverse_of_upper_tail(fi in 0usize..24, pc in 1e-14f64..1e-3, seed in 0u64..1000) {
        let f = Family::ALL[fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ind = draw_induced(f, &mut rng);
        let (u, uc) = f.h_inverse_pair(1.0 - pc, pc, &ind).unwrap();
        // 1 − u itself may underflow, which no pair of doubles can carry
        prop_assume!(uc > 1e-300);
        let (_, hc) = f.h_pair(u, uc, &ind);
        prop_assert!(((hc - pc) / pc).abs() <= 1e-6, "{} {:?} pc={} hc={}", f, ind, pc, hc);
    }
}
