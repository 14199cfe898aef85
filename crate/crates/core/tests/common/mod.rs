#![allow(dead_code)]

use genfit::{BaseDist, Domain, Family, Model};
use rand::Rng;

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Piece {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err).is_eq()
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn piece(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> Piece {
    let (value, e) = gk15(f, lo, hi);
    Piece {
        lo,
        hi,
        value,
        err: if e.is_nan() { 0.0 } else { e },
    }
}

/// Globally adaptive Gauss–Kronrod quadrature: repeatedly bisects the
/// subinterval with the largest error estimate until the summed estimate is
/// below `tol` or the interval budget runs out.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, panels: usize) -> f64 {
    let w = (b - a) / panels as f64;
    let mut heap: std::collections::BinaryHeap<Piece> = (0..panels)
        .map(|i| {
            let lo = a + i as f64 * w;
            let hi = if i + 1 == panels { b } else { lo + w };
            piece(f, lo, hi)
        })
        .collect();
    let mut err: f64 = heap.iter().map(|p| p.err).sum();
    while err > tol && heap.len() < 20_000 {
        let worst = heap.pop().unwrap();
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            heap.push(worst);
            break;
        }
        let left = piece(f, worst.lo, mid);
        let right = piece(f, mid, worst.hi);
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    heap.iter().map(|p| p.value).sum()
}

/// Root of a monotone function by bisection on [lo, hi].
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let increasing = f(hi) > f(lo);
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if (f(mid) < 0.0) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A uniform draw from the interior of a parameter domain.
pub fn draw_in(d: Domain, rng: &mut impl Rng) -> f64 {
    match d {
        Domain::Positive => rng.gen_range(0.5..5.0),
        Domain::Real => rng.gen_range(-2.0..2.0),
        Domain::Unit => rng.gen_range(0.05..0.95),
        Domain::Symmetric => rng.gen_range(-0.9..0.9),
    }
}

pub fn draw_theta(model: &Model, rng: &mut impl Rng) -> Vec<f64> {
    model.domains().into_iter().map(|d| draw_in(d, rng)).collect()
}

pub fn all_models(location: bool) -> Vec<Model> {
    Family::ALL
        .iter()
        .flat_map(|&f| BaseDist::ALL.iter().map(move |&b| Model::new(f, b, location)))
        .collect()
}

/// ∫ pdf over (quantile(lo_p), quantile(1 − hi_q)) in the variable
/// s = ln(x − μ).
/// Mass between the quantiles at lower-tail `lo_p` and upper-tail `hi_q`,
/// by quadrature of the density of s = ln(x − μ) so neither the shift nor a
/// far upper quantile costs precision.
pub fn mass(model: &Model, theta: &[f64], lo_p: f64, hi_q: f64) -> f64 {
    let d = model.dist(theta).unwrap();
    let s_lo = d.quantile_log_scale(lo_p, 1.0 - lo_p).unwrap();
    let s_hi = d.quantile_log_scale(1.0 - hi_q, hi_q).unwrap();
    let f = |s: f64| d.ln_pdf_log_scale(s).exp();
    integrate(&f, s_lo, s_hi, 1e-8, 32)
}
