//! Maximum product of spacings estimation and Moran's goodness-of-fit test.

use serde::{Deserialize, Serialize};

use crate::base::BaseDist;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::model::{GDist, Model, ParameterVector};
use crate::optim::{maximize, OptResult, OptimizerConfig};
use crate::special::{chi_square_quantile, chi_square_sf};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Sorted observations and the model they are fitted to.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingContext {
    sorted: Vec<f64>,
    model: Model,
}

/// Log-spacings at a parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct Spacings {
    /// ln Dᵢ for i = 1..=m, with tied points replaced by ln f(x₍ᵢ₎).
    pub log_d: Vec<f64>,
    /// Σ Dᵢ over the untied spacings plus the tied ones (which are 0).
    pub total: f64,
    /// Number of spacings replaced by the density at a tied point.
    pub ties: usize,
}

impl SpacingContext {
    pub fn new(data: &[f64], model: Model) -> Result<Self> {
        if data.len() < 2 {
            return Err(Error::TooFewObservations {
                needed: 2,
                got: data.len(),
            });
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain("spacing context", format!("non-finite observation {bad}")));
        }
        let mut sorted = data.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(SpacingContext { sorted, model })
    }

    pub fn data(&self) -> &[f64] {
        &self.sorted
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn n(&self) -> usize {
        self.sorted.len()
    }

    pub fn m(&self) -> usize {
        self.sorted.len() + 1
    }

    pub fn spacings(&self, dist: &GDist) -> Spacings {
        let mut log_d = Vec::with_capacity(self.m());
        let mut total = 0.0;
        let mut ties = 0;
        let (mut f_prev, mut fc_prev) = (0.0, 1.0);
        let mut x_prev = f64::NEG_INFINITY;
        for &x in &self.sorted {
            let (f, fc) = dist.cdf_pair(x);
            if x == x_prev {
                log_d.push(dist.ln_pdf(x));
                ties += 1;
            } else {
                let d = if f_prev > 0.5 { fc_prev - fc } else { f - f_prev };
                total += d;
                log_d.push(d.ln());
            }
            f_prev = f;
            fc_prev = fc;
            x_prev = x;
        }
        total += fc_prev;
        log_d.push(fc_prev.ln());
        Spacings { log_d, total, ties }
    }

    /// S(θ) = (1/m) Σ ln Dᵢ in the natural parameterization; −∞ when θ is
    /// outside the parameter space.
    pub fn mean_log_spacing(&self, theta: &[f64]) -> f64 {
        match self.model.dist(theta) {
            Ok(d) => self.mean_of(&self.spacings(&d)),
            Err(_) => f64::NEG_INFINITY,
        }
    }

    fn mean_of(&self, s: &Spacings) -> f64 {
        let v = s.log_d.iter().sum::<f64>() / self.m() as f64;
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    }

    /// S as a function of the unconstrained coordinates.
    pub fn spacing_objective(&self, free: &[f64]) -> f64 {
        match self.from_free(free) {
            Some(theta) => self.mean_log_spacing(&theta),
            None => f64::NEG_INFINITY,
        }
    }

    /// Maps natural parameters to unconstrained coordinates; μ is carried as
    /// ln(x₍₁₎ − μ).
    pub fn to_free(&self, theta: &[f64]) -> Vec<f64> {
        let domains = self.model.domains();
        let x1 = self.sorted[0];
        theta
            .iter()
            .zip(&domains)
            .enumerate()
            .map(|(i, (&v, d))| {
                if self.is_location(i) {
                    (x1 - v).ln()
                } else {
                    d.to_free(v)
                }
            })
            .collect()
    }

    /// Inverse of [`SpacingContext::to_free`]; `None` if a coordinate maps
    /// outside its domain (overflow or saturation).
    pub fn from_free(&self, free: &[f64]) -> Option<Vec<f64>> {
        let domains = self.model.domains();
        if free.len() != domains.len() {
            return None;
        }
        let x1 = self.sorted[0];
        let mut out = Vec::with_capacity(free.len());
        for (i, (&psi, d)) in free.iter().zip(&domains).enumerate() {
            let v = if self.is_location(i) {
                let mu = x1 - psi.exp();
                if !(mu < x1) || !mu.is_finite() {
                    return None;
                }
                mu
            } else {
                let v = d.from_free(psi);
                if !d.contains(v) {
                    return None;
                }
                v
            };
            out.push(v);
        }
        Some(out)
    }

    fn is_location(&self, index: usize) -> bool {
        self.model.location && index + 1 == self.model.n_params()
    }

    /// Candidate starting points, most plausible first.
    pub fn starting_points(&self) -> Vec<Vec<f64>> {
        let n = self.n() as f64;
        let x1 = self.sorted[0];
        let mean = self.sorted.iter().sum::<f64>() / n;
        let var = self.sorted.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let sd = var.sqrt();
        let spread = if sd > 0.0 { sd } else { x1.abs().max(1.0) };
        let mus: Vec<f64> = if self.model.location {
            vec![x1 - spread / n, x1 - spread, x1 - 0.01 * spread]
        } else {
            vec![0.0]
        };
        let induced = self.model.family.start_values();
        let mut out = Vec::new();
        for mu in mus {
            let t: Vec<f64> = self.sorted.iter().map(|x| x - mu).collect();
            if t.iter().any(|&v| !(v > 0.0)) {
                continue;
            }
            for scale in [1.0, 0.5, 2.0] {
                let mut theta = induced.clone();
                theta.extend(moment_start(self.model.base, &t, scale));
                if self.model.location {
                    theta.push(mu);
                }
                out.push(theta);
            }
        }
        out
    }
}

/// Moment-type starting values for the base parameters on positive data t,
/// with the scale parameter multiplied by `scale`.
fn moment_start(base: BaseDist, t: &[f64], scale: f64) -> Vec<f64> {
    let n = t.len() as f64;
    let mean = t.iter().sum::<f64>() / n;
    let var = (t.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).max(1e-12 * mean * mean);
    let logs: Vec<f64> = t.iter().map(|x| x.ln()).collect();
    let mean_log = logs.iter().sum::<f64>() / n;
    let sd_log = (logs.iter().map(|l| (l - mean_log).powi(2)).sum::<f64>() / n)
        .sqrt()
        .max(1e-3);
    let mut sorted = t.to_vec();
    sorted.sort_by(f64::total_cmp);
    let med = if sorted.len() % 2 == 1 {
        sorted[sorted.len() / 2]
    } else {
        0.5 * (sorted[sorted.len() / 2 - 1] + sorted[sorted.len() / 2])
    };
    let t_max = sorted[sorted.len() - 1];
    let ln2 = std::f64::consts::LN_2;
    let clean = |v: f64, fallback: f64| if v.is_finite() && v > 0.0 { v } else { fallback };
    let v = match base {
        BaseDist::BirnbaumSaunders => {
            let harmonic = n / t.iter().map(|x| 1.0 / x).sum::<f64>();
            let ratio = (mean / harmonic).max(1.0);
            let alpha = clean((2.0 * (ratio.sqrt() - 1.0)).sqrt(), 0.5);
            vec![alpha, (mean * harmonic).sqrt() * scale]
        }
        BaseDist::BurrXii => {
            let m = med / scale;
            vec![1.0, clean(ln2 / m.ln_1p(), 1.0)]
        }
        BaseDist::Chen => {
            let m = med / scale;
            let alpha = clean(ln2 / (t_max / scale).ln(), 0.5).min(5.0);
            vec![alpha, clean(ln2 / m.powf(alpha).exp_m1(), 1.0)]
        }
        BaseDist::ChiSq => vec![mean * scale],
        BaseDist::Exp => vec![1.0 / (mean * scale)],
        BaseDist::F => vec![1.0, 1.0],
        BaseDist::Frechet => {
            let alpha = std::f64::consts::PI / (sd_log * 6f64.sqrt());
            vec![alpha, (mean_log - EULER_GAMMA / alpha).exp() * scale]
        }
        BaseDist::Gamma => vec![mean * mean / var, var / mean * scale],
        BaseDist::Gompertz => {
            let m = med * scale;
            let beta = 1.0 / (mean * scale);
            vec![clean(beta * ln2 / (beta * m).exp_m1(), beta), beta]
        }
        BaseDist::Lfr => {
            let m = med * scale;
            vec![ln2 / (2.0 * m), ln2 / (m * m)]
        }
        BaseDist::LogLogistic => {
            vec![std::f64::consts::PI / (sd_log * 3f64.sqrt()), med * scale]
        }
        BaseDist::LogNormal => vec![mean_log + scale.ln(), sd_log],
        BaseDist::Lomax => {
            let alpha = 2.0;
            vec![alpha, (2f64.powf(1.0 / alpha) - 1.0) / (med * scale)]
        }
        BaseDist::Rayleigh => {
            vec![(t.iter().map(|x| x * x).sum::<f64>() / n).sqrt() * scale]
        }
        BaseDist::Weibull => {
            let alpha = std::f64::consts::PI / (sd_log * 6f64.sqrt());
            vec![alpha, (mean_log + EULER_GAMMA / alpha).exp() * scale]
        }
    };
    v.into_iter()
        .enumerate()
        .map(|(i, x)| match base.param_domain(i) {
            Domain::Positive => clean(x, 1.0),
            _ => x,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: Model,
    pub theta_hat: ParameterVector,
    /// θ̂ as a flat vector in the interface ordering.
    pub estimate: Vec<f64>,
    pub s_opt: f64,
    pub moran: f64,
    pub ties: usize,
    pub k: usize,
    pub n: usize,
    pub convergence: OptResult,
}

impl FitResult {
    pub fn dist(&self) -> GDist {
        self.model
            .dist(&self.estimate)
            .expect("fitted parameters lie in the parameter space")
    }
}

/// Maximizes the mean log-spacing from every feasible starting point and
/// keeps the best optimum.
pub fn fit(ctx: &SpacingContext, config: &OptimizerConfig) -> Result<FitResult> {
    let objective = |z: &[f64]| ctx.spacing_objective(z);
    let mut starts: Vec<(Vec<f64>, f64)> = ctx
        .starting_points()
        .into_iter()
        .map(|theta| {
            let z = ctx.to_free(&theta);
            let s = objective(&z);
            (z, s)
        })
        .filter(|(_, s)| s.is_finite())
        .collect();
    if starts.is_empty() {
        return Err(Error::FitFailed(format!(
            "objective is -inf at every starting point for {}/{}",
            ctx.model.family, ctx.model.base
        )));
    }
    starts.sort_by(|a, b| b.1.total_cmp(&a.1));
    starts.truncate(3);
    let mut best: Option<OptResult> = None;
    for (i, (z, _)) in starts.iter().enumerate() {
        let cfg = OptimizerConfig {
            seed: config.seed.wrapping_add(i as u64),
            ..*config
        };
        let r = match maximize(objective, z, &cfg) {
            Ok(r) => r,
            Err(Error::InfeasibleStart) => continue,
            Err(e) => return Err(e),
        };
        if best.as_ref().is_none_or(|b| r.f_opt > b.f_opt) {
            best = Some(r);
        }
    }
    let opt = best.ok_or_else(|| Error::FitFailed("all restarts were infeasible".into()))?;
    if !opt.f_opt.is_finite() {
        return Err(Error::FitFailed(opt.message));
    }
    let estimate = ctx
        .from_free(&opt.x_opt)
        .ok_or_else(|| Error::FitFailed("optimum left the parameter space".into()))?;
    let dist = ctx.model.dist(&estimate)?;
    let sp = ctx.spacings(&dist);
    let s_opt = ctx.mean_of(&sp);
    Ok(FitResult {
        model: ctx.model,
        theta_hat: dist.theta().clone(),
        estimate,
        s_opt,
        moran: -sp.log_d.iter().sum::<f64>(),
        ties: sp.ties,
        k: ctx.model.n_params(),
        n: ctx.n(),
        convergence: opt,
    })
}

/// Moran statistic M(θ) = −Σ ln Dᵢ at a given parameter point.
pub fn moran_statistic(ctx: &SpacingContext, theta: &[f64]) -> Result<f64> {
    let d = ctx.model.dist(theta)?;
    Ok(-ctx.spacings(&d).log_d.iter().sum::<f64>())
}

/// Approximate mean and variance of Moran's statistic for n observations.
pub fn moran_moments(n: usize) -> (f64, f64) {
    let m = (n + 1) as f64;
    let mean = m * (m.ln() + 0.57722) - 0.5 - 1.0 / (12.0 * m);
    let var = m * (std::f64::consts::PI.powi(2) / 6.0 - 1.0) - 0.5 - 1.0 / (6.0 * m);
    (mean, var)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoranTest {
    pub statistic: f64,
    pub critical: f64,
    pub p_value: f64,
    pub df: usize,
}

/// Chi-square approximation to Moran's statistic with k estimated parameters.
pub fn moran_chi_square_test(moran: f64, n: usize, k: usize, sig_level: f64) -> Result<MoranTest> {
    if n < 2 {
        return Err(Error::TooFewObservations { needed: 2, got: n });
    }
    if !(sig_level > 0.0 && sig_level < 1.0) {
        return Err(Error::domain("moran test", format!("significance level {sig_level} outside (0, 1)")));
    }
    let (mean, var) = moran_moments(n);
    let nf = n as f64;
    let c2 = (var / (2.0 * nf)).sqrt();
    let c1 = mean - nf * c2;
    let statistic = (moran + k as f64 / 2.0 - c1) / c2;
    Ok(MoranTest {
        statistic,
        critical: chi_square_quantile(1.0 - sig_level, nf)?,
        p_value: chi_square_sf(statistic.max(0.0), nf)?,
        df: n,
    })
}
