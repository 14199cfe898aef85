//! Derivative-free and quasi-Newton maximizers over unconstrained vectors.
//!
//! Objectives signal infeasibility by returning −∞ (NaN is treated the same),
//! and every method simply refuses to move to such points.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    NelderMead,
    Bfgs,
    Cg,
    Sann,
}

impl Method {
    pub fn id(self) -> &'static str {
        match self {
            Method::NelderMead => "nelder-mead",
            Method::Bfgs => "bfgs",
            Method::Cg => "cg",
            Method::Sann => "sann",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Case-insensitive; "nedler-mead" and "l-bfgs-b" are accepted aliases.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "nelder-mead" | "nedler-mead" | "nm" => Ok(Method::NelderMead),
            "bfgs" | "l-bfgs-b" | "lbfgsb" => Ok(Method::Bfgs),
            "cg" => Ok(Method::Cg),
            "sann" => Ok(Method::Sann),
            _ => Err(Error::domain("method", format!("unknown optimizer '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub method: Method,
    pub max_iter: usize,
    pub f_tol: f64,
    pub x_tol: f64,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            method: Method::NelderMead,
            max_iter: 2000,
            f_tol: 1e-10,
            x_tol: 1e-8,
            restarts: 3,
            seed: 1,
        }
    }
}

impl OptimizerConfig {
    pub fn with_method(method: Method) -> Self {
        OptimizerConfig {
            method,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.f_tol > 0.0 && self.x_tol > 0.0) {
            return Err(Error::domain("optimizer", "tolerances must be positive"));
        }
        if self.max_iter == 0 {
            return Err(Error::domain("optimizer", "max_iter must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    pub x_opt: Vec<f64>,
    pub f_opt: f64,
    pub n_evals: usize,
    pub converged: bool,
    pub message: String,
}

struct Counted<'a, F> {
    f: &'a F,
    evals: Cell<usize>,
}

impl<F: Fn(&[f64]) -> f64> Counted<'_, F> {
    fn eval(&self, x: &[f64]) -> f64 {
        self.evals.set(self.evals.get() + 1);
        let v = (self.f)(x);
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    }
}

struct Run {
    x: Vec<f64>,
    f: f64,
    converged: bool,
    message: String,
}

/// Maximizes `objective` from `x0`, then from `config.restarts` jittered
/// copies of the best point so far, and returns the best point seen.
pub fn maximize<F>(objective: F, x0: &[f64], config: &OptimizerConfig) -> Result<OptResult>
where
    F: Fn(&[f64]) -> f64,
{
    config.validate()?;
    let obj = Counted {
        f: &objective,
        evals: Cell::new(0),
    };
    let f0 = obj.eval(x0);
    if f0 == f64::NEG_INFINITY {
        return Err(Error::InfeasibleStart);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut best = run_method(&obj, x0, f0, config, &mut rng);
    let mut scale = 0.5;
    for _ in 0..config.restarts {
        let start: Vec<f64> = best
            .x
            .iter()
            .map(|&v| v + scale * rng.sample::<f64, _>(StandardNormal))
            .collect();
        scale *= 0.5;
        let fs = obj.eval(&start);
        if fs == f64::NEG_INFINITY {
            continue;
        }
        let run = run_method(&obj, &start, fs, config, &mut rng);
        if run.f > best.f || (run.f == best.f && run.converged && !best.converged) {
            best = run;
        }
    }
    if best.f < f0 {
        best = Run {
            x: x0.to_vec(),
            f: f0,
            converged: false,
            message: "no improvement over the starting point".into(),
        };
    }
    Ok(OptResult {
        x_opt: best.x,
        f_opt: best.f,
        n_evals: obj.evals.get(),
        converged: best.converged,
        message: best.message,
    })
}

fn run_method<F: Fn(&[f64]) -> f64>(
    obj: &Counted<'_, F>,
    x0: &[f64],
    f0: f64,
    config: &OptimizerConfig,
    rng: &mut ChaCha8Rng,
) -> Run {
    match config.method {
        Method::NelderMead => nelder_mead(obj, x0, f0, config),
        Method::Bfgs => bfgs(obj, x0, f0, config),
        Method::Cg => conjugate_gradient(obj, x0, f0, config),
        Method::Sann => anneal(obj, x0, f0, config, rng),
    }
}

fn nelder_mead<F: Fn(&[f64]) -> f64>(
    obj: &Counted<'_, F>,
    x0: &[f64],
    f0: f64,
    config: &OptimizerConfig,
) -> Run {
    let n = x0.len();
    if n == 0 {
        return Run {
            x: vec![],
            f: f0,
            converged: true,
            message: "no free parameters".into(),
        };
    }
    let mut pts: Vec<Vec<f64>> = vec![x0.to_vec()];
    let mut vals = vec![f0];
    for i in 0..n {
        let mut p = x0.to_vec();
        let step = (0.1 * x0[i].abs()).max(0.5);
        p[i] += step;
        let mut v = obj.eval(&p);
        if v == f64::NEG_INFINITY {
            p[i] = x0[i] - step;
            v = obj.eval(&p);
        }
        pts.push(p);
        vals.push(v);
    }
    let mut order: Vec<usize> = (0..=n).collect();
    for _ in 0..config.max_iter {
        // best first
        order.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));
        let (ib, iw, in2) = (order[0], order[n], order[n - 1]);
        let fb = vals[ib];
        let fw = vals[iw];
        let f_spread = fb - fw;
        let x_spread = order[1..]
            .iter()
            .flat_map(|&j| pts[j].iter().zip(&pts[ib]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        let xb_norm = pts[ib].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if fw.is_finite() && f_spread <= config.f_tol * (fb.abs() + config.f_tol) {
            return finish(&pts[ib], fb, true, "relative objective spread below tolerance");
        }
        if x_spread <= config.x_tol * (1.0 + xb_norm) {
            return finish(&pts[ib], fb, true, "simplex size below tolerance");
        }
        let mut centroid = vec![0.0; n];
        for &j in &order[..n] {
            for (c, v) in centroid.iter_mut().zip(&pts[j]) {
                *c += v / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&pts[iw])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };
        let xr = along(1.0);
        let fr = obj.eval(&xr);
        if fr > fb {
            let xe = along(2.0);
            let fe = obj.eval(&xe);
            if fe > fr {
                pts[iw] = xe;
                vals[iw] = fe;
            } else {
                pts[iw] = xr;
                vals[iw] = fr;
            }
            continue;
        }
        if fr > vals[in2] {
            pts[iw] = xr;
            vals[iw] = fr;
            continue;
        }
        let (xc, fc) = if fr > fw {
            let xc = along(0.5);
            let fc = obj.eval(&xc);
            (xc, fc)
        } else {
            let xc = along(-0.5);
            let fc = obj.eval(&xc);
            (xc, fc)
        };
        if fc > fr.max(fw) {
            pts[iw] = xc;
            vals[iw] = fc;
            continue;
        }
        let xb = pts[ib].clone();
        for &j in &order[1..] {
            let p: Vec<f64> = pts[j].iter().zip(&xb).map(|(v, b)| b + 0.5 * (v - b)).collect();
            vals[j] = obj.eval(&p);
            pts[j] = p;
        }
    }
    let ib = (0..=n).max_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap();
    finish(&pts[ib], vals[ib], false, "iteration limit reached")
}

fn finish(x: &[f64], f: f64, converged: bool, message: &str) -> Run {
    Run {
        x: x.to_vec(),
        f,
        converged,
        message: message.to_string(),
    }
}

/// Central-difference gradient with step max(1e-7, 1e-7·|xᵢ|), falling back
/// to a one-sided difference next to an infeasible point.
fn gradient<F: Fn(&[f64]) -> f64>(obj: &Counted<'_, F>, x: &[f64], fx: f64) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    let mut p = x.to_vec();
    for i in 0..x.len() {
        let h = (1e-7 * x[i].abs()).max(1e-7);
        p[i] = x[i] + h;
        let fp = obj.eval(&p);
        p[i] = x[i] - h;
        let fm = obj.eval(&p);
        p[i] = x[i];
        g[i] = match (fp.is_finite(), fm.is_finite()) {
            (true, true) => (fp - fm) / (2.0 * h),
            (true, false) => (fp - fx) / h,
            (false, true) => (fx - fm) / h,
            (false, false) => 0.0,
        };
    }
    g
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Backtracking search for ascent along `dir`; returns the accepted point.
fn line_search<F: Fn(&[f64]) -> f64>(
    obj: &Counted<'_, F>,
    x: &[f64],
    fx: f64,
    g: &[f64],
    dir: &[f64],
) -> Option<(Vec<f64>, f64)> {
    let slope = dot(g, dir);
    if !(slope > 0.0) {
        return None;
    }
    let mut t = 1.0;
    for _ in 0..60 {
        let xn: Vec<f64> = x.iter().zip(dir).map(|(a, d)| a + t * d).collect();
        let fnew = obj.eval(&xn);
        if fnew.is_finite() && fnew >= fx + 1e-4 * t * slope {
            return Some((xn, fnew));
        }
        t *= 0.5;
    }
    None
}

fn converged_step(config: &OptimizerConfig, f_old: f64, f_new: f64, x: &[f64], xn: &[f64]) -> bool {
    let df = (f_new - f_old).abs();
    let dx = x.iter().zip(xn).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let xnorm = xn.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    df <= config.f_tol * (f_new.abs() + config.f_tol) || dx <= config.x_tol * (1.0 + xnorm)
}

fn bfgs<F: Fn(&[f64]) -> f64>(
    obj: &Counted<'_, F>,
    x0: &[f64],
    f0: f64,
    config: &OptimizerConfig,
) -> Run {
    let n = x0.len();
    let identity = |n: usize| {
        let mut h = vec![0.0; n * n];
        for i in 0..n {
            h[i * n + i] = 1.0;
        }
        h
    };
    let mut x = x0.to_vec();
    let mut fx = f0;
    let mut g = gradient(obj, &x, fx);
    // inverse Hessian of −f
    let mut h = identity(n);
    let mut fresh = true;
    for _ in 0..config.max_iter {
        if g.iter().all(|v| v.abs() <= 1e-10) {
            return finish(&x, fx, true, "gradient vanished");
        }
        let dir: Vec<f64> = (0..n).map(|i| dot(&h[i * n..(i + 1) * n], &g)).collect();
        let (xn, fnew) = match line_search(obj, &x, fx, &g, &dir) {
            Some(s) => s,
            None if !fresh => {
                h = identity(n);
                fresh = true;
                continue;
            }
            None => return finish(&x, fx, true, "no ascent direction improves the objective"),
        };
        let gn = gradient(obj, &xn, fnew);
        let done = converged_step(config, fx, fnew, &x, &xn);
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        // gradient change of −f
        let y: Vec<f64> = g.iter().zip(&gn).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
            let hy: Vec<f64> = (0..n).map(|i| dot(&h[i * n..(i + 1) * n], &y)).collect();
            let yhy = dot(&y, &hy);
            let rho = 1.0 / sy;
            for i in 0..n {
                for j in 0..n {
                    h[i * n + j] += (1.0 + yhy * rho) * rho * s[i] * s[j]
                        - rho * (hy[i] * s[j] + s[i] * hy[j]);
                }
            }
            fresh = false;
        }
        x = xn;
        fx = fnew;
        g = gn;
        if done {
            return finish(&x, fx, true, "relative change below tolerance");
        }
    }
    finish(&x, fx, false, "iteration limit reached")
}

fn conjugate_gradient<F: Fn(&[f64]) -> f64>(
    obj: &Counted<'_, F>,
    x0: &[f64],
    f0: f64,
    config: &OptimizerConfig,
) -> Run {
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut fx = f0;
    let mut g = gradient(obj, &x, fx);
    let mut dir = g.clone();
    let mut since_reset = 0;
    for _ in 0..config.max_iter {
        if g.iter().all(|v| v.abs() <= 1e-10) {
            return finish(&x, fx, true, "gradient vanished");
        }
        let step = match line_search(obj, &x, fx, &g, &dir) {
            Some(s) => Some(s),
            None if since_reset > 0 => {
                dir = g.clone();
                since_reset = 0;
                line_search(obj, &x, fx, &g, &dir)
            }
            None => None,
        };
        let Some((xn, fnew)) = step else {
            return finish(&x, fx, true, "no ascent direction improves the objective");
        };
        let gn = gradient(obj, &xn, fnew);
        let done = converged_step(config, fx, fnew, &x, &xn);
        // Polak–Ribière, clipped at zero, restarted every n steps
        let beta = (dot(&gn, &gn) - dot(&gn, &g)) / dot(&g, &g).max(1e-300);
        since_reset += 1;
        let beta = if since_reset >= n.max(1) {
            since_reset = 0;
            0.0
        } else {
            beta.max(0.0)
        };
        dir = gn.iter().zip(&dir).map(|(a, d)| a + beta * d).collect();
        x = xn;
        fx = fnew;
        g = gn;
        if done {
            return finish(&x, fx, true, "relative change below tolerance");
        }
    }
    finish(&x, fx, false, "iteration limit reached")
}

/// Gaussian-proposal annealing with geometric cooling from T = 1 to 1e-4.
fn anneal<F: Fn(&[f64]) -> f64>(
    obj: &Counted<'_, F>,
    x0: &[f64],
    f0: f64,
    config: &OptimizerConfig,
    rng: &mut ChaCha8Rng,
) -> Run {
    let steps = config.max_iter.max(1);
    let cooling = (1e-4f64).ln() / steps as f64;
    let mut x = x0.to_vec();
    let mut fx = f0;
    let mut best = (x.clone(), fx);
    for k in 0..steps {
        let temp = (cooling * k as f64).exp();
        let scale = 0.5 * temp.sqrt();
        let cand: Vec<f64> = x.iter().map(|&v| v + scale * rng.sample::<f64, _>(StandardNormal)).collect();
        let fc = obj.eval(&cand);
        if fc == f64::NEG_INFINITY {
            continue;
        }
        if fc >= fx || rng.gen::<f64>() < ((fc - fx) / temp).exp() {
            x = cand;
            fx = fc;
            if fx > best.1 {
                best = (x.clone(), fx);
            }
        }
    }
    finish(&best.0, best.1, true, "annealing schedule completed")
}
