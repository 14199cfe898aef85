//! A family transform composed with a shifted base: F(x) = h(G(x)).

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::base::{BaseDist, ShiftedParams};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::family::Family;

/// A (family, base) pair together with whether μ is estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Model {
    pub family: Family,
    pub base: BaseDist,
    pub location: bool,
}

impl Model {
    pub fn new(family: Family, base: BaseDist, location: bool) -> Self {
        Model {
            family,
            base,
            location,
        }
    }

    /// Length of the parameter vector: induced, then base, then μ if enabled.
    pub fn n_params(&self) -> usize {
        self.family.n_induced() + self.base.n_params() + usize::from(self.location)
    }

    pub fn domains(&self) -> Vec<Domain> {
        let mut out: Vec<Domain> = (0..self.family.n_induced())
            .map(|i| self.family.induced_domain(i))
            .collect();
        out.extend((0..self.base.n_params()).map(|i| self.base.param_domain(i)));
        if self.location {
            out.push(Domain::Real);
        }
        out
    }

    pub fn param_names(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = self.family.induced_names().to_vec();
        out.extend_from_slice(self.base.param_names());
        if self.location {
            out.push("mu");
        }
        out
    }

    /// Splits and validates a flat parameter vector.
    pub fn params(&self, theta: &[f64]) -> Result<ParameterVector> {
        if theta.len() != self.n_params() {
            return Err(Error::ParamLength {
                expected: self.n_params(),
                got: theta.len(),
            });
        }
        for (i, (&v, d)) in theta.iter().zip(self.domains()).enumerate() {
            if !d.contains(v) {
                return Err(Error::ParamDomain {
                    index: i,
                    value: v,
                    domain: d.describe().to_string(),
                });
            }
        }
        let k = self.family.n_induced();
        let nb = self.base.n_params();
        let mu = if self.location { theta[k + nb] } else { 0.0 };
        Ok(ParameterVector {
            induced: theta[..k].to_vec(),
            base: ShiftedParams::new(self.base, &theta[k..k + nb], mu)?,
            location_enabled: self.location,
        })
    }

    pub fn dist(&self, theta: &[f64]) -> Result<GDist> {
        Ok(GDist {
            model: *self,
            theta: self.params(theta)?,
        })
    }
}

/// Parameters in their structured form. When the location is disabled μ is
/// held at 0 and is absent from [`ParameterVector::to_vec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterVector {
    pub induced: Vec<f64>,
    pub base: ShiftedParams,
    pub location_enabled: bool,
}

impl ParameterVector {
    pub fn to_vec(&self, base: BaseDist) -> Vec<f64> {
        let mut out = self.induced.clone();
        out.extend_from_slice(self.base.shape_scale(base));
        if self.location_enabled {
            out.push(self.base.mu);
        }
        out
    }
}

/// Tail and scale options shared by cdf and quantile evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TailFlags {
    pub log_p: bool,
    pub lower_tail: bool,
}

impl Default for TailFlags {
    fn default() -> Self {
        TailFlags {
            log_p: false,
            lower_tail: true,
        }
    }
}

/// A fully parameterized family distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct GDist {
    model: Model,
    theta: ParameterVector,
}

impl GDist {
    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn theta(&self) -> &ParameterVector {
        &self.theta
    }

    pub fn mu(&self) -> f64 {
        self.theta.base.mu
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        let base = self.model.base;
        let lg = base.ln_pdf(x, &self.theta.base);
        if lg == f64::NEG_INFINITY {
            return lg;
        }
        let (lu, lv) = base.ln_cdf_pair(x, &self.theta.base);
        let v = match self.model.family.ln_h_prime_split(lu, lv, &self.theta.induced) {
            (rest, true) if lv < -1.0 => {
                rest + base.ln_hazard_s((x - self.mu()).ln(), &self.theta.base)
            }
            (rest, true) => rest - lv + lg,
            (v, false) => v + lg,
        };
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    }

    pub fn pdf(&self, x: f64, log: bool) -> f64 {
        let l = self.ln_pdf(x);
        if log {
            l
        } else {
            l.exp()
        }
    }

    /// (F(x), 1 − F(x)).
    pub fn cdf_pair(&self, x: f64) -> (f64, f64) {
        let (lu, lv) = self.model.base.ln_cdf_pair(x, &self.theta.base);
        self.model.family.h_logs(lu, lv, &self.theta.induced)
    }

    pub fn cdf(&self, x: f64, flags: TailFlags) -> f64 {
        let (f, fc) = self.cdf_pair(x);
        let v = if flags.lower_tail { f } else { fc };
        if flags.log_p {
            v.ln()
        } else {
            v
        }
    }

    /// Quantile from the pair (q, 1 − q).
    pub fn quantile_pair(&self, q: f64, qc: f64) -> Result<f64> {
        let (lu, lv) = self
            .model
            .family
            .h_inverse_logs(q, qc, &self.theta.induced)?;
        Ok(self.model.base.quantile_logs(lu, lv, &self.theta.base))
    }

    /// Log-density of s = ln(x − μ), which reaches excess over μ far beyond
    /// the largest double.
    pub fn ln_pdf_log_scale(&self, s: f64) -> f64 {
        let base = self.model.base;
        let lg = base.ln_pdf_s(s, &self.theta.base);
        if lg == f64::NEG_INFINITY || lg.is_nan() {
            return lg;
        }
        let (lu, lv) = base.ln_cdf_s(s, &self.theta.base);
        let v = match self.model.family.ln_h_prime_split(lu, lv, &self.theta.induced) {
            (rest, true) if lv < -1.0 => rest + base.ln_hazard_s(s, &self.theta.base),
            (rest, true) => rest - lv + lg,
            (v, false) => v + lg,
        } + s;
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    }

    /// (F, 1 − F) at x = μ + e^s.
    pub fn cdf_pair_log_scale(&self, s: f64) -> (f64, f64) {
        let (lu, lv) = self.model.base.ln_cdf_s(s, &self.theta.base);
        self.model.family.h_logs(lu, lv, &self.theta.induced)
    }

    /// ln(x − μ) at the quantile of the pair (q, 1 − q).
    pub fn quantile_log_scale(&self, q: f64, qc: f64) -> Result<f64> {
        let (lu, lv) = self
            .model
            .family
            .h_inverse_logs(q, qc, &self.theta.induced)?;
        Ok(self.model.base.quantile_s(lu, lv, &self.theta.base))
    }

    /// With `log_p` the argument is first mapped to exp(−p); with
    /// `lower_tail = false` the quantile is taken at 1 − p.
    pub fn quantile(&self, p: f64, flags: TailFlags) -> Result<f64> {
        if p.is_nan() {
            return Ok(f64::NAN);
        }
        let p = if flags.log_p { (-p).exp() } else { p };
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain("quantile", format!("p = {p} outside [0, 1]")));
        }
        if flags.lower_tail {
            self.quantile_pair(p, 1.0 - p)
        } else {
            self.quantile_pair(1.0 - p, p)
        }
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Vec<f64>> {
        (0..n)
            .map(|_| {
                let u: f64 = rng.sample(Open01);
                self.quantile_pair(u, 1.0 - u)
            })
            .collect()
    }

    /// Inverse-transform draws, reproducible by seed.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(n, &mut rng)
    }
}
