//! Information criteria and EDF goodness-of-fit statistics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{kolmogorov_exact_cdf, kolmogorov_sf};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InformationCriteria {
    pub aic: f64,
    /// `None` when n ≤ k + 1.
    pub caic: Option<f64>,
    pub bic: f64,
    pub hqic: f64,
}

pub fn information_criteria(loglik: f64, k: usize, n: usize) -> InformationCriteria {
    let kf = k as f64;
    let nf = n as f64;
    let aic = 2.0 * kf - 2.0 * loglik;
    let caic = (n > k + 1).then(|| aic + 2.0 * kf * (kf + 1.0) / (nf - kf - 1.0));
    InformationCriteria {
        aic,
        caic,
        bic: kf * nf.ln() - 2.0 * loglik,
        hqic: 2.0 * kf * nf.ln().ln() - 2.0 * loglik,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdfStatistics {
    pub cm: f64,
    pub ad: f64,
    /// Set when some fitted cdf value was 0 or 1 and had to be clamped.
    pub clamped: bool,
}

const U_MIN: f64 = 1e-300;
const U_MAX: f64 = 1.0 - 1e-16;

fn clamp_all(u: &[f64]) -> (Vec<f64>, bool) {
    let mut clamped = false;
    let v = u
        .iter()
        .map(|&x| {
            let c = x.clamp(U_MIN, U_MAX);
            clamped |= c != x;
            c
        })
        .collect();
    (v, clamped)
}

/// Cramér–von Mises and Anderson–Darling statistics from the fitted cdf at
/// the ascending order statistics.
pub fn edf_statistics(cdf_at_sorted: &[f64]) -> EdfStatistics {
    let (u, clamped) = clamp_all(cdf_at_sorted);
    let n = u.len();
    let nf = n as f64;
    let mut cm = 1.0 / (12.0 * nf);
    let mut s = 0.0;
    for (i, &ui) in u.iter().enumerate() {
        let k = (2 * i + 1) as f64;
        cm += (ui - k / (2.0 * nf)).powi(2);
        s += k * (ui.ln() + (-u[n - 1 - i]).ln_1p());
    }
    EdfStatistics {
        cm,
        ad: -nf - s / nf,
        clamped,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum KsMethod {
    #[default]
    Asymptotic,
    Exact,
}

impl FromStr for KsMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "asymptotic" => Ok(KsMethod::Asymptotic),
            "exact" => Ok(KsMethod::Exact),
            _ => Err(Error::domain("ks method", format!("unknown method '{s}'"))),
        }
    }
}

impl fmt::Display for KsMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KsMethod::Asymptotic => "asymptotic",
            KsMethod::Exact => "exact",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

/// Largest gap between the fitted cdf at the order statistics and the
/// empirical staircase.
pub fn ks_statistic(cdf_at_sorted: &[f64]) -> f64 {
    let nf = cdf_at_sorted.len() as f64;
    cdf_at_sorted
        .iter()
        .enumerate()
        .map(|(i, &u)| ((i + 1) as f64 / nf - u).max(u - i as f64 / nf))
        .fold(0.0, f64::max)
}

pub fn ks_test(cdf_at_sorted: &[f64], method: KsMethod) -> KsResult {
    let n = cdf_at_sorted.len();
    let statistic = ks_statistic(cdf_at_sorted);
    let p_value = match method {
        KsMethod::Asymptotic => kolmogorov_sf((n as f64).sqrt() * statistic),
        KsMethod::Exact => (1.0 - kolmogorov_exact_cdf(n, statistic)).clamp(0.0, 1.0),
    };
    KsResult { statistic, p_value }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_examples() {
        let ic = information_criteria(-53.39375, 5, 10);
        assert!((ic.aic - 116.7875).abs() < 1e-4);
        assert!((ic.caic.unwrap() - 131.7875).abs() < 1e-4);
        assert!((ic.bic - 118.3004).abs() < 1e-4);
        assert!((ic.hqic - 115.1278).abs() < 1e-4);
        let z = information_criteria(0.0, 0, 10);
        assert_eq!((z.aic, z.caic, z.bic, z.hqic), (0.0, Some(0.0), 0.0, 0.0));
        assert_eq!(information_criteria(-1.0, 3, 4).caic, None);
    }

    #[test]
    fn perfect_staircase() {
        let n = 8;
        let u: Vec<f64> = (1..=n).map(|i| (2 * i - 1) as f64 / (2 * n) as f64).collect();
        let e = edf_statistics(&u);
        assert!((e.cm - 1.0 / (12.0 * n as f64)).abs() < 1e-15);
        assert!((ks_statistic(&u) - 1.0 / (2.0 * n as f64)).abs() < 1e-15);
        let cm2 = edf_statistics(&[0.25, 0.75]).cm;
        assert!((cm2 - 1.0 / 24.0).abs() < 1e-15);
    }

    #[test]
    fn clamping_is_flagged() {
        let e = edf_statistics(&[0.0, 0.5, 1.0]);
        assert!(e.clamped && e.ad.is_finite());
    }
}
