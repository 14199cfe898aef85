//! The combined fit and goodness-of-fit report, in a text layout modelled on
//! R's printed lists and as a serializable structure.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gof::{edf_statistics, information_criteria, ks_test, KsMethod};
use crate::model::TailFlags;
use crate::mps::{fit, moran_chi_square_test, SpacingContext};
use crate::optim::{OptResult, OptimizerConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measures {
    pub aic: f64,
    pub caic: Option<f64>,
    pub bic: f64,
    pub hqic: f64,
    pub cm: f64,
    pub ad: f64,
    pub log: f64,
    pub moran: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KsBlock {
    pub statistic: f64,
    pub p_value: f64,
    pub method: KsMethod,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareBlock {
    pub statistic: f64,
    pub critical: f64,
    pub p_value: f64,
    pub df: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Convergence {
    pub status: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub family: String,
    pub base: String,
    pub location: bool,
    pub n: usize,
    pub k: usize,
    /// Spacings replaced by the density at a tied observation.
    pub ties: usize,
    /// Set when a fitted cdf value had to be clamped away from 0 or 1.
    pub clamped: bool,
    pub param_names: Vec<String>,
    pub mps: Vec<f64>,
    pub measures: Measures,
    pub ks: KsBlock,
    pub chi_square: ChiSquareBlock,
    pub convergence: Convergence,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    pub sig_level: f64,
    pub ks_method: KsMethod,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            sig_level: 0.05,
            ks_method: KsMethod::Asymptotic,
        }
    }
}

/// Goodness-of-fit measures at an arbitrary parameter point.
pub fn evaluate(
    ctx: &SpacingContext,
    theta: &[f64],
    opts: &ReportOptions,
    convergence: Option<&OptResult>,
) -> Result<Report> {
    let model = *ctx.model();
    let dist = model.dist(theta)?;
    let data = ctx.data();
    let n = data.len();
    let k = model.n_params();
    let sp = ctx.spacings(&dist);
    let moran = -sp.log_d.iter().sum::<f64>();
    let loglik: f64 = data.iter().map(|&x| dist.ln_pdf(x)).sum();
    let u: Vec<f64> = data.iter().map(|&x| dist.cdf(x, TailFlags::default())).collect();
    let ic = information_criteria(loglik, k, n);
    let edf = edf_statistics(&u);
    let ks = ks_test(&u, opts.ks_method);
    let chi = moran_chi_square_test(moran, n, k, opts.sig_level)?;
    let convergence = match convergence {
        Some(r) => Convergence {
            status: if r.converged {
                "Algorithm Converged"
            } else {
                "Algorithm Not Converged"
            }
            .to_string(),
            message: r.message.clone(),
        },
        None => Convergence {
            status: "Not Fitted".to_string(),
            message: "evaluated at supplied parameters".to_string(),
        },
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        family: model.family.id().to_string(),
        base: model.base.id().to_string(),
        location: model.location,
        n,
        k,
        ties: sp.ties,
        clamped: edf.clamped,
        param_names: model.param_names().iter().map(|s| s.to_string()).collect(),
        mps: theta.to_vec(),
        measures: Measures {
            aic: ic.aic,
            caic: ic.caic,
            bic: ic.bic,
            hqic: ic.hqic,
            cm: edf.cm,
            ad: edf.ad,
            log: loglik,
            moran,
        },
        ks: KsBlock {
            statistic: ks.statistic,
            p_value: ks.p_value,
            method: opts.ks_method,
        },
        chi_square: ChiSquareBlock {
            statistic: chi.statistic,
            critical: chi.critical,
            p_value: chi.p_value,
            df: chi.df,
        },
        convergence,
    })
}

/// Fits by maximum product of spacings and reports at the estimate.
pub fn fit_report(
    ctx: &SpacingContext,
    config: &OptimizerConfig,
    opts: &ReportOptions,
) -> Result<Report> {
    let r = fit(ctx, config)?;
    evaluate(ctx, &r.estimate, opts, Some(&r.convergence))
}

/// Seven significant digits, switching to scientific notation for very
/// small or large magnitudes.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "Inf".into() } else { "-Inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.6e}");
    let (mant, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if !(-5..15).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mant}e{sign}{:02}", exp.abs());
    }
    let decimals = (6 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}"))
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn table(out: &mut String, headers: &[&str], values: &[String]) {
    let widths: Vec<usize> = headers
        .iter()
        .zip(values)
        .map(|(h, v)| h.len().max(v.len()))
        .collect();
    let row = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(out, "{}", row(headers.to_vec()));
    let _ = writeln!(out, "{}", row(values.iter().map(String::as_str).collect()));
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let m = &self.measures;
        let _ = writeln!(out, "$MPS");
        let est: Vec<String> = self.mps.iter().map(|&v| format_sig(v)).collect();
        let w = est.iter().map(String::len).max().unwrap_or(0);
        let line: Vec<String> = est.iter().map(|s| format!("{s:>w$}")).collect();
        let _ = writeln!(out, "[1] {}\n", line.join(" "));
        let _ = writeln!(out, "$Measures");
        let caic = m.caic.map_or_else(|| "NA".to_string(), format_sig);
        table(
            &mut out,
            &["AIC", "CAIC", "BIC", "HQIC", "CM", "AD", "log", "Moran"],
            &[
                format_sig(m.aic),
                caic,
                format_sig(m.bic),
                format_sig(m.hqic),
                format_sig(m.cm),
                format_sig(m.ad),
                format_sig(m.log),
                format_sig(m.moran),
            ],
        );
        let _ = writeln!(out, "\n$KS");
        table(
            &mut out,
            &["statistic", "p-value"],
            &[format_sig(self.ks.statistic), format_sig(self.ks.p_value)],
        );
        let _ = writeln!(out, "\n$`chi-square`");
        table(
            &mut out,
            &["statistic", "chi-value", "p-value"],
            &[
                format_sig(self.chi_square.statistic),
                format_sig(self.chi_square.critical),
                format_sig(self.chi_square.p_value),
            ],
        );
        let _ = writeln!(out, "\n$`Convergence Status`");
        let _ = writeln!(out, "[1] \"{}\"", self.convergence.status);
        out
    }
}
