//! wasm-bindgen exports behind the static demo page in `www/`.
//!
//! Each export is a thin wrapper over a plain function that reports errors
//! as strings, so the logic is testable off the browser.

use genfit::{
    data, fit_report, BaseDist, Family, Method, Model, OptimizerConfig, ReportOptions,
    SpacingContext, TailFlags,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn model(family: &str, base: &str, location: bool) -> Result<Model, String> {
    let f: Family = family.parse().map_err(|e: genfit::Error| e.to_string())?;
    let b: BaseDist = base.parse().map_err(|e: genfit::Error| e.to_string())?;
    Ok(Model::new(f, b, location))
}

#[derive(Serialize)]
struct Catalog {
    families: Vec<&'static str>,
    bases: Vec<&'static str>,
    datasets: Vec<&'static str>,
}

pub fn catalog_json() -> String {
    let c = Catalog {
        families: Family::ALL.iter().map(|f| f.id()).collect(),
        bases: BaseDist::ALL.iter().map(|b| b.id()).collect(),
        datasets: data::dataset_names().collect(),
    };
    serde_json::to_string(&c).unwrap()
}

/// Parameter names in interface order, with a default value for each.
pub fn parameter_template(family: &str, base: &str, location: bool) -> Result<String, String> {
    let m = model(family, base, location)?;
    let mut defaults = m.family.start_values();
    defaults.extend(std::iter::repeat_n(1.0, m.base.n_params()));
    if location {
        defaults.push(0.0);
    }
    let names = m.param_names();
    Ok(serde_json::to_string(&serde_json::json!({ "names": names, "defaults": defaults })).unwrap())
}

/// pdf or cdf values on an even grid of `points` over [lo, hi].
pub fn curve_values(
    family: &str,
    base: &str,
    params: &[f64],
    location: bool,
    kind: &str,
    lo: f64,
    hi: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    let d = model(family, base, location)?
        .dist(params)
        .map_err(|e| e.to_string())?;
    if points < 2 || !(hi > lo) {
        return Err("need at least two points and hi > lo".into());
    }
    let step = (hi - lo) / (points - 1) as f64;
    let xs = (0..points).map(|i| lo + i as f64 * step);
    match kind {
        "pdf" => Ok(xs.map(|x| d.pdf(x, false)).collect()),
        "cdf" => Ok(xs.map(|x| d.cdf(x, TailFlags::default())).collect()),
        _ => Err(format!("unknown curve '{kind}', expected pdf or cdf")),
    }
}

#[derive(Serialize)]
struct FitOut {
    report: genfit::Report,
    text: String,
    /// Sorted data with the fitted cdf at each point.
    data: Vec<f64>,
    fitted_cdf: Vec<f64>,
}

/// Fits a bundled dataset (by name) or pasted numbers.
pub fn fit_json(
    family: &str,
    base: &str,
    source: &str,
    location: bool,
    method: &str,
) -> Result<String, String> {
    let m = model(family, base, location)?;
    let values = match data::dataset(source.trim()) {
        Ok(d) => d.values,
        Err(_) => data::parse_values(source).map_err(|e| e.to_string())?,
    };
    let ctx = SpacingContext::new(&values, m).map_err(|e| e.to_string())?;
    let method: Method = method.parse().map_err(|e: genfit::Error| e.to_string())?;
    let report = fit_report(&ctx, &OptimizerConfig::with_method(method), &ReportOptions::default())
        .map_err(|e| e.to_string())?;
    let d = m.dist(&report.mps).map_err(|e| e.to_string())?;
    let out = FitOut {
        text: report.to_text(),
        data: ctx.data().to_vec(),
        fitted_cdf: ctx.data().iter().map(|&x| d.cdf(x, TailFlags::default())).collect(),
        report,
    };
    Ok(serde_json::to_string(&out).unwrap())
}

#[derive(Serialize)]
struct Histogram {
    edges: Vec<f64>,
    /// Counts scaled to a density so they overlay the pdf.
    density: Vec<f64>,
    pdf: Vec<f64>,
}

/// Histogram of `n` seeded draws over the central 99% of the model, with
/// the pdf at bin midpoints.
pub fn histogram_json(
    family: &str,
    base: &str,
    params: &[f64],
    location: bool,
    n: usize,
    seed: u64,
    bins: usize,
) -> Result<String, String> {
    let d = model(family, base, location)?
        .dist(params)
        .map_err(|e| e.to_string())?;
    if bins == 0 || n == 0 {
        return Err("need at least one draw and one bin".into());
    }
    let q = |p: f64| d.quantile(p, TailFlags::default()).map_err(|e| e.to_string());
    let (lo, hi) = (q(0.005)?, q(0.995)?);
    if !(hi > lo) || !hi.is_finite() {
        return Err("distribution is too concentrated or too heavy to bin".into());
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for x in d.sample(n, seed).map_err(|e| e.to_string())? {
        let k = ((x - lo) / width).floor();
        if k >= 0.0 && (k as usize) < bins {
            counts[k as usize] += 1;
        }
    }
    let h = Histogram {
        edges: (0..=bins).map(|i| lo + i as f64 * width).collect(),
        density: counts.iter().map(|&c| c as f64 / (n as f64 * width)).collect(),
        pdf: (0..bins).map(|i| d.pdf(lo + (i as f64 + 0.5) * width, false)).collect(),
    };
    Ok(serde_json::to_string(&h).unwrap())
}

fn js(e: String) -> JsError {
    JsError::new(&e)
}

#[wasm_bindgen]
pub fn catalog() -> String {
    catalog_json()
}

#[wasm_bindgen(js_name = parameterTemplate)]
pub fn parameter_template_js(family: &str, base: &str, location: bool) -> Result<String, JsError> {
    parameter_template(family, base, location).map_err(js)
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn curve(
    family: &str,
    base: &str,
    params: Vec<f64>,
    location: bool,
    kind: &str,
    lo: f64,
    hi: f64,
    points: usize,
) -> Result<Vec<f64>, JsError> {
    curve_values(family, base, &params, location, kind, lo, hi, points).map_err(js)
}

#[wasm_bindgen]
pub fn fit(family: &str, base: &str, source: &str, location: bool, method: &str) -> Result<String, JsError> {
    fit_json(family, base, source, location, method).map_err(js)
}

#[wasm_bindgen]
pub fn histogram(
    family: &str,
    base: &str,
    params: Vec<f64>,
    location: bool,
    n: usize,
    seed: u32,
    bins: usize,
) -> Result<String, JsError> {
    histogram_json(family, base, &params, location, n, seed.into(), bins).map_err(js)
}
