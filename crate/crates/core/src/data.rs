//! Bundled case-study datasets and a tolerant numeric text parser.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: &'static str,
    pub note: &'static str,
    pub values: Vec<f64>,
}

const BUNDLED: [(&str, &str, &str); 3] = [
    (
        "bearing",
        "fatigue life in hours of 10 bearings",
        include_str!("../data/bearing.txt"),
    ),
    (
        "earthquake",
        "182 station-to-epicenter distances in km",
        include_str!("../data/earthquake.txt"),
    ),
    (
        "pollution",
        "beach coliform counts per 100 ml over 20 days",
        include_str!("../data/pollution.txt"),
    ),
];

pub fn dataset_names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|b| b.0)
}

/// Raw text of a bundled dataset file.
pub fn dataset_text(name: &str) -> Result<&'static str> {
    BUNDLED
        .iter()
        .find(|b| b.0 == name)
        .map(|b| b.2)
        .ok_or_else(|| Error::UnknownDataset(name.to_string()))
}

pub fn dataset(name: &str) -> Result<Dataset> {
    let (name, note, text) = *BUNDLED
        .iter()
        .find(|b| b.0 == name)
        .ok_or_else(|| Error::UnknownDataset(name.to_string()))?;
    Ok(Dataset {
        name,
        note,
        values: parse_values(text)?,
    })
}

/// Parses reals separated by whitespace, commas or newlines. Lines starting
/// with '#' are skipped, and a first data line with no numeric token at all
/// is taken as a header.
pub fn parse_values(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut seen_line = false;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let parsed: Vec<Option<f64>> = tokens.iter().map(|t| t.parse::<f64>().ok()).collect();
        if !seen_line && parsed.iter().all(Option::is_none) {
            seen_line = true;
            continue;
        }
        seen_line = true;
        for (t, v) in tokens.iter().zip(parsed) {
            match v {
                Some(v) if v.is_finite() => out.push(v),
                _ => {
                    return Err(Error::Parse {
                        line: i + 1,
                        token: t.to_string(),
                    })
                }
            }
        }
    }
    Ok(out)
}
