/// Parses `start:stop:step` or a comma list of reals.
pub fn parse_points(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0) || stop < start {
                return Err(format!("bad range '{spec}': need step > 0 and stop >= start"));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|i| start + i as f64 * step).collect())
        }
        [_] => parse_list(spec),
        _ => Err(format!("bad range '{spec}': expected start:stop:step")),
    }
}

/// Parses a comma list of reals.
pub fn parse_list(spec: &str) -> Result<Vec<f64>, String> {
    spec.split(',').filter(|t| !t.trim().is_empty()).map(num).collect()
}

fn num(token: &str) -> Result<f64, String> {
    token
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse '{}' as a number", token.trim()))
}
