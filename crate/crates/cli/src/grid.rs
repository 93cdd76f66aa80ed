//! Parsers for list and range flags.

use crate::CliError;

/// `a,b,c` or `start:stop:count` (inclusive, evenly spaced). Range points are
/// rounded to 12 decimals so the printed value is the value evaluated.
pub fn parse_real_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let text = text.trim();
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        let [start, stop, count] = parts[..] else {
            return Err(CliError::usage(format!(
                "range must be start:stop:count, got '{text}'"
            )));
        };
        let start = parse_real(start)?;
        let stop = parse_real(stop)?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad point count '{count}'")))?;
        if count == 0 {
            return Err(CliError::usage("range needs at least one point"));
        }
        if count == 1 {
            return Ok(vec![start]);
        }
        let step = (stop - start) / (count - 1) as f64;
        return Ok((0..count)
            .map(|k| {
                let x = if k == count - 1 {
                    stop
                } else {
                    start + step * k as f64
                };
                (x * 1e12).round() / 1e12
            })
            .collect());
    }
    text.split(',').map(parse_real).collect()
}

fn parse_real(s: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("bad number '{s}'")))?;
    if !v.is_finite() {
        return Err(CliError::usage(format!("non-finite value '{s}'")));
    }
    Ok(v)
}

/// `a,b,c`, `lo:hi` or `lo:hi:step` (inclusive), or any comma-separated mix.
pub fn parse_int_list(text: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        let nums = item
            .split(':')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::usage(format!("bad integer in '{item}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        match nums[..] {
            [x] => out.push(x),
            [lo, hi] => out.extend(lo..=hi),
            [lo, hi, step] if step > 0 => out.extend((lo..=hi).step_by(step)),
            _ => return Err(CliError::usage(format!("bad integer range '{item}'"))),
        }
    }
    Ok(out)
}
