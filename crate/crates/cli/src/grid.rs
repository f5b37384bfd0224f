//! Parsing of `--a` / `--x` values: a number, `start:step:stop`, or a comma list.

/// Largest number of points one axis may expand to.
pub const MAX_POINTS: usize = 100_000;

pub fn parse_axis(s: &str) -> Result<Vec<f64>, String> {
    let s = s.trim();
    if s.contains(':') {
        return parse_range(s);
    }
    s.split(',').map(parse_number).collect()
}

fn parse_number(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("not a number: {:?}", s.trim()))?;
    if !v.is_finite() {
        return Err(format!("value must be finite: {s}"));
    }
    Ok(v)
}

fn parse_range(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, step, stop] = parts[..] else {
        return Err(format!("range must be start:step:stop, got {s:?}"));
    };
    let (start, step, stop) = (
        parse_number(start)?,
        parse_number(step)?,
        parse_number(stop)?,
    );
    if step == 0.0 {
        return Err("range step must be nonzero".into());
    }
    let span = (stop - start) / step;
    if span < -1e-9 {
        return Err(format!(
            "range step {step} does not lead from {start} to {stop}"
        ));
    }
    // tolerate rounding in the division so that 0:0.1:1 keeps its endpoint
    let count = (span + 1e-9).floor() as usize + 1;
    if count > MAX_POINTS {
        return Err(format!(
            "range expands to {count} points (limit {MAX_POINTS})"
        ));
    }
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}
