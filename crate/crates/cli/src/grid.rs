//! `--p-grid` parsing: comma-separated rationals and `start:step:end` ranges.

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Signed;

/// Upper bound on the points one range may expand to.
pub const MAX_POINTS: usize = 100_000;

/// Parse `"3/2"`, `"-2"` or a terminating decimal such as `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    if let Ok(r) = BigRational::from_str(t) {
        return Ok(r);
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').ok_or_else(|| format!("not a rational: {s:?}"))?;
    let digits_ok = |x: &str| x.chars().all(|c| c.is_ascii_digit());
    if (int.is_empty() && frac.is_empty()) || !digits_ok(int) || !digits_ok(frac) {
        return Err(format!("not a rational: {s:?}"));
    }
    let num = format!("{}{int}{frac}", if neg { "-" } else { "" });
    let num = if int.is_empty() && frac.is_empty() { "0".into() } else { num };
    BigRational::from_str(&format!("{num}/1{}", "0".repeat(frac.len()))).map_err(|e| e.to_string())
}

/// Expand a grid spec into sorted, deduplicated points.
pub fn parse_grid(spec: &str) -> Result<Vec<BigRational>, String> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [x] => out.push(parse_rational(x)?),
            [start, step, end] => {
                let (start, step, end) = (parse_rational(start)?, parse_rational(step)?, parse_rational(end)?);
                if !step.is_positive() {
                    return Err(format!("range step must be positive in {item:?}"));
                }
                let mut x = start;
                while x <= end {
                    if out.len() >= MAX_POINTS {
                        return Err(format!("grid exceeds {MAX_POINTS} points"));
                    }
                    out.push(x.clone());
                    x += &step;
                }
            }
            _ => return Err(format!("bad grid item {item:?}: expected a rational or start:step:end")),
        }
    }
    if out.is_empty() {
        return Err("empty grid".into());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals_and_decimals() {
        assert_eq!(parse_rational("3/2").unwrap(), r(3, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), r(-1, 4));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert_eq!(parse_rational("7").unwrap(), r(7, 1));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn lists_and_ranges() {
        assert_eq!(
            parse_grid("0:1/2:2, 5/2,1").unwrap(),
            vec![r(0, 1), r(1, 2), r(1, 1), r(3, 2), r(2, 1), r(5, 2)]
        );
        assert!(parse_grid("0:0:1").is_err());
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("").is_err());
        assert!(parse_grid("0:1/1000000:1").is_err());
    }
}
