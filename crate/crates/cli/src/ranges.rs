use std::ops::RangeInclusive;
use std::str::FromStr;

use kroman::weights::Variant;

/// Accepts `a`, `a..b` or `a..=b`; both ends inclusive.
pub fn parse_range<T>(s: &str) -> Result<RangeInclusive<T>, String>
where
    T: FromStr + PartialOrd + Copy,
{
    let num = |t: &str| t.trim().parse::<T>().map_err(|_| format!("`{t}` is not a number"));
    let range = match s.split_once("..") {
        Some((lo, hi)) => num(lo)?..=num(hi.strip_prefix('=').unwrap_or(hi))?,
        None => {
            let v = num(s)?;
            v..=v
        }
    };
    if range.start() > range.end() {
        return Err(format!("empty range `{s}`"));
    }
    Ok(range)
}

/// `all` or a comma-separated list of variant names.
pub fn parse_variants(s: &str) -> Result<Vec<Variant>, String> {
    if s == "all" {
        return Ok(Variant::ALL.to_vec());
    }
    let mut out: Vec<Variant> = Vec::new();
    for part in s.split(',') {
        let v: Variant = part.trim().parse()?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}
