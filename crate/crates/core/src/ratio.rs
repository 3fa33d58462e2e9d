//! Exact rational helpers shared by instance files and plan parsing.

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Canonical text form `numer/denom`, always reduced, denominator >= 1.
pub fn format_ratio(r: Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `n/d`, a bare integer `n`, or a decimal like `0.25`.
pub fn parse_ratio(text: &str) -> Result<Ratio<i64>> {
    let text = text.trim();
    let bad = || Error::parse("rational", format!("cannot parse {text:?}"));
    if let Some((n, d)) = text.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = frac.len() as u32;
        if digits > 15 {
            return Err(bad());
        }
        let num: i64 = frac.parse().map_err(|_| bad())?;
        let den = 10i64.pow(digits);
        let frac_part = Ratio::new(num, den);
        let whole = Ratio::from_integer(int);
        return Ok(if neg { whole - frac_part } else { whole + frac_part });
    }
    let n: i64 = text.parse().map_err(|_| bad())?;
    Ok(Ratio::from_integer(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_ratio("3/6").unwrap(), Ratio::new(1, 2));
        assert_eq!(parse_ratio("-9/1").unwrap(), Ratio::from_integer(-9));
        assert_eq!(parse_ratio("7").unwrap(), Ratio::from_integer(7));
        assert_eq!(parse_ratio("0.05").unwrap(), Ratio::new(1, 20));
        assert_eq!(parse_ratio("-0.5").unwrap(), Ratio::new(-1, 2));
        assert_eq!(parse_ratio("1.0").unwrap(), Ratio::from_integer(1));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("abc").is_err());
    }

    #[test]
    fn format_is_reduced_and_round_trips() {
        let r = Ratio::new(-18, 2);
        let s = format_ratio(r);
        assert_eq!(s, "-9/1");
        assert_eq!(parse_ratio(&s).unwrap(), r);
    }
}
