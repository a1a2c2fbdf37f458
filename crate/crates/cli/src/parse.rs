//! Small text formats accepted on the command line.

use cmnf::series::{parse_rational, rat};
use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::CliError;

/// A rational as `p`, `p/q` or a finite decimal such as `-0.25`.
pub fn rational(s: &str) -> Result<BigRational, CliError> {
    let t = s.trim();
    if let Some((int, frac)) = t.split_once('.') {
        let digits: String = [int, frac].concat();
        let ok = !frac.is_empty() && frac.chars().all(|c| c.is_ascii_digit());
        if ok {
            if let Ok(value) = parse_rational(&digits) {
                let scale = num_traits::pow(rat(10, 1), frac.len());
                return Ok(value / scale);
            }
        }
        return Err(CliError::Parse(format!("invalid rational `{s}`")));
    }
    parse_rational(t).map_err(|_| CliError::Parse(format!("invalid rational `{s}`")))
}

/// A complex number `x`, `yi`, `x+yi` or `x-yi` with decimal parts.
pub fn complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Parse(format!("invalid complex number `{s}`"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let num = |x: &str| x.parse::<f64>().ok().filter(|v| v.is_finite());
    let Some(body) = t.strip_suffix('i') else {
        return num(&t).map(|re| Complex64::new(re, 0.0)).ok_or_else(bad);
    };
    // Split at the last sign that is not the leading one or part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (num(&body[..k]).ok_or_else(bad)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => num(x).ok_or_else(bad)?,
    };
    Ok(Complex64::new(re, im))
}

/// Comma-separated complex components.
pub fn complex_vector(s: &str) -> Result<Vec<Complex64>, CliError> {
    s.split(',').map(complex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(rational("1/6").unwrap(), rat(1, 6));
        assert_eq!(rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(rational(" 3 ").unwrap(), rat(3, 1));
        assert!(rational("1.").is_err());
        assert!(rational("x").is_err());
    }

    #[test]
    fn complex_numbers() {
        assert_eq!(complex("1.0").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(complex("0.5-0.2i").unwrap(), Complex64::new(0.5, -0.2));
        assert_eq!(complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(complex("1e-3+1e-2i").unwrap(), Complex64::new(1e-3, 1e-2));
        assert!(complex("1+").is_err());
        assert_eq!(complex_vector("1, 0.5+0.5i").unwrap().len(), 2);
    }
}
