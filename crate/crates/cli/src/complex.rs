//! Complex literals for `--sigma`: `2.5`, `-i`, `3i`, `1-0.5i`, `1e-3+2j`.

use num::complex::Complex64;

fn real(s: &str) -> Option<f64> {
    // f64's parser also takes "inf" and "nan"; sigma has to be finite
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Coefficient of an imaginary part written with its sign, e.g. `"+"`,
/// `"-2.5"`.
fn imaginary(s: &str) -> Option<f64> {
    match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ if s.ends_with(['+', '-']) => None,
        _ => real(s),
    }
}

/// Parse a real or complex literal.
pub fn parse_complex(input: &str) -> Result<Complex64, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("not a real or complex number: {input:?}");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return real(&s).map(|re| Complex64::new(re, 0.0)).ok_or_else(bad);
    };
    // split before the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k]).ok_or_else(bad)?, imaginary(&body[k..]).ok_or_else(bad)?),
        None => (0.0, imaginary(body).ok_or_else(bad)?),
    };
    Ok(Complex64::new(re, im))
}
