//! Number formatting and argument parsing helpers.

use num_complex::Complex64;

/// Decimal notation with 17 significant digits, trailing zeros removed.
pub fn decimal(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.16e}", v.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let mut out = String::new();
    if v < 0.0 {
        out.push('-');
    }
    if exp < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(&digits);
    } else {
        let int_len = exp as usize + 1;
        if int_len >= digits.len() {
            out.push_str(&digits);
            out.extend(std::iter::repeat_n('0', int_len - digits.len()));
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

/// `re`, `imi`, `re+imi` or `re-imi`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    let bad = || format!("cannot parse complex number '{s}'");
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(Complex64::from).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| -> Result<f64, String> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| bad())?;
            Ok(Complex64::new(re, imag(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// Comma-separated list of complex numbers.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(',').map(parse_complex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals() {
        assert_eq!(decimal(1.0), "1");
        assert_eq!(decimal(0.0), "0");
        assert_eq!(decimal(0.125), "0.125");
        assert_eq!(decimal(0.1), "0.10000000000000001");
        assert_eq!(decimal(-2.5e-5), "-0.000025000000000000001");
        assert_eq!(decimal(-0.0078125), "-0.0078125");
        assert_eq!(decimal(123456.5), "123456.5");
        assert_eq!(decimal(1e20), "100000000000000000000");
        assert_eq!(decimal(1.0 / 3.0), "0.33333333333333331");
    }

    #[test]
    fn decimals_round_trip() {
        for v in [0.1, 1.0 / 3.0, 2.0f64.sqrt(), 1e-17, 6.02e23, -0.75, 0.16759713] {
            assert_eq!(decimal(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.6").unwrap(), Complex64::new(0.6, 0.0));
        assert_eq!(parse_complex("0.48i").unwrap(), Complex64::new(0.0, 0.48));
        assert_eq!(parse_complex("0.3+0.4i").unwrap(), Complex64::new(0.3, 0.4));
        assert_eq!(parse_complex("-0.3-0.4i").unwrap(), Complex64::new(-0.3, -0.4));
        assert_eq!(parse_complex("1e-3+2e-1i").unwrap(), Complex64::new(1e-3, 0.2));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("1-i").unwrap(), Complex64::new(1.0, -1.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+2j").is_err());
        assert_eq!(parse_complex_list("0,1,0").unwrap().len(), 3);
    }
}
