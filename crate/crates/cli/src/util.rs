//! Shared CLI plumbing: the complex-number argument syntax, numeric
//! formatting (6 significant digits for summaries, 17 for files), and the
//! exit-code mapping.

use num_complex::Complex64;

/// Exit-code classes: 2 input/parse, 3 domain precondition, 4 unresolved.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }

    pub fn unresolved(message: impl Into<String>) -> Self {
        CliError {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<holofill::Error> for CliError {
    fn from(e: holofill::Error) -> Self {
        use holofill::Error::*;
        let code = match e {
            LowerHalfPlane | TooFewSteps | RegionFileParse { .. } => 2,
            _ => 3,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input(format!("io error: {e}"))
    }
}

/// Parses the `a+bi` complex syntax (no spaces): `50+2i`, `1-2i`, `2i`,
/// `-i`, `5`, `1e-3+2.5e2i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty complex number".into());
    }
    if s.contains(' ') {
        return Err(format!("complex number `{s}` must not contain spaces"));
    }
    let parse_part = |p: &str, unit_ok: bool| -> Result<f64, String> {
        match p {
            "" | "+" if unit_ok => Ok(1.0),
            "-" if unit_ok => Ok(-1.0),
            _ => p
                .parse::<f64>()
                .map_err(|_| format!("cannot parse `{p}` as a number")),
        }
    };
    if let Some(body) = s.strip_suffix('i') {
        let bytes = body.as_bytes();
        let mut split = None;
        for (idx, ch) in body.char_indices().skip(1) {
            if (ch == '+' || ch == '-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
            }
        }
        match split {
            Some(idx) => {
                let re = parse_part(&body[..idx], false)?;
                let im = parse_part(&body[idx..], true)?;
                Ok(Complex64::new(re, im))
            }
            None => Ok(Complex64::new(0.0, parse_part(body, true)?)),
        }
    } else {
        Ok(Complex64::new(parse_part(s, false)?, 0.0))
    }
}

/// clap value parser wrapper.
pub fn complex_arg(s: &str) -> Result<Complex64, String> {
    parse_complex(s)
}

/// 6 significant digits, positional where reasonable.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=6).contains(&exp) {
        return format!("{:.5e}", x);
    }
    let decimals = (5 - exp).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// 17 significant digits for machine-readable files.
pub fn sig17(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Renders a complex number back in the input syntax.
pub fn fmt_complex(z: Complex64) -> String {
    if z.im >= 0.0 {
        format!("{}+{}i", sig6(z.re), sig6(z.im))
    } else {
        format!("{}-{}i", sig6(z.re), sig6(-z.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_complex("50+2i").unwrap(), Complex64::new(50.0, 2.0));
        assert_eq!(parse_complex("1-2i").unwrap(), Complex64::new(1.0, -2.0));
        assert_eq!(parse_complex("-3+3i").unwrap(), Complex64::new(-3.0, 3.0));
        assert_eq!(parse_complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(parse_complex("10i").unwrap(), Complex64::new(0.0, 10.0));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("5").unwrap(), Complex64::new(5.0, 0.0));
        assert_eq!(parse_complex("-5.25").unwrap(), Complex64::new(-5.25, 0.0));
        assert_eq!(
            parse_complex("1e-3+2.5e2i").unwrap(),
            Complex64::new(1e-3, 250.0)
        );
        assert_eq!(parse_complex("3+i").unwrap(), Complex64::new(3.0, 1.0));
        assert_eq!(parse_complex("3-i").unwrap(), Complex64::new(3.0, -1.0));
        assert!(parse_complex("3 + 2i").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("3+2").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn sig6_shapes() {
        assert_eq!(sig6(626.0), "626.000");
        assert_eq!(sig6(0.0132629), "0.0132629");
        assert_eq!(sig6(-0.5), "-0.500000");
        assert_eq!(sig6(f64::INFINITY), "inf");
        assert_eq!(sig6(1.41491e8), "1.41491e8");
        assert_eq!(sig6(0.0), "0.00000");
    }

    #[test]
    fn sig17_round_trips_exactly() {
        for x in [1.0 / 3.0, 6.2831853071795865, 1e-30, -42.5] {
            let s = sig17(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }
}
