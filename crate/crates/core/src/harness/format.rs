//! Number formatting for CSV output.

/// How reals are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NumberStyle {
    /// `0.65036E+01`, five significant digits.
    #[default]
    Fortran,
    /// Shortest round-trip representation.
    Plain,
}

/// Fortran `E12.5` style: `0.ddddd E±xx` with a leading zero.
pub fn fortran_e(x: f64) -> String {
    if x == 0.0 {
        return "0.00000E+00".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    // Rust rounds the mantissa correctly; shift the exponent by one
    let s = format!("{:.4e}", x.abs());
    let (mant, exp) = s.split_once('e').expect("exponent marker");
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let exp: i32 = exp.parse::<i32>().expect("integer exponent") + 1;
    let sign = if x < 0.0 { "-" } else { "" };
    let esign = if exp < 0 { '-' } else { '+' };
    format!("{sign}0.{digits}E{esign}{:02}", exp.abs())
}

/// Shortest representation that parses back to the same double.
pub fn plain(x: f64) -> String {
    format!("{x:?}")
}

pub fn real(x: f64, style: NumberStyle) -> String {
    match style {
        NumberStyle::Fortran => fortran_e(x),
        NumberStyle::Plain => plain(x),
    }
}

/// Parses the Fortran style back; mainly for tests.
pub fn parse_fortran_e(s: &str) -> Option<f64> {
    s.trim().replace('D', "E").parse().ok()
}
