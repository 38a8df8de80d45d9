use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::Rational;

/// `p/q` as an exact rational. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Always `p/q` in lowest terms with `q > 0`, including integers (`1/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid rational `{0}`: expected `p/q` or an integer")]
pub struct ParseRationalError(pub String);

/// Accepts `p/q` (any sign on `p`, `q != 0`) or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let text_trim = text.trim();
    let (p, q) = match text_trim.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text_trim, "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| err())?;
    let q = BigInt::from_str(q).map_err(|_| err())?;
    if q == BigInt::from(0) {
        return Err(err());
    }
    Ok(Rational::new(p, q))
}
