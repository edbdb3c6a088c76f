//! Front end for `lehmer-core`: single-shot commands that print JSON records
//! and the corpus verification suites behind `lehmer verify`.

pub mod commands;
pub mod report;
pub mod suites;

use lehmer_core::dyadic::{parse_rational, Dyadic, Round};
use lehmer_core::{Error, Result};

/// Exit codes of the `lehmer` binary.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PRECISION: i32 = 3;
}

/// Exit code for an error that aborts a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted(_) => exit::PRECISION,
        _ => exit::USAGE,
    }
}

/// Parse a tolerance such as `2^-40`, `1e-12` or `1/1024`, rounded down to
/// a dyadic.
pub fn parse_tol(s: &str) -> Result<Dyadic> {
    let s = s.trim();
    let r = match s.strip_prefix("2^") {
        Some(e) => parse_rational(&format!("1*2^{e}"))?,
        None => parse_rational(s)?,
    };
    let t = Dyadic::from_ratio(&r, 64, Round::Down);
    if !t.is_positive() {
        return Err(Error::OutOfRange(format!("tolerance must be positive, got '{s}'")));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances() {
        assert_eq!(parse_tol("2^-40").unwrap(), Dyadic::pow2(-40));
        assert_eq!(parse_tol("1/1024").unwrap(), Dyadic::pow2(-10));
        let t = parse_tol("1e-12").unwrap().to_f64();
        assert!((t - 1e-12).abs() < 1e-27);
        assert!(parse_tol("0").is_err());
        assert!(parse_tol("-1").is_err());
    }
}
