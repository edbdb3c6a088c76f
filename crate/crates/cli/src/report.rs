//! Check records and reports.
//!
//! A report is a list of checks written as one JSON object per line. Lines
//! contain no timing information, so the same inputs always produce the same
//! bytes.

use std::fmt;
use std::io::{self, Write};

use lehmer_core::dyadic::Dyadic;
use lehmer_core::heights::HeightInterval;
use lehmer_core::Error;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Indeterminate => "indeterminate",
        })
    }
}

/// One verified (or refuted) inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub tolerance: String,
    pub paper_tag: &'static str,
}

impl Check {
    pub fn new(name: impl Into<String>, tag: &'static str, status: Status) -> Check {
        Check {
            name: name.into(),
            status,
            lhs: String::new(),
            rhs: String::new(),
            tolerance: String::new(),
            paper_tag: tag,
        }
    }

    pub fn sides(mut self, lhs: impl Into<String>, rhs: impl Into<String>) -> Check {
        self.lhs = lhs.into();
        self.rhs = rhs.into();
        self
    }

    pub fn tol(mut self, tol: &Dyadic) -> Check {
        self.tolerance = num(tol);
        self
    }

    /// A check that could not be evaluated. Exhausted precision is
    /// indeterminate; any other error is a failure.
    pub fn from_error(name: impl Into<String>, tag: &'static str, e: &Error) -> Check {
        let status = match e {
            Error::PrecisionExhausted(_) => Status::Indeterminate,
            _ => Status::Fail,
        };
        Check::new(name, tag, status).sides(format!("error: {e}"), "")
    }

    /// `lhs <= rhs` for certified values: pass when it holds for every point
    /// of the enclosures, fail when it fails for every point.
    pub fn le(name: impl Into<String>, tag: &'static str, lhs: (&Dyadic, &Dyadic), rhs: (&Dyadic, &Dyadic)) -> Check {
        let status = if lhs.1 <= rhs.0 {
            Status::Pass
        } else if lhs.0 > rhs.1 {
            Status::Fail
        } else {
            Status::Indeterminate
        };
        Check::new(name, tag, status).sides(range(lhs.0, lhs.1), range(rhs.0, rhs.1))
    }

    /// A boolean assertion with a textual description of both sides.
    pub fn truth(name: impl Into<String>, tag: &'static str, ok: bool, lhs: impl Into<String>, rhs: impl Into<String>) -> Check {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check::new(name, tag, status).sides(lhs, rhs)
    }
}

/// Fixed-format rendering of a dyadic value.
pub fn num(d: &Dyadic) -> String {
    format!("{:.15e}", d.to_f64())
}

pub fn range(lo: &Dyadic, hi: &Dyadic) -> String {
    if lo == hi {
        num(lo)
    } else {
        format!("[{}, {}]", num(lo), num(hi))
    }
}

pub fn height(h: &HeightInterval) -> String {
    range(h.lo(), h.hi())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
}

impl Summary {
    pub fn total(&self) -> usize {
        self.pass + self.fail + self.indeterminate
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} checks: {} pass, {} fail, {} indeterminate",
            self.total(),
            self.pass,
            self.fail,
            self.indeterminate
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for c in &self.checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Indeterminate => s.indeterminate += 1,
            }
        }
        s
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> io::Result<()> {
        for c in &self.checks {
            serde_json::to_writer(&mut w, c)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn le_statuses() {
        let d = Dyadic::from;
        assert_eq!(Check::le("a", "t", (&d(1), &d(2)), (&d(2), &d(3))).status, Status::Pass);
        assert_eq!(Check::le("a", "t", (&d(4), &d(5)), (&d(2), &d(3))).status, Status::Fail);
        assert_eq!(Check::le("a", "t", (&d(1), &d(3)), (&d(2), &d(4))).status, Status::Indeterminate);
    }

    #[test]
    fn summary_and_lines() {
        let mut r = Report::new();
        r.push(Check::truth("x", "t", true, "1", "1"));
        r.push(Check::truth("y", "t", false, "1", "2"));
        let s = r.summary();
        assert_eq!((s.pass, s.fail, s.total()), (1, 1, 2));
        let text = r.to_jsonl();
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with(r#"{"name":"x","status":"pass""#));
    }
}
