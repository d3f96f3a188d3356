//! Pass/fail reports shared by the verifiers and the command line.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), ..Default::default() }
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, details: impl Into<String>) -> &mut Check {
        self.push(Check {
            name: name.into(),
            status: Status::from_bool(ok),
            details: details.into(),
            witness: None,
        })
    }

    pub fn push(&mut self, check: Check) -> &mut Check {
        self.summary.total += 1;
        match check.status {
            Status::Pass => self.summary.passed += 1,
            Status::Fail => self.summary.failed += 1,
        }
        self.checks.push(check);
        self.checks.last_mut().expect("just pushed")
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.title.is_empty() {
            let _ = writeln!(out, "{}", self.title);
        }
        for c in &self.checks {
            let _ = write!(out, "{} {}", c.status, c.name);
            if !c.details.is_empty() {
                let _ = write!(out, ": {}", c.details);
            }
            if let Some(w) = &c.witness {
                let _ = write!(out, " [witness {w}]");
            }
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(out, "{} checks, {} passed, {} failed", s.total, s.passed, s.failed);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counters_and_round_trip() {
        let mut r = Report::new("demo");
        r.check("a", true, "");
        r.check("b", false, "broken").witness = Some(serde_json::json!([2, 13]));
        assert!(!r.all_passed());
        assert_eq!(r.summary, Summary { total: 2, passed: 1, failed: 1 });
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_text().contains("FAIL b: broken [witness [2,13]]"));
    }
}
