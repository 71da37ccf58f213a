//! Suite reports and their JSON and text renderings.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub suite: String,
    pub case: String,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartSummary {
    pub suite: String,
    pub cases: u64,
    pub passed: u64,
}

/// Wall time is kept out of the JSON so reruns compare byte for byte.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub passed: u64,
    pub failures: Vec<Failure>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<PartSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coverage: Vec<String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl PartialEq for SuiteReport {
    fn eq(&self, o: &Self) -> bool {
        self.suite == o.suite
            && self.cases == o.cases
            && self.passed == o.passed
            && self.failures == o.failures
            && self.seed == o.seed
            && self.notes == o.notes
            && self.parts == o.parts
            && self.coverage == o.coverage
    }
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_owned(),
            cases: 0,
            passed: 0,
            failures: Vec::new(),
            seed,
            notes: Vec::new(),
            parts: Vec::new(),
            coverage: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn is_success(&self) -> bool {
        self.failures.is_empty()
    }

    /// Process exit status: 0 when every case passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.is_success() {
            0
        } else {
            1
        }
    }

    /// The summary line for one part of an aggregate run.
    pub fn part(&self, suite: &str) -> Option<&PartSummary> {
        self.parts.iter().find(|p| p.suite == suite)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format `{s}`"))),
        }
    }
}

/// Text layout, one item per line:
///
/// ```text
/// thm3: 10/12 passed (seed 42, 0.81 s)
///   note: ...
///   part prop1: 100/100
///   covered: op, op, ...
///   FAIL<TAB>[suite]<TAB>case<TAB>{witness json}
/// ```
pub fn emit_report(r: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{}: {}/{} passed (seed {}, {:.2} s)",
                r.suite,
                r.passed,
                r.cases,
                r.seed,
                r.wall_time.as_secs_f64()
            );
            for n in &r.notes {
                let _ = writeln!(s, "  note: {n}");
            }
            for p in &r.parts {
                let _ = writeln!(s, "  part {}: {}/{}", p.suite, p.passed, p.cases);
            }
            if !r.coverage.is_empty() {
                let _ = writeln!(s, "  covered: {}", r.coverage.join(", "));
            }
            for f in &r.failures {
                let w = serde_json::to_string(&f.witness).expect("witnesses serialize");
                let _ = writeln!(s, "  FAIL\t[{}]\t{}\t{}", f.suite, f.case, w);
            }
            s
        }
    }
}

fn ratio(s: &str) -> Result<(u64, u64)> {
    let (p, c) = s
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("expected passed/cases, got `{s}`")))?;
    let num = |x: &str| {
        x.trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad count `{x}`")))
    };
    Ok((num(p)?, num(c)?))
}

/// Reads either rendering back.
pub fn parse_report(text: &str, format: Format) -> Result<SuiteReport> {
    if format == Format::Json {
        return Ok(serde_json::from_str(text)?);
    }
    let mut lines = text.lines();
    let head = lines
        .next()
        .ok_or_else(|| Error::Parse("empty report".into()))?;
    let (suite, rest) = head
        .split_once(": ")
        .ok_or_else(|| Error::Parse("missing suite name".into()))?;
    let (counts, tail) = rest
        .split_once(" passed (seed ")
        .ok_or_else(|| Error::Parse("missing pass counts".into()))?;
    let (passed, cases) = ratio(counts)?;
    let seed = tail
        .split(',')
        .next()
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Parse("missing seed".into()))?;
    let mut r = SuiteReport::new(suite, seed);
    r.cases = cases;
    r.passed = passed;
    for line in lines {
        if let Some(n) = line.strip_prefix("  note: ") {
            r.notes.push(n.to_owned());
        } else if let Some(p) = line.strip_prefix("  part ") {
            let (name, counts) = p
                .split_once(": ")
                .ok_or_else(|| Error::Parse(line.to_owned()))?;
            let (passed, cases) = ratio(counts)?;
            r.parts.push(PartSummary {
                suite: name.to_owned(),
                cases,
                passed,
            });
        } else if let Some(c) = line.strip_prefix("  covered: ") {
            r.coverage = c.split(", ").map(str::to_owned).collect();
        } else if let Some(f) = line.strip_prefix("  FAIL\t") {
            let mut it = f.splitn(3, '\t');
            let (Some(s), Some(case), Some(w)) = (it.next(), it.next(), it.next()) else {
                return Err(Error::Parse(line.to_owned()));
            };
            let suite = s.trim_start_matches('[').trim_end_matches(']').to_owned();
            r.failures.push(Failure {
                suite,
                case: case.to_owned(),
                witness: serde_json::from_str(w)?,
            });
        } else if !line.trim().is_empty() {
            return Err(Error::Parse(format!("unexpected line `{line}`")));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> SuiteReport {
        let mut r = SuiteReport::new("thm3", 42);
        r.cases = 3;
        r.passed = 2;
        r.notes.push("finite index only".into());
        r.parts.push(PartSummary {
            suite: "prop1".into(),
            cases: 2,
            passed: 2,
        });
        r.coverage = vec!["leq".into(), "level_set".into()];
        r.failures.push(Failure {
            suite: "thm3".into(),
            case: "chain_2/omega/0".into(),
            witness: json!({"point": "bot", "nested": {"open": ["bot"], "n": 3}}),
        });
        r
    }

    #[test]
    fn json_has_stable_keys() {
        let s = emit_report(&sample(), Format::Json);
        let v: Value = serde_json::from_str(&s).unwrap();
        for k in ["suite", "cases", "passed", "failures", "seed"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert!(v.get("wall_time").is_none());
    }

    #[test]
    fn text_round_trip_keeps_failures() {
        let r = sample();
        let text = emit_report(&r, Format::Text);
        let back = parse_report(&text, Format::Text).unwrap();
        assert_eq!(back, r);
        let json = emit_report(&back, Format::Json);
        assert_eq!(parse_report(&json, Format::Json).unwrap(), r);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(SuiteReport::new("x", 0).exit_code(), 0);
        assert_eq!(sample().exit_code(), 1);
    }
}
