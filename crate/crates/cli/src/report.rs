use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Outcome of a single pass/fail check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
}

/// Machine-readable record of one command run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct RunReport {
    pub command: Vec<String>,
    pub parameters: BTreeMap<String, String>,
    pub results: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub seed: Option<u64>,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        Self { command, ..Self::default() }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn result(&mut self, key: &str, value: f64) -> &mut Self {
        self.results.insert(key.to_string(), value);
        self
    }

    pub fn check(&mut self, name: &str, passed: bool, measured: f64, tolerance: f64) -> &mut Self {
        self.checks.push(Check { name: name.to_string(), passed, measured, tolerance });
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are finite")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        if !self.parameters.is_empty() {
            out.push_str("parameters:\n");
            for (k, v) in &self.parameters {
                let _ = writeln!(out, "  {k} = {v}");
            }
        }
        if !self.results.is_empty() {
            out.push_str("results:\n");
            for (k, v) in &self.results {
                let _ = writeln!(out, "  {k} = {}", fmt_g(*v));
            }
        }
        if !self.checks.is_empty() {
            out.push_str("checks:\n");
            for c in &self.checks {
                let verdict = if c.passed { "pass" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "  [{verdict}] {}: measured {}, tolerance {}",
                    c.name,
                    fmt_g(c.measured),
                    fmt_g(c.tolerance)
                );
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        let _ = writeln!(out, "wall time: {:.3} s", self.wall_time_s);
        out
    }
}

/// Formats like C's `%.12g`.
pub fn fmt_g(x: f64) -> String {
    const PRECISION: i32 = 12;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    } else {
        strip_zeros(&format!("{:.*}", (PRECISION - 1 - exp) as usize, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
