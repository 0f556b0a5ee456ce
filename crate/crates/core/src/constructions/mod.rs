//! Replayable stage constructions and worked examples.
//!
//! Undecidable ingredients are replaced by finite surrogates with explicit
//! horizons. Every diagnostic is evidence at the stated scope, never a proof
//! of the global statement.

mod demos;
mod epi;
mod family;

use std::fmt::{self, Display};

use thiserror::Error;

use crate::category::CategoryError;
use crate::funlang::EvalError;
use crate::rel::RelError;

pub use demos::{
    ceer_as_coequalizer, darkstar_closure_demo, remark_demo, sample_generators, CeerCoequalizer,
    DarkstarDemo, RemarkDemo,
};
pub use epi::{epi_case_identity, epi_not_onto_example, CaseReport, EpiNotOnto, KbarSurrogate};
pub use family::{
    bundled_family, bundled_family_text, counter_pi1_machine, CoCeFamily, CounterPi1,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    /// A surrogate breaks one of its own invariants.
    #[error("surrogate invariant violated ({invariant}): {detail}")]
    Surrogate {
        invariant: &'static str,
        detail: String,
    },
    #[error("bound too small: need n >= {need_n}")]
    BoundTooSmall { need_n: usize },
    #[error("stage {stage} is below the horizon {horizon}")]
    BelowHorizon { stage: u64, horizon: u64 },
    #[error("stage {stage} exceeds the surrogate horizon {horizon}")]
    HorizonExceeded { stage: u64, horizon: u64 },
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl ConstructionError {
    /// Errors caused by the surrogate data rather than by the request.
    pub fn is_surrogate_violation(&self) -> bool {
        matches!(
            self,
            ConstructionError::Format { .. }
                | ConstructionError::Surrogate { .. }
                | ConstructionError::HorizonExceeded { .. }
        )
    }
}

pub type Result<T, E = ConstructionError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Named facts and pass/fail checks produced by a construction.
///
/// Rendered as `key=value` lines in insertion order, so equal runs give equal text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    pub construction: &'static str,
    pub summary: String,
    fields: Vec<(String, String)>,
    checks: Vec<Check>,
}

impl Diagnostics {
    pub fn new(construction: &'static str) -> Self {
        Diagnostics {
            construction,
            summary: String::new(),
            fields: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn field(&mut self, key: &str, value: impl Display) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Display) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail: detail.to_string(),
        });
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn structured(&self) -> String {
        let mut out = format!("construction={}\n", self.construction);
        for (k, v) in &self.fields {
            out.push_str(&format!("{k}={v}\n"));
        }
        for c in &self.checks {
            let status = if c.pass { "pass" } else { "fail" };
            out.push_str(&format!("check.{}={status}", c.name));
            if !c.detail.is_empty() {
                out.push_str(&format!(" {}", c.detail));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "status={}\n",
            if self.passed() { "pass" } else { "fail" }
        ));
        out
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.construction, self.summary)?;
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            write!(f, "  {mark} {}", c.name)?;
            if !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Parses `key=value` tokens of a header line such as `family E=8 horizon=64`.
fn header_values(
    line: &str,
    keyword: &str,
    keys: &[&str],
    lineno: usize,
) -> Result<Vec<u64>> {
    let err = |message: String| ConstructionError::Format {
        line: lineno,
        message,
    };
    let mut words = line.split_whitespace();
    if words.next().map(str::to_ascii_lowercase).as_deref() != Some(keyword) {
        return Err(err(format!("expected `{keyword}` header")));
    }
    let mut values = vec![None; keys.len()];
    for word in words {
        let (k, v) = word
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, found `{word}`")))?;
        let slot = keys
            .iter()
            .position(|key| key.eq_ignore_ascii_case(k))
            .ok_or_else(|| err(format!("unknown header key `{k}`")))?;
        let v: u64 = v.parse().map_err(|_| err(format!("bad number `{v}`")))?;
        if values[slot].replace(v).is_some() {
            return Err(err(format!("duplicate header key `{k}`")));
        }
    }
    keys.iter()
        .zip(values)
        .map(|(k, v)| v.ok_or_else(|| err(format!("missing header key `{k}`"))))
        .collect()
}

/// Non-comment, non-blank lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Parses `@s` stamps.
fn stamp(word: &str, lineno: usize) -> Result<u64> {
    word.strip_prefix('@')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| ConstructionError::Format {
            line: lineno,
            message: format!("expected `@stage`, found `{word}`"),
        })
}

fn number(word: &str, lineno: usize) -> Result<u64> {
    word.parse().map_err(|_| ConstructionError::Format {
        line: lineno,
        message: format!("bad number `{word}`"),
    })
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
