use std::fmt::Display;

use clap::ValueEnum;
use eeq_core::category::Scope;
use eeq_core::rel::Approximant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

/// Collects both renderings of a command's result; one is printed.
#[derive(Debug, Default)]
pub struct Report {
    fields: Vec<(String, String)>,
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.field("command", command);
        r
    }

    pub fn field(&mut self, key: &str, value: impl Display) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn scope(&mut self, scope: Scope) {
        self.field("stage", scope.stage);
        self.field("n", scope.domain);
        self.field("m", scope.codomain);
    }

    pub fn line(&mut self, text: impl Display) {
        self.lines.push(text.to_string());
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Human => {
                for line in &self.lines {
                    out.push_str(line);
                    out.push('\n');
                }
            }
            Format::Structured => {
                for (k, v) in &self.fields {
                    out.push_str(&format!("{k}={v}\n"));
                }
            }
        }
        out
    }
}

/// `[0]={0,3,6} [1]={1,4,7}`.
pub fn classes_line(window: &Approximant) -> String {
    window
        .classes()
        .iter()
        .map(|c| format!("[{}]={}", c[0], set(c)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn set(members: &[u64]) -> String {
    let inner: Vec<String> = members.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use eeq_core::rel::{approximant, RelationSpec};

    #[test]
    fn residue_classes() {
        let w = approximant(&RelationSpec::IdN(3), 1, 9).unwrap();
        assert_eq!(classes_line(&w), "[0]={0,3,6} [1]={1,4,7} [2]={2,5,8}");
    }

    #[test]
    fn renderings() {
        let mut r = Report::new("show");
        r.field("classes", 3);
        r.line("three classes");
        assert_eq!(r.render(Format::Structured), "command=show\nclasses=3\n");
        assert_eq!(r.render(Format::Human), "three classes\n");
    }
}
