//! Stage events emitted by constructions and replayed by relation specs.
//!
//! Text format, one event per line: `merge x y @s`, `isolate x @s`,
//! `enumU x @s`. Blank lines and `#` comments are ignored.

use std::fmt;

use super::RelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StageEvent {
    Merge {
        x: u64,
        y: u64,
        stage: u64,
    },
    /// Coceer extraction making `{x}` a singleton.
    Isolate {
        x: u64,
        stage: u64,
    },
    /// `x` enters the enumerated set U.
    EnumU {
        x: u64,
        stage: u64,
    },
}

impl StageEvent {
    pub fn stage(&self) -> u64 {
        match *self {
            StageEvent::Merge { stage, .. }
            | StageEvent::Isolate { stage, .. }
            | StageEvent::EnumU { stage, .. } => stage,
        }
    }
}

impl fmt::Display for StageEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StageEvent::Merge { x, y, stage } => write!(f, "merge {x} {y} @{stage}"),
            StageEvent::Isolate { x, stage } => write!(f, "isolate {x} @{stage}"),
            StageEvent::EnumU { x, stage } => write!(f, "enumU {x} @{stage}"),
        }
    }
}

/// Append-only event log with non-decreasing stages.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct StageTrace {
    events: Vec<StageEvent>,
}

impl StageTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_events(events: impl IntoIterator<Item = StageEvent>) -> Result<Self, RelError> {
        let mut trace = StageTrace::new();
        for e in events {
            trace.push(e)?;
        }
        Ok(trace)
    }

    pub fn push(&mut self, event: StageEvent) -> Result<(), RelError> {
        if let Some(last) = self.events.last() {
            if event.stage() < last.stage() {
                return Err(RelError::Trace(format!(
                    "event `{event}` goes back from stage {}",
                    last.stage()
                )));
            }
        }
        self.events.push(event);
        Ok(())
    }

    pub fn events(&self) -> &[StageEvent] {
        &self.events
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Events with stage `<= s`.
    pub fn up_to(&self, s: u64) -> impl Iterator<Item = &StageEvent> {
        self.events.iter().take_while(move |e| e.stage() <= s)
    }

    pub fn last_stage(&self) -> Option<u64> {
        self.events.last().map(StageEvent::stage)
    }

    pub fn merges_up_to(&self, s: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.up_to(s).filter_map(|e| match *e {
            StageEvent::Merge { x, y, .. } => Some((x, y)),
            _ => None,
        })
    }

    pub fn isolated_up_to(&self, s: u64) -> impl Iterator<Item = u64> + '_ {
        self.up_to(s).filter_map(|e| match *e {
            StageEvent::Isolate { x, .. } => Some(x),
            _ => None,
        })
    }

    pub fn enumerated_up_to(&self, s: u64) -> impl Iterator<Item = u64> + '_ {
        self.up_to(s).filter_map(|e| match *e {
            StageEvent::EnumU { x, .. } => Some(x),
            _ => None,
        })
    }

    pub fn parse(text: &str) -> Result<Self, RelError> {
        let mut trace = StageTrace::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| RelError::Parse {
                line: idx + 1,
                message: format!("{msg}: `{line}`"),
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            let (body, stage) = match words.split_last() {
                Some((last, body)) if last.starts_with('@') => (
                    body,
                    last[1..].parse::<u64>().map_err(|_| bad("bad stage"))?,
                ),
                _ => return Err(bad("missing `@stage`")),
            };
            let num = |w: &str| w.parse::<u64>().map_err(|_| bad("bad number"));
            let event = match body {
                ["merge", x, y] => StageEvent::Merge {
                    x: num(x)?,
                    y: num(y)?,
                    stage,
                },
                ["isolate", x] => StageEvent::Isolate { x: num(x)?, stage },
                [kw, x] if kw.eq_ignore_ascii_case("enumu") => {
                    StageEvent::EnumU { x: num(x)?, stage }
                }
                _ => return Err(bad("unknown event")),
            };
            trace.push(event).map_err(|e| RelError::Parse {
                line: idx + 1,
                message: e.to_string(),
            })?;
        }
        Ok(trace)
    }
}

impl fmt::Display for StageTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        let text = "# demo\nmerge 1 2 @0\n\nisolate 4 @3\nenumU 4 @3  # comment\n";
        let trace = StageTrace::parse(text).unwrap();
        assert_eq!(trace.events().len(), 3);
        assert_eq!(StageTrace::parse(&trace.to_string()).unwrap(), trace);
        assert_eq!(trace.isolated_up_to(2).count(), 0);
        assert_eq!(trace.isolated_up_to(3).collect::<Vec<_>>(), vec![4]);
    }

    #[test]
    fn stages_must_not_decrease() {
        let err = StageTrace::parse("merge 1 2 @5\nmerge 2 3 @4\n").unwrap_err();
        assert!(matches!(err, RelError::Parse { line: 2, .. }));
        let mut t = StageTrace::new();
        t.push(StageEvent::EnumU { x: 1, stage: 2 }).unwrap();
        assert!(t.push(StageEvent::EnumU { x: 1, stage: 1 }).is_err());
    }

    #[test]
    fn malformed_lines() {
        assert!(StageTrace::parse("merge 1 @2").is_err());
        assert!(StageTrace::parse("merge 1 2").is_err());
        assert!(StageTrace::parse("split 1 @2").is_err());
        assert!(StageTrace::parse("isolate x @2").is_err());
    }
}
