//! Line-oriented relation definitions.
//!
//! ```text
//! # comments
//! rel two   = idn 2
//! rel gen   = frompairs [ (0,1)@0, (1,5)@3 ]
//! rel joint = coproduct two gen
//! rel z     = coeq two const 0 id
//! rel y     = coceer seed=[ [0] ] trace=y.trace
//! ```
//!
//! Besides the core forms this accepts `idnK` as shorthand for `idn K`,
//! `kernel FUNEXPR`, `frompairs trace=FILE`, and `coceer seed=labels FUNEXPR`.

use crate::funlang;

use super::{CoceerSeed, PairSource, RelError, RelationSpec, StageTrace, StampedPair};

/// Named relations in definition order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationFile {
    defs: Vec<(String, RelationSpec)>,
}

impl RelationFile {
    pub fn get(&self, name: &str) -> Option<&RelationSpec> {
        self.defs.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.defs.iter().map(|(n, _)| n.as_str())
    }

    pub fn insert(&mut self, name: &str, spec: RelationSpec) -> Result<(), RelError> {
        if self.get(name).is_some() {
            return Err(RelError::InvalidSpec(format!("`{name}` is defined twice")));
        }
        self.defs.push((name.to_string(), spec));
        Ok(())
    }
}

/// Parses a relation file; `load` resolves `trace=FILE` references.
pub fn parse_relation_file(
    text: &str,
    load: &dyn Fn(&str) -> Result<String, String>,
) -> Result<RelationFile, RelError> {
    let mut file = RelationFile::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at_line = |e: RelError| match e {
            RelError::Parse { message, .. } => RelError::Parse {
                line: idx + 1,
                message,
            },
            other => RelError::Parse {
                line: idx + 1,
                message: other.to_string(),
            },
        };
        let body = line
            .strip_prefix("rel")
            .filter(|rest| rest.starts_with(char::is_whitespace))
            .ok_or_else(|| at_line(syntax("expected `rel NAME = ...`")))?;
        let (name, rhs) = body
            .split_once('=')
            .ok_or_else(|| at_line(syntax("expected `=`")))?;
        let name = name.trim();
        if !is_name(name) {
            return Err(at_line(syntax(&format!("bad relation name `{name}`"))));
        }
        let spec = parse_relation_rhs(rhs, &file, load).map_err(at_line)?;
        file.insert(name, spec).map_err(at_line)?;
    }
    Ok(file)
}

/// Parses the right-hand side of a definition against earlier names.
pub fn parse_relation_rhs(
    rhs: &str,
    known: &RelationFile,
    load: &dyn Fn(&str) -> Result<String, String>,
) -> Result<RelationSpec, RelError> {
    let rhs = rhs.trim();
    let (head, rest) = match rhs.split_once(char::is_whitespace) {
        Some((h, r)) => (h, r.trim()),
        None => (rhs, ""),
    };
    let lookup = |name: &str| {
        known
            .get(name)
            .cloned()
            .ok_or_else(|| RelError::InvalidSpec(format!("unknown relation `{name}`")))
    };
    let two_names = |rest: &str| -> Result<(RelationSpec, RelationSpec), RelError> {
        match rest.split_whitespace().collect::<Vec<_>>()[..] {
            [a, b] => Ok((lookup(a)?, lookup(b)?)),
            _ => Err(syntax("expected two relation names")),
        }
    };
    let spec = match head.to_ascii_lowercase().as_str() {
        "id" if rest.is_empty() => RelationSpec::IdAll,
        "idn" => RelationSpec::id_n(parse_nat(rest)?)?,
        h if h.len() > 3 && h.starts_with("idn") && rest.is_empty() => {
            RelationSpec::id_n(parse_nat(&h[3..])?)?
        }
        "kernel" => RelationSpec::Kernel(funlang::parse(rest).map_err(fun_err)?),
        "frompairs" => {
            if let Some(path) = rest.strip_prefix("trace=") {
                RelationSpec::FromPairs(PairSource::TraceBacked(load_trace(path.trim(), load)?))
            } else {
                let pairs = Scanner::new(rest).pair_list(true)?;
                RelationSpec::FromPairs(PairSource::ExplicitList(
                    pairs
                        .into_iter()
                        .map(|(x, y, stage)| StampedPair {
                            x,
                            y,
                            stage: stage.unwrap_or(0),
                        })
                        .collect(),
                ))
            }
        }
        "funrange" => {
            RelationSpec::FromPairs(PairSource::FunRange(funlang::parse(rest).map_err(fun_err)?))
        }
        "product" => {
            let (a, b) = two_names(rest)?;
            RelationSpec::product(a, b)
        }
        "coproduct" => {
            let (a, b) = two_names(rest)?;
            RelationSpec::coproduct(a, b)
        }
        "coeq" => {
            let (name, funs) = rest
                .split_once(char::is_whitespace)
                .ok_or_else(|| syntax("expected `coeq NAME FUNEXPR FUNEXPR`"))?;
            let mut funs = funlang::parse_many(funs, 2).map_err(fun_err)?.into_iter();
            let (left, right) = (funs.next().unwrap(), funs.next().unwrap());
            RelationSpec::coequalizer(lookup(name)?, left, right)
        }
        "closure" => {
            let (name, list) = rest
                .split_once(char::is_whitespace)
                .ok_or_else(|| syntax("expected `closure NAME [ ... ]`"))?;
            let pairs = Scanner::new(list).pair_list(false)?;
            RelationSpec::closure_of(
                lookup(name)?,
                pairs.into_iter().map(|(x, y, _)| (x, y)).collect(),
            )
        }
        "coceer" => parse_coceer(rest, load)?,
        _ => return Err(syntax(&format!("unknown relation form `{rhs}`"))),
    };
    spec.validate()?;
    Ok(spec)
}

fn parse_coceer(
    rest: &str,
    load: &dyn Fn(&str) -> Result<String, String>,
) -> Result<RelationSpec, RelError> {
    let (seed_part, trace) = match rest.rfind("trace=") {
        Some(at) => (
            rest[..at].trim(),
            load_trace(rest[at + "trace=".len()..].trim(), load)?,
        ),
        None => (rest, StageTrace::new()),
    };
    let seed_text = seed_part
        .strip_prefix("seed=")
        .ok_or_else(|| syntax("expected `seed=`"))?
        .trim();
    let seed = if let Some(f) = seed_text.strip_prefix("labels") {
        CoceerSeed::Labels(funlang::parse(f).map_err(fun_err)?)
    } else {
        let mut sc = Scanner::new(seed_text);
        let blocks = sc.nested_list()?;
        sc.finish()?;
        CoceerSeed::Blocks(blocks)
    };
    Ok(RelationSpec::Coceer { seed, trace })
}

fn load_trace(
    path: &str,
    load: &dyn Fn(&str) -> Result<String, String>,
) -> Result<StageTrace, RelError> {
    let text =
        load(path).map_err(|e| RelError::InvalidSpec(format!("cannot read `{path}`: {e}")))?;
    StageTrace::parse(&text).map_err(|e| RelError::InvalidSpec(format!("{path}: {e}")))
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn syntax(message: &str) -> RelError {
    RelError::Parse {
        line: 0,
        message: message.to_string(),
    }
}

fn fun_err(e: funlang::ParseError) -> RelError {
    syntax(&format!("function: {e}"))
}

fn parse_nat(s: &str) -> Result<u64, RelError> {
    s.trim()
        .parse()
        .map_err(|_| syntax(&format!("expected a natural number, found `{s}`")))
}

/// Small cursor over bracketed number lists.
struct Scanner<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), RelError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(&format!("expected `{}`", c as char)))
        }
    }

    fn nat(&mut self) -> Result<u64, RelError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.text[start..self.pos]).unwrap_or("");
        parse_nat(digits)
    }

    fn finish(&mut self) -> Result<(), RelError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(syntax(&format!("unexpected `{}`", c as char))),
        }
    }

    /// `[ (a,b)@s, ... ]`; stamps are only accepted when `stamped`.
    fn pair_list(&mut self, stamped: bool) -> Result<Vec<(u64, u64, Option<u64>)>, RelError> {
        let mut out = Vec::new();
        self.expect(b'[')?;
        while !self.eat(b']') {
            if !out.is_empty() {
                self.expect(b',')?;
            }
            self.expect(b'(')?;
            let x = self.nat()?;
            self.expect(b',')?;
            let y = self.nat()?;
            self.expect(b')')?;
            let stage = if stamped && self.eat(b'@') {
                Some(self.nat()?)
            } else {
                None
            };
            out.push((x, y, stage));
        }
        self.finish()?;
        Ok(out)
    }

    /// `[ [a, b], [c] ]`
    fn nested_list(&mut self) -> Result<Vec<Vec<u64>>, RelError> {
        let mut blocks = Vec::new();
        self.expect(b'[')?;
        while !self.eat(b']') {
            if !blocks.is_empty() {
                self.expect(b',')?;
            }
            self.expect(b'[')?;
            let mut block = Vec::new();
            while !self.eat(b']') {
                if !block.is_empty() {
                    self.expect(b',')?;
                }
                block.push(self.nat()?);
            }
            blocks.push(block);
        }
        Ok(blocks)
    }
}
