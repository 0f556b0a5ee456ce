use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use eeq_core::category::Scope;
use eeq_core::funlang::{self, FunExpr};
use eeq_core::rel::{parse_relation_file, parse_relation_rhs, RelationFile, RelationSpec};

use crate::output::Format;
use crate::CliError;

/// `key=value` operands of `verify` and `construct`.
#[derive(Debug, Default)]
pub struct KvArgs {
    values: BTreeMap<String, String>,
}

impl KvArgs {
    pub fn parse(raw: &[String]) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for arg in raw {
            let (k, v) = arg
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected key=value, found `{arg}`")))?;
            if values.insert(k.to_string(), v.to_string()).is_some() {
                return Err(CliError::Usage(format!("`{k}` given twice")));
            }
        }
        Ok(KvArgs { values })
    }

    pub fn take(&mut self, key: &str) -> Option<String> {
        self.values.remove(key)
    }

    pub fn require(&mut self, key: &str) -> Result<String, CliError> {
        self.take(key)
            .ok_or_else(|| CliError::Usage(format!("missing argument `{key}=`")))
    }

    pub fn take_usize(&mut self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.take(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| CliError::Usage(format!("`{key}` expects a number, found `{v}`"))),
        }
    }

    /// Rejects operands nobody consumed.
    pub fn finish(self) -> Result<(), CliError> {
        match self.values.keys().next() {
            None => Ok(()),
            Some(k) => Err(CliError::Usage(format!("unexpected argument `{k}=`"))),
        }
    }
}

/// Everything a command needs besides its own operands.
pub struct Context {
    pub scope: Scope,
    pub seed: u64,
    pub cap: usize,
    pub candidates: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    rels: RelationFile,
    base: PathBuf,
}

impl Context {
    pub fn new(
        scope: Scope,
        seed: u64,
        cap: usize,
        candidates: usize,
        format: Format,
        out: Option<PathBuf>,
        rels_path: Option<&Path>,
    ) -> Result<Self, CliError> {
        let (rels, base) = match rels_path {
            Some(path) => {
                let text = read(path)?;
                let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
                let rels = parse_relation_file(&text, &loader(&base))
                    .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
                (rels, base)
            }
            None => (RelationFile::default(), PathBuf::from(".")),
        };
        Ok(Context {
            scope,
            seed,
            cap,
            candidates,
            format,
            out,
            rels,
            base,
        })
    }

    /// A name from the relation file, or an inline definition such as `idn4`.
    pub fn relation(&self, text: &str) -> Result<RelationSpec, CliError> {
        if let Some(spec) = self.rels.get(text) {
            return Ok(spec.clone());
        }
        parse_relation_rhs(text, &self.rels, &loader(&self.base))
            .map_err(|e| CliError::Usage(format!("relation `{text}`: {e}")))
    }

    pub fn read_input(&self, name: &str) -> Result<String, CliError> {
        read(&self.base.join(name))
    }
}

pub fn function(text: &str) -> Result<FunExpr, CliError> {
    funlang::parse(text).map_err(|e| CliError::Usage(format!("function `{text}`: {e}")))
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn loader(base: &Path) -> impl Fn(&str) -> Result<String, String> + '_ {
    move |name| fs::read_to_string(base.join(name)).map_err(|e| format!("{name}: {e}"))
}

/// `s,n` with both parts at least 1.
pub fn parse_scope(text: &str) -> Result<(u64, usize), String> {
    let (s, n) = text
        .split_once(',')
        .ok_or_else(|| format!("expected `s,n`, found `{text}`"))?;
    let s: u64 = s.trim().parse().map_err(|_| format!("bad stage `{s}`"))?;
    let n: usize = n.trim().parse().map_err(|_| format!("bad bound `{n}`"))?;
    if s == 0 || n == 0 {
        return Err("stage and bound must be at least 1".into());
    }
    Ok((s, n))
}
