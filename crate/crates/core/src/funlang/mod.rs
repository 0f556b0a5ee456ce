//! A closed language of total functions on the naturals.
//!
//! There is no recursion and no unbounded search, so every term denotes a
//! total function. Arithmetic that leaves `u64` is reported as
//! [`EvalError::Overflow`] rather than wrapped.

mod gen;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::rel::pairing;

pub use gen::{enumerate_terms, random_term, TermAlphabet};
pub use parse::{parse, parse_many, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FunExpr {
    Const(u64),
    Id,
    Succ,
    /// First Cantor projection.
    Proj0,
    /// Second Cantor projection.
    Proj1,
    /// `x -> <f(x), g(x)>`
    Pair(Box<FunExpr>, Box<FunExpr>),
    /// `x -> f(g(x))`
    Compose(Box<FunExpr>, Box<FunExpr>),
    Double,
    DoublePlus1,
    Half,
    /// `x -> x mod k`, `k >= 1`.
    Mod(u64),
    Add(Box<FunExpr>, Box<FunExpr>),
    Mul(Box<FunExpr>, Box<FunExpr>),
    /// `x -> if f(x) < g(x) { then(x) } else { else(x) }`
    IfLess(Box<FunExpr>, Box<FunExpr>, Box<FunExpr>, Box<FunExpr>),
    /// Finite patch over a default function.
    Table {
        overrides: BTreeMap<u64, u64>,
        default: Box<FunExpr>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("arithmetic overflow in `{op}` at input {input}")]
    Overflow { op: &'static str, input: u64 },
}

impl FunExpr {
    pub fn pair(f: FunExpr, g: FunExpr) -> Self {
        FunExpr::Pair(Box::new(f), Box::new(g))
    }

    pub fn compose(outer: FunExpr, inner: FunExpr) -> Self {
        FunExpr::Compose(Box::new(outer), Box::new(inner))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(f: FunExpr, g: FunExpr) -> Self {
        FunExpr::Add(Box::new(f), Box::new(g))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(f: FunExpr, g: FunExpr) -> Self {
        FunExpr::Mul(Box::new(f), Box::new(g))
    }

    pub fn if_less(lhs: FunExpr, rhs: FunExpr, then: FunExpr, otherwise: FunExpr) -> Self {
        FunExpr::IfLess(
            Box::new(lhs),
            Box::new(rhs),
            Box::new(then),
            Box::new(otherwise),
        )
    }

    pub fn table(overrides: impl IntoIterator<Item = (u64, u64)>, default: FunExpr) -> Self {
        FunExpr::Table {
            overrides: overrides.into_iter().collect(),
            default: Box::new(default),
        }
    }

    /// Case split on parity: `2y -> even(y)`, `2y+1 -> odd(y)`.
    pub fn parity_split(even: FunExpr, odd: FunExpr) -> Self {
        FunExpr::if_less(
            FunExpr::Mod(2),
            FunExpr::Const(1),
            FunExpr::compose(even, FunExpr::Half),
            FunExpr::compose(odd, FunExpr::Half),
        )
    }

    pub fn eval(&self, x: u64) -> Result<u64, EvalError> {
        let overflow = |op| EvalError::Overflow { op, input: x };
        Ok(match self {
            FunExpr::Const(c) => *c,
            FunExpr::Id => x,
            FunExpr::Succ => x.checked_add(1).ok_or(overflow("succ"))?,
            FunExpr::Proj0 => pairing::proj0(x),
            FunExpr::Proj1 => pairing::proj1(x),
            FunExpr::Pair(f, g) => {
                pairing::cantor_pair(f.eval(x)?, g.eval(x)?).map_err(|_| overflow("pair"))?
            }
            FunExpr::Compose(f, g) => f.eval(g.eval(x)?)?,
            FunExpr::Double => x.checked_mul(2).ok_or(overflow("double"))?,
            FunExpr::DoublePlus1 => x
                .checked_mul(2)
                .and_then(|v| v.checked_add(1))
                .ok_or(overflow("odd1"))?,
            FunExpr::Half => x / 2,
            FunExpr::Mod(k) => x % k,
            FunExpr::Add(f, g) => f.eval(x)?.checked_add(g.eval(x)?).ok_or(overflow("add"))?,
            FunExpr::Mul(f, g) => f.eval(x)?.checked_mul(g.eval(x)?).ok_or(overflow("mul"))?,
            FunExpr::IfLess(lhs, rhs, then, otherwise) => {
                if lhs.eval(x)? < rhs.eval(x)? {
                    then.eval(x)?
                } else {
                    otherwise.eval(x)?
                }
            }
            FunExpr::Table { overrides, default } => match overrides.get(&x) {
                Some(v) => *v,
                None => default.eval(x)?,
            },
        })
    }

    /// Values on `[0, n)`.
    pub fn eval_range(&self, n: usize) -> Result<Vec<u64>, EvalError> {
        (0..n as u64).map(|x| self.eval(x)).collect()
    }

    /// Number of nodes; a table counts one node per override.
    pub fn size(&self) -> usize {
        match self {
            FunExpr::Const(_)
            | FunExpr::Id
            | FunExpr::Succ
            | FunExpr::Proj0
            | FunExpr::Proj1
            | FunExpr::Double
            | FunExpr::DoublePlus1
            | FunExpr::Half
            | FunExpr::Mod(_) => 1,
            FunExpr::Pair(f, g)
            | FunExpr::Compose(f, g)
            | FunExpr::Add(f, g)
            | FunExpr::Mul(f, g) => 1 + f.size() + g.size(),
            FunExpr::IfLess(a, b, c, d) => 1 + a.size() + b.size() + c.size() + d.size(),
            FunExpr::Table { overrides, default } => 1 + overrides.len() + default.size(),
        }
    }
}

impl fmt::Display for FunExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunExpr::Const(c) => write!(f, "const {c}"),
            FunExpr::Id => f.write_str("id"),
            FunExpr::Succ => f.write_str("succ"),
            FunExpr::Proj0 => f.write_str("proj0"),
            FunExpr::Proj1 => f.write_str("proj1"),
            FunExpr::Pair(a, b) => write!(f, "pair({a}, {b})"),
            FunExpr::Compose(a, b) => write!(f, "compose({a}, {b})"),
            FunExpr::Double => f.write_str("double"),
            FunExpr::DoublePlus1 => f.write_str("odd1"),
            FunExpr::Half => f.write_str("half"),
            FunExpr::Mod(k) => write!(f, "mod {k}"),
            FunExpr::Add(a, b) => write!(f, "add({a}, {b})"),
            FunExpr::Mul(a, b) => write!(f, "mul({a}, {b})"),
            FunExpr::IfLess(a, b, c, d) => write!(f, "ifless({a}, {b}, {c}, {d})"),
            FunExpr::Table { overrides, default } => {
                f.write_str("table{")?;
                for (i, (k, v)) in overrides.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{k}->{v}")?;
                }
                write!(f, "}} else {default}")
            }
        }
    }
}
