//! Morphisms induced by total functions, and the limits and colimits built
//! from them, checked at a finite scope.
//!
//! A scope fixes a stage `s`, a domain bound `n` and a codomain bound `m`
//! (`m = n` unless widened). Checkers evaluate the function on `[0, n)` and
//! compare images inside the target's `[0, m)` approximant. Images that land
//! at or above `m` make a verdict unknown rather than silently growing `m`.

mod laws;
mod ops;
mod sample;

use std::fmt;

use thiserror::Error;

use crate::funlang::{EvalError, FunExpr};
use crate::rel::{RelError, RelationSpec};

pub use laws::{
    coequalizer_laws, coproduct_laws, product_laws, terminal_uniqueness, CandidateConfig,
    CoequalizerReport, TerminalReport, UniversalReport,
};
pub use ops::{
    check_preserving, coequalizer, compose, copair_mediator, coproduct, equalizer_refutation,
    initial_refutation, injective_at, kernel_of_numbering, mono_separation_pair, morphism_eq,
    pair_mediator, product, reduction_check, surjective_at, terminal_morphism, Coequalizer,
    CoproductCocone, EqualizerWitness, ProductCone,
};
pub use sample::InstanceSampler;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("`{fun}` is not equivalence preserving at scope: {witness}")]
    NotPreserving { fun: String, witness: Witness },
    #[error("images leave the scope; need n >= {need_n}")]
    ScopeFault { need_n: usize },
    #[error("scope bounds must be at least 1")]
    EmptyScope,
}

pub type Result<T, E = CategoryError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scope {
    pub stage: u64,
    /// Arguments are drawn from `[0, domain)`.
    pub domain: usize,
    /// Target approximants cover `[0, codomain)`.
    pub codomain: usize,
}

impl Scope {
    pub fn new(stage: u64, n: usize) -> Self {
        Scope {
            stage,
            domain: n,
            codomain: n,
        }
    }

    pub fn with_codomain(self, codomain: usize) -> Self {
        Scope { codomain, ..self }
    }

    pub fn with_domain(self, domain: usize) -> Self {
        Scope { domain, ..self }
    }

    /// Scope for a map whose arguments are this scope's images.
    pub fn downstream(self) -> Self {
        Scope {
            domain: self.codomain,
            ..self
        }
    }

    fn validate(self) -> Result<Self> {
        if self.domain == 0 || self.codomain == 0 {
            Err(CategoryError::EmptyScope)
        } else {
            Ok(self)
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={} n={}", self.stage, self.domain)?;
        if self.codomain != self.domain {
            write!(f, " m={}", self.codomain)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    /// Two points (or least class members) violating the property.
    Pair { x: u64, y: u64 },
    /// Least members of target classes no image reaches.
    Missed(Vec<u64>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Pair { x, y } => write!(f, "x={x} y={y}"),
            Witness::Missed(classes) => {
                let list: Vec<String> = classes.iter().map(u64::to_string).collect();
                write!(f, "missed={}", list.join(","))
            }
        }
    }
}

/// Outcome of a check restricted to a scope. Nothing here is a global claim.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Verdict {
    Ok(Scope),
    Counterexample(Witness),
    Unknown { need_n: usize },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Counterexample(w) => Some(w),
            _ => None,
        }
    }

    /// 0 ok, 1 counterexample, 2 unknown at scope.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Ok(_) => 0,
            Verdict::Counterexample(_) => 1,
            Verdict::Unknown { .. } => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Ok(scope) => write!(f, "ok {scope}"),
            Verdict::Counterexample(w) => write!(f, "cex {w}"),
            Verdict::Unknown { need_n } => write!(f, "unknown need_n={need_n}"),
        }
    }
}

/// The class map `[x]_R -> [f(x)]_S` induced by `fun`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub source: RelationSpec,
    pub target: RelationSpec,
    pub fun: FunExpr,
    verified: Option<Scope>,
}

impl Morphism {
    pub fn new(source: RelationSpec, target: RelationSpec, fun: FunExpr) -> Self {
        Morphism {
            source,
            target,
            fun,
            verified: None,
        }
    }

    /// Scope at which preservation last succeeded.
    pub fn verified_scope(&self) -> Option<Scope> {
        self.verified
    }

    /// Checks preservation and records the scope on success.
    pub fn verify(&mut self, scope: Scope) -> Result<Verdict> {
        let verdict = check_preserving(&self.fun, &self.source, &self.target, scope)?;
        if verdict.is_ok() {
            self.verified = Some(scope);
        }
        Ok(verdict)
    }

    pub fn verified(mut self, scope: Scope) -> Result<Self> {
        self.require(scope)?;
        self.verified = Some(scope);
        Ok(self)
    }

    /// Errors unless the morphism preserves equivalence at `scope`.
    pub fn require(&self, scope: Scope) -> Result<()> {
        if self.verified == Some(scope) {
            return Ok(());
        }
        match check_preserving(&self.fun, &self.source, &self.target, scope)? {
            Verdict::Ok(_) => Ok(()),
            Verdict::Counterexample(witness) => Err(CategoryError::NotPreserving {
                fun: self.fun.to_string(),
                witness,
            }),
            Verdict::Unknown { need_n } => Err(CategoryError::ScopeFault { need_n }),
        }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha({})", self.fun)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_text() {
        assert_eq!(Verdict::Ok(Scope::new(3, 16)).to_string(), "ok s=3 n=16");
        assert_eq!(
            Verdict::Ok(Scope::new(3, 16).with_codomain(32)).to_string(),
            "ok s=3 n=16 m=32"
        );
        assert_eq!(
            Verdict::Counterexample(Witness::Pair { x: 0, y: 2 }).to_string(),
            "cex x=0 y=2"
        );
        assert_eq!(
            Verdict::Counterexample(Witness::Missed(vec![0, 1])).to_string(),
            "cex missed=0,1"
        );
        assert_eq!(
            Verdict::Unknown { need_n: 31 }.to_string(),
            "unknown need_n=31"
        );
    }

    #[test]
    fn verify_records_scope() {
        let scope = Scope::new(0, 8);
        let mut m = Morphism::new(RelationSpec::IdN(4), RelationSpec::IdN(2), FunExpr::Id);
        assert!(m.verify(scope).unwrap().is_ok());
        assert_eq!(m.verified_scope(), Some(scope));
        let mut bad = Morphism::new(RelationSpec::IdN(2), RelationSpec::IdN(4), FunExpr::Id);
        assert!(!bad.verify(scope).unwrap().is_ok());
        assert_eq!(bad.verified_scope(), None);
        assert!(matches!(
            bad.require(scope),
            Err(CategoryError::NotPreserving { .. })
        ));
    }
}
