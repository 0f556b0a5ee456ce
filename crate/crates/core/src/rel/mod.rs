//! Equivalence relations on the naturals, presented by stage approximations.
//!
//! Every relation is observed through a two-parameter window: a stage `s`
//! and a bound `n`. [`approximant`] materializes the partition of `[0, n)`
//! induced by the stage-`s` approximation.

mod approx;
mod file;
pub mod pairing;
mod trace;
mod union_find;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::funlang::{EvalError, FunExpr};

pub use approx::{
    approximant, canonical_reps, classes_count, equivalence_closure, related_at, stabilized,
    Approximant,
};
pub use file::{parse_relation_file, parse_relation_rhs, RelationFile};
pub use pairing::{cantor_pair, cantor_proj, PairOverflow};
pub use trace::{StageEvent, StageTrace};
pub use union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelError {
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error("{x} is outside the bound {bound}")]
    OutOfBound { x: u64, bound: usize },
    #[error("invalid relation: {0}")]
    InvalidSpec(String),
    #[error("invalid trace: {0}")]
    Trace(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Pair(#[from] PairOverflow),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A pair enumerated into a ceer at a given stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StampedPair {
    pub x: u64,
    pub y: u64,
    pub stage: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PairSource {
    /// Pairs with non-decreasing stage stamps; present from their stamp on.
    ExplicitList(Vec<StampedPair>),
    /// Argument `x` contributes `((h x)_0, (h x)_1)` from stage `x + 1` on.
    FunRange(FunExpr),
    /// The `merge` events of a trace.
    TraceBacked(StageTrace),
}

/// The stage-0 partition of a coceer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoceerSeed {
    /// Listed finite blocks; every unlisted number falls into one extra class.
    Blocks(Vec<Vec<u64>>),
    /// `x ~ y` iff the labels agree.
    Labels(FunExpr),
}

impl CoceerSeed {
    /// `{0}` and everything else.
    pub fn zero_and_rest() -> Self {
        CoceerSeed::Blocks(vec![vec![0]])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RelationSpec {
    /// Equality.
    IdAll,
    /// Congruence modulo `n`.
    IdN(u64),
    /// Kernel of a labelling: `x ~ y` iff `f(x) = f(y)`.
    Kernel(FunExpr),
    /// The ceer generated by an enumerated pair list.
    FromPairs(PairSource),
    /// A seed partition shrinking through `isolate` events.
    Coceer {
        seed: CoceerSeed,
        trace: StageTrace,
    },
    Product(Box<RelationSpec>, Box<RelationSpec>),
    /// Uniform join: `R` on even codes, `S` on odd codes.
    Coproduct(Box<RelationSpec>, Box<RelationSpec>),
    /// Closure of `base` plus `(left(x), right(x))` for every `x`.
    Coequalizer {
        base: Box<RelationSpec>,
        left: FunExpr,
        right: FunExpr,
    },
    /// Closure of `base` plus finitely many pairs.
    ClosureOf {
        base: Box<RelationSpec>,
        pairs: Vec<(u64, u64)>,
    },
}

/// How stage approximations move as `s` grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageBehaviour {
    /// Independent of the stage.
    Static,
    /// Classes only merge.
    Ascending,
    /// Classes only split.
    Descending,
    /// Neither guaranteed.
    Mixed,
}

impl StageBehaviour {
    fn join(self, other: Self) -> Self {
        use StageBehaviour::*;
        match (self, other) {
            (Static, x) | (x, Static) => x,
            (Ascending, Ascending) => Ascending,
            (Descending, Descending) => Descending,
            _ => Mixed,
        }
    }
}

impl RelationSpec {
    pub fn id_n(n: u64) -> Result<Self, RelError> {
        if n == 0 {
            return Err(RelError::InvalidSpec("idn requires n >= 1".into()));
        }
        Ok(RelationSpec::IdN(n))
    }

    pub fn product(r: RelationSpec, s: RelationSpec) -> Self {
        RelationSpec::Product(Box::new(r), Box::new(s))
    }

    pub fn coproduct(r: RelationSpec, s: RelationSpec) -> Self {
        RelationSpec::Coproduct(Box::new(r), Box::new(s))
    }

    pub fn coequalizer(base: RelationSpec, left: FunExpr, right: FunExpr) -> Self {
        RelationSpec::Coequalizer {
            base: Box::new(base),
            left,
            right,
        }
    }

    pub fn closure_of(base: RelationSpec, pairs: Vec<(u64, u64)>) -> Self {
        RelationSpec::ClosureOf {
            base: Box::new(base),
            pairs,
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u64, u64)>) -> Result<Self, RelError> {
        let spec = RelationSpec::FromPairs(PairSource::ExplicitList(
            pairs
                .into_iter()
                .map(|(x, y, stage)| StampedPair { x, y, stage })
                .collect(),
        ));
        spec.validate()?;
        Ok(spec)
    }

    pub fn behaviour(&self) -> StageBehaviour {
        use StageBehaviour::*;
        match self {
            RelationSpec::IdAll | RelationSpec::IdN(_) | RelationSpec::Kernel(_) => Static,
            RelationSpec::FromPairs(_) => Ascending,
            RelationSpec::Coceer { .. } => Descending,
            RelationSpec::Product(r, s) | RelationSpec::Coproduct(r, s) => {
                r.behaviour().join(s.behaviour())
            }
            RelationSpec::Coequalizer { base, .. } => match base.behaviour() {
                Static | Ascending => Ascending,
                _ => Mixed,
            },
            RelationSpec::ClosureOf { base, .. } => match base.behaviour() {
                Descending => Mixed,
                other => other,
            },
        }
    }

    /// Structural checks that do not depend on a scope.
    pub fn validate(&self) -> Result<(), RelError> {
        match self {
            RelationSpec::IdAll | RelationSpec::Kernel(_) => Ok(()),
            RelationSpec::IdN(0) => Err(RelError::InvalidSpec("idn requires n >= 1".into())),
            RelationSpec::IdN(_) => Ok(()),
            RelationSpec::FromPairs(PairSource::ExplicitList(pairs)) => {
                if pairs.windows(2).any(|w| w[1].stage < w[0].stage) {
                    return Err(RelError::InvalidSpec(
                        "pair stamps must be non-decreasing".into(),
                    ));
                }
                Ok(())
            }
            RelationSpec::FromPairs(PairSource::FunRange(_)) => Ok(()),
            RelationSpec::FromPairs(PairSource::TraceBacked(trace)) => {
                if trace
                    .events()
                    .iter()
                    .any(|e| matches!(e, StageEvent::Isolate { .. }))
                {
                    return Err(RelError::InvalidSpec(
                        "a ceer trace cannot isolate elements".into(),
                    ));
                }
                Ok(())
            }
            RelationSpec::Coceer { seed, trace } => validate_coceer(seed, trace),
            RelationSpec::Product(r, s) | RelationSpec::Coproduct(r, s) => {
                r.validate()?;
                s.validate()
            }
            RelationSpec::Coequalizer { base, .. } | RelationSpec::ClosureOf { base, .. } => {
                base.validate()
            }
        }
    }
}

fn validate_coceer(seed: &CoceerSeed, trace: &StageTrace) -> Result<(), RelError> {
    if let CoceerSeed::Blocks(blocks) = seed {
        let mut seen = BTreeSet::new();
        for block in blocks {
            if block.is_empty() {
                return Err(RelError::InvalidSpec("empty seed block".into()));
            }
            for &x in block {
                if !seen.insert(x) {
                    return Err(RelError::InvalidSpec(format!(
                        "{x} appears in two seed blocks"
                    )));
                }
            }
        }
    }
    let mut isolated = BTreeSet::new();
    for e in trace.events() {
        match *e {
            StageEvent::Merge { .. } => {
                return Err(RelError::InvalidSpec(
                    "a coceer trace cannot merge classes".into(),
                ))
            }
            StageEvent::Isolate { x, .. } => {
                if !isolated.insert(x) {
                    return Err(RelError::InvalidSpec(format!("{x} is isolated twice")));
                }
                if let CoceerSeed::Blocks(blocks) = seed {
                    if blocks.iter().any(|b| b == &[x]) {
                        return Err(RelError::InvalidSpec(format!("{x} is already a singleton")));
                    }
                }
            }
            StageEvent::EnumU { .. } => {}
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn behaviour_of_composites() {
        let ceer = RelationSpec::from_pairs([(0, 1, 0)]).unwrap();
        let coceer = RelationSpec::Coceer {
            seed: CoceerSeed::zero_and_rest(),
            trace: StageTrace::new(),
        };
        assert_eq!(RelationSpec::IdAll.behaviour(), StageBehaviour::Static);
        assert_eq!(
            RelationSpec::product(RelationSpec::IdN(2), ceer.clone()).behaviour(),
            StageBehaviour::Ascending
        );
        assert_eq!(
            RelationSpec::coproduct(coceer.clone(), RelationSpec::IdAll).behaviour(),
            StageBehaviour::Descending
        );
        assert_eq!(
            RelationSpec::product(coceer.clone(), ceer).behaviour(),
            StageBehaviour::Mixed
        );
        assert_eq!(
            RelationSpec::coequalizer(coceer, FunExpr::Const(0), FunExpr::Id).behaviour(),
            StageBehaviour::Mixed
        );
    }

    #[test]
    fn validation() {
        assert!(RelationSpec::id_n(0).is_err());
        assert!(RelationSpec::from_pairs([(0, 1, 3), (1, 2, 2)]).is_err());
        let merge = StageTrace::from_events([StageEvent::Merge {
            x: 1,
            y: 2,
            stage: 0,
        }])
        .unwrap();
        let bad = RelationSpec::Coceer {
            seed: CoceerSeed::zero_and_rest(),
            trace: merge,
        };
        assert!(bad.validate().is_err());
        let single = StageTrace::from_events([StageEvent::Isolate { x: 0, stage: 1 }]).unwrap();
        let bad = RelationSpec::Coceer {
            seed: CoceerSeed::zero_and_rest(),
            trace: single,
        };
        assert!(bad.validate().is_err());
        let overlap = RelationSpec::Coceer {
            seed: CoceerSeed::Blocks(vec![vec![0, 1], vec![1, 2]]),
            trace: StageTrace::new(),
        };
        assert!(overlap.validate().is_err());
    }
}
