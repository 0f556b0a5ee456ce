use std::collections::BTreeMap;

use crate::category::{reduction_check, surjective_at, Morphism, Scope, Verdict, Witness};
use crate::funlang::FunExpr;
use crate::rel::{approximant, CoceerSeed, RelationSpec, StageEvent, StageTrace};

use super::{
    content_lines, header_values, join, number, stamp, ConstructionError, Diagnostics, Result,
};

/// Finite stage enumeration of a set `K`, standing in for a c.e. set whose
/// complement is undecidable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KbarSurrogate {
    horizon: u64,
    enumerated: BTreeMap<u64, u64>,
}

impl KbarSurrogate {
    pub fn new(horizon: u64) -> Self {
        KbarSurrogate {
            horizon,
            enumerated: BTreeMap::new(),
        }
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    /// `x` enters `K` at `stage`.
    pub fn enumerate(&mut self, x: u64, stage: u64) -> Result<()> {
        if stage > self.horizon {
            return Err(ConstructionError::Surrogate {
                invariant: "horizon",
                detail: format!("{x} enumerated at {stage} after horizon {}", self.horizon),
            });
        }
        if self.enumerated.insert(x, stage).is_some() {
            return Err(ConstructionError::Surrogate {
                invariant: "monotone",
                detail: format!("{x} enumerated twice"),
            });
        }
        Ok(())
    }

    pub fn in_k(&self, x: u64, s: u64) -> bool {
        self.enumerated.get(&x).is_some_and(|&t| t <= s)
    }

    /// `(x, stage)` in stage order.
    pub fn events(&self) -> Vec<(u64, u64)> {
        let mut events: Vec<(u64, u64)> = self.enumerated.iter().map(|(&x, &t)| (x, t)).collect();
        events.sort_by_key(|&(x, t)| (t, x));
        events
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or(ConstructionError::Format {
            line: 1,
            message: "empty surrogate file".into(),
        })?;
        let values = header_values(header, "ksurrogate", &["horizon"], hline)?;
        let mut k = KbarSurrogate::new(values[0]);
        for (lineno, line) in lines {
            match line.split_whitespace().collect::<Vec<_>>().as_slice() {
                [kw, x, s] if kw.eq_ignore_ascii_case("enum") => {
                    k.enumerate(number(x, lineno)?, stamp(s, lineno)?)?
                }
                _ => {
                    return Err(ConstructionError::Format {
                        line: lineno,
                        message: format!("expected `enum x @s`, found `{line}`"),
                    })
                }
            }
        }
        Ok(k)
    }

    pub fn bundled() -> Self {
        KbarSurrogate::parse(BUNDLED_KBAR).expect("bundled surrogate is valid")
    }
}

const BUNDLED_KBAR: &str = include_str!("../../data/kbar_surrogate.txt");

/// The monomorphism `Id -> R` onto the singleton part of `R`, which omits two classes.
#[derive(Debug, Clone)]
pub struct EpiNotOnto {
    /// Classes `A = 2(not K)`, `B = 2(not K)+1`, singletons elsewhere.
    pub r: RelationSpec,
    /// Order-preserving enumeration of `C` on `[0, n)`, identity past it.
    pub f: FunExpr,
    pub alpha: Morphism,
    /// Domain `|C n [0,n)|`, codomain `n`.
    pub scope: Scope,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    pub trace: StageTrace,
    pub diagnostics: Diagnostics,
}

pub fn epi_not_onto_example(k: &KbarSurrogate, s: u64, n: usize) -> Result<EpiNotOnto> {
    if s > k.horizon() {
        return Err(ConstructionError::HorizonExceeded {
            stage: s,
            horizon: k.horizon(),
        });
    }
    let mut trace = StageTrace::new();
    for (x, t) in k.events() {
        trace.push(StageEvent::Isolate { x: 2 * x, stage: t })?;
        trace.push(StageEvent::Isolate {
            x: 2 * x + 1,
            stage: t,
        })?;
    }
    let r = RelationSpec::Coceer {
        seed: CoceerSeed::Labels(FunExpr::Mod(2)),
        trace: trace.clone(),
    };

    let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
    for v in 0..n as u64 {
        if k.in_k(v / 2, s) {
            c.push(v);
        } else if v % 2 == 0 {
            a.push(v);
        } else {
            b.push(v);
        }
    }
    if c.is_empty() {
        return Err(ConstructionError::Surrogate {
            invariant: "complement nonempty",
            detail: format!("K has no element below {} by stage {s}", n.div_ceil(2)),
        });
    }
    if a.is_empty() || b.is_empty() {
        let first_out = (0..).find(|&x| !k.in_k(x, s)).expect("K is finite");
        return Err(ConstructionError::BoundTooSmall {
            need_n: 2 * first_out as usize + 2,
        });
    }

    let f = FunExpr::table(
        c.iter().enumerate().map(|(i, &v)| (i as u64, v)),
        FunExpr::Id,
    );
    let scope = Scope::new(s, c.len()).with_codomain(n);
    let alpha = Morphism::new(RelationSpec::IdAll, r.clone(), f.clone());

    let mut diagnostics = Diagnostics::new("epi-not-onto");
    diagnostics.field("stage", s);
    diagnostics.field("n", n);
    diagnostics.field("horizon", k.horizon());
    diagnostics.field("C", join(&c));
    diagnostics.field("A_size", a.len());
    diagnostics.field("B_size", b.len());
    diagnostics.field("evidence", "surrogate-scale");

    let reduction = reduction_check(&f, &RelationSpec::IdAll, &r, scope)?;
    diagnostics.field("reduction", &reduction);
    diagnostics.check("reduction", reduction.is_ok(), "");

    let surjective = surjective_at(&alpha, scope)?;
    diagnostics.field("surjective", &surjective);
    let window = approximant(&r, s, n)?;
    let omitted_ok = match &surjective {
        Verdict::Counterexample(Witness::Missed(reps)) => {
            reps.len() == 2 && window.class_of(reps[0])? == a && window.class_of(reps[1])? == b
        }
        _ => false,
    };
    diagnostics.check("omits-exactly-A-B", omitted_ok, "");
    diagnostics.field("omitted_nonsingleton", a.len() >= 2 && b.len() >= 2);

    diagnostics.summary = format!(
        "reduction {}, not onto: omitted classes A (min {}) and B (min {})",
        if reduction.is_ok() { "ok" } else { "FAILED" },
        a[0],
        b[0]
    );
    Ok(EpiNotOnto {
        r,
        f,
        alpha,
        scope,
        a,
        b,
        c,
        trace,
        diagnostics,
    })
}

/// Which of `A`, `B` the pair `f1, f2: R -> S` separates, and whether the
/// matching identity `x notin D <=> f1(x) S f2(x)` holds on `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    /// `f1` and `f2` agree on `C`, so they equalize `alpha`.
    pub applicable: bool,
    /// 0 when neither class is separated, else 1 (A), 2 (B) or 3 (both).
    pub case: u8,
    pub identity_holds: bool,
    pub mismatches: Vec<u64>,
}

pub fn epi_case_identity(
    ex: &EpiNotOnto,
    f1: &FunExpr,
    f2: &FunExpr,
    s_rel: &RelationSpec,
) -> Result<CaseReport> {
    let n = ex.scope.codomain;
    let (i1, i2) = (f1.eval_range(n)?, f2.eval_range(n)?);
    let m = i1.iter().chain(&i2).max().map_or(1, |&v| v as usize + 1);
    let scope = Scope::new(ex.scope.stage, n).with_codomain(m);
    Morphism::new(ex.r.clone(), s_rel.clone(), f1.clone()).require(scope)?;
    Morphism::new(ex.r.clone(), s_rel.clone(), f2.clone()).require(scope)?;
    let sw = approximant(s_rel, ex.scope.stage, m)?;
    let agrees = |v: u64| sw.related(i1[v as usize], i2[v as usize]);

    let mut applicable = true;
    for &v in &ex.c {
        applicable &= agrees(v)?;
    }
    let split_a = !agrees(ex.a[0])?;
    let split_b = !agrees(ex.b[0])?;
    let case = match (split_a, split_b) {
        (false, false) => 0,
        (true, false) => 1,
        (false, true) => 2,
        (true, true) => 3,
    };
    let mut mismatches = Vec::new();
    for v in 0..n as u64 {
        let in_d = (split_a && ex.a.binary_search(&v).is_ok())
            || (split_b && ex.b.binary_search(&v).is_ok());
        if in_d == agrees(v)? {
            mismatches.push(v);
        }
    }
    Ok(CaseReport {
        applicable,
        case,
        identity_holds: mismatches.is_empty(),
        mismatches,
    })
}
