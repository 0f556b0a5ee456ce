use std::collections::{BTreeMap, BTreeSet};

use crate::funlang::FunExpr;
use crate::rel::{approximant, CoceerSeed, RelationSpec, StageEvent, StageTrace};

use super::{
    content_lines, header_values, join, number, stamp, ConstructionError, Diagnostics, Result,
};

/// Finite surrogate for a uniform sequence of co-c.e. sets `V_0, ..., V_{E-1}`.
///
/// `V_{e,0}` is everything; `x` leaves `V_e` at the stage of its `extract`
/// line and never returns. After the horizon nothing changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoCeFamily {
    indices: u64,
    horizon: u64,
    extractions: BTreeMap<(u64, u64), u64>,
    kept: BTreeSet<(u64, u64)>,
}

impl CoCeFamily {
    pub fn new(indices: u64, horizon: u64) -> Self {
        CoCeFamily {
            indices,
            horizon,
            extractions: BTreeMap::new(),
            kept: BTreeSet::new(),
        }
    }

    pub fn indices(&self) -> u64 {
        self.indices
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    fn index_ok(&self, e: u64) -> Result<()> {
        if e >= self.indices {
            return Err(ConstructionError::Surrogate {
                invariant: "index range",
                detail: format!("index {e} but E={}", self.indices),
            });
        }
        Ok(())
    }

    /// Declares that `x` stays in `V_e` at every stage.
    pub fn keep(&mut self, e: u64, x: u64) -> Result<()> {
        self.index_ok(e)?;
        if self.extractions.contains_key(&(e, x)) {
            return Err(anti_monotone(e, x, "kept and extracted"));
        }
        self.kept.insert((e, x));
        Ok(())
    }

    /// `x` leaves `V_e` at `stage`.
    pub fn extract(&mut self, e: u64, x: u64, stage: u64) -> Result<()> {
        self.index_ok(e)?;
        if stage == 0 {
            return Err(ConstructionError::Surrogate {
                invariant: "initial stage",
                detail: format!("V_{e},0 contains every number; cannot extract {x} at stage 0"),
            });
        }
        if stage > self.horizon {
            return Err(ConstructionError::Surrogate {
                invariant: "horizon",
                detail: format!(
                    "extraction of {x} from V_{e} at {stage} after horizon {}",
                    self.horizon
                ),
            });
        }
        if self.kept.contains(&(e, x)) {
            return Err(anti_monotone(e, x, "kept and extracted"));
        }
        if self.extractions.insert((e, x), stage).is_some() {
            return Err(anti_monotone(e, x, "extracted twice"));
        }
        Ok(())
    }

    /// Whether `x` is in `V_{e,s}`.
    pub fn member(&self, e: u64, x: u64, s: u64) -> bool {
        self.extractions.get(&(e, x)).is_none_or(|&t| s < t)
    }

    /// Membership in the limit `V_e`.
    pub fn member_limit(&self, e: u64, x: u64) -> bool {
        self.member(e, x, self.horizon)
    }

    /// The stage at which `x` leaves `V_e`, if it does.
    pub fn extraction_stage(&self, e: u64, x: u64) -> Option<u64> {
        self.extractions.get(&(e, x)).copied()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or(ConstructionError::Format {
            line: 1,
            message: "empty family file".into(),
        })?;
        let values = header_values(header, "family", &["E", "horizon"], hline)?;
        let mut fam = CoCeFamily::new(values[0], values[1]);
        for (lineno, line) in lines {
            let words: Vec<&str> = line.split_whitespace().collect();
            let located = |e: ConstructionError| match e {
                ConstructionError::Surrogate { invariant, detail } => {
                    ConstructionError::Surrogate {
                        invariant,
                        detail: format!("line {lineno}: {detail}"),
                    }
                }
                other => other,
            };
            match words.as_slice() {
                [kw, e, x] if kw.eq_ignore_ascii_case("keep") => fam
                    .keep(number(e, lineno)?, number(x, lineno)?)
                    .map_err(located)?,
                [kw, e, x, s] if kw.eq_ignore_ascii_case("extract") => fam
                    .extract(number(e, lineno)?, number(x, lineno)?, stamp(s, lineno)?)
                    .map_err(located)?,
                _ => {
                    return Err(ConstructionError::Format {
                        line: lineno,
                        message: format!("expected `keep e x` or `extract e x @s`, found `{line}`"),
                    })
                }
            }
        }
        Ok(fam)
    }
}

fn anti_monotone(e: u64, x: u64, how: &str) -> ConstructionError {
    ConstructionError::Surrogate {
        invariant: "anti-monotone",
        detail: format!("{x} in V_{e} {how}"),
    }
}

const BUNDLED_FAMILY: &str = include_str!("../../data/family_e8.txt");

/// The shipped eight-index family with horizon 64.
pub fn bundled_family() -> CoCeFamily {
    CoCeFamily::parse(BUNDLED_FAMILY).expect("bundled family is valid")
}

pub fn bundled_family_text() -> &'static str {
    BUNDLED_FAMILY
}

/// Output of the two-class machine.
#[derive(Debug, Clone)]
pub struct CounterPi1 {
    /// The coceer: `{0}` and the rest, minus isolated points.
    pub y: RelationSpec,
    /// Isolated points in order of isolation.
    pub u: Vec<u64>,
    pub f1: FunExpr,
    pub f2: FunExpr,
    pub z: RelationSpec,
    pub trace: StageTrace,
    /// Stage at which `Z` is observed: enough for `f2` to list all of `U`.
    pub z_stage: u64,
    pub diagnostics: Diagnostics,
}

/// Replays the construction of a coceer `Y` and a c.e. set `U` such that the
/// relation generated by `Y` and the pairs `(0, u)`, `u` in `U`, has two
/// classes and `[0]` differs from every `V_e`.
pub fn counter_pi1_machine(fam: &CoCeFamily, stages: u64, n: usize) -> Result<CounterPi1> {
    if stages < fam.horizon() {
        return Err(ConstructionError::BelowHorizon {
            stage: stages,
            horizon: fam.horizon(),
        });
    }
    let need_n = fam.indices() as usize + 2;
    if n < need_n {
        return Err(ConstructionError::BoundTooSmall { need_n });
    }

    // e+2 is Y-isolated at the stage it leaves V_e
    let mut isolations: Vec<(u64, u64)> = (0..fam.indices())
        .filter_map(|e| fam.extraction_stage(e, e + 2).map(|t| (t, e + 2)))
        .filter(|&(t, _)| t <= stages)
        .collect();
    isolations.sort_unstable();
    let mut trace = StageTrace::new();
    let mut u = Vec::new();
    for &(t, x) in &isolations {
        trace.push(StageEvent::Isolate { x, stage: t })?;
        trace.push(StageEvent::EnumU { x, stage: t })?;
        u.push(x);
    }

    let y = RelationSpec::Coceer {
        seed: CoceerSeed::zero_and_rest(),
        trace: trace.clone(),
    };
    let f1 = FunExpr::Const(0);
    let f2 = match u.last() {
        Some(&last) => FunExpr::table(
            u.iter().enumerate().map(|(i, &x)| (i as u64, x)),
            FunExpr::Const(last),
        ),
        None => FunExpr::Const(0),
    };
    let z = RelationSpec::coequalizer(y.clone(), f1.clone(), f2.clone());
    let z_stage = stages.max(u.len() as u64);

    let mut diagnostics = Diagnostics::new("counter-pi1");
    diagnostics.field("indices", fam.indices());
    diagnostics.field("horizon", fam.horizon());
    diagnostics.field("stages", stages);
    diagnostics.field("n", n);
    diagnostics.field("z_stage", z_stage);
    diagnostics.field("U", join(&u));
    diagnostics.field("evidence", "surrogate-scale");

    let za = approximant(&z, z_stage, n)?;
    let classes = za.classes_count();
    diagnostics.field("classes", classes);
    diagnostics.check(
        "classes",
        classes == 2,
        format!("{classes} classes on [0,{n})"),
    );

    let mut diagonal_ok = 0;
    let mut bad = Vec::new();
    for e in 0..fam.indices() {
        let glued = za.related(0, e + 2)?;
        if glued != fam.member_limit(e, e + 2) {
            diagonal_ok += 1;
        } else {
            bad.push(e);
        }
    }
    diagnostics.field("diagonal", format!("{diagonal_ok}/{}", fam.indices()));
    diagnostics.check(
        "diagonal",
        bad.is_empty(),
        if bad.is_empty() {
            String::new()
        } else {
            format!("fails for e={}", join(&bad))
        },
    );

    let replayed = RelationSpec::Coceer {
        seed: CoceerSeed::zero_and_rest(),
        trace: StageTrace::parse(&trace.to_string())?,
    };
    let mut deterministic = true;
    for s in 0..=z_stage {
        deterministic &= approximant(&y, s, n)?.same_partition(&approximant(&replayed, s, n)?);
    }
    diagnostics.check("trace-replay", deterministic, "");

    diagnostics.summary = format!(
        "classes={classes}, diagonal {} {diagonal_ok}/{}",
        if bad.is_empty() { "ok" } else { "FAILED" },
        fam.indices()
    );
    Ok(CounterPi1 {
        y,
        u,
        f1,
        f2,
        z,
        trace,
        z_stage,
        diagnostics,
    })
}
