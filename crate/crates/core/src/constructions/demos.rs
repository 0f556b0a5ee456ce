use crate::category::{
    check_preserving, coequalizer, coproduct, reduction_check, InstanceSampler, Morphism, Scope,
    Verdict,
};
use crate::funlang::FunExpr;
use crate::rel::{approximant, PairSource, RelationSpec};

use super::{Diagnostics, Result};

/// A ceer presented as the coequalizer of two maps `Id -> Id`.
#[derive(Debug, Clone)]
pub struct CeerCoequalizer {
    pub f1: FunExpr,
    pub f2: FunExpr,
    pub z: RelationSpec,
    pub roundtrip: bool,
    pub diagnostics: Diagnostics,
}

/// Splits the pair enumeration `h` into its two coordinates and coequalizes them.
///
/// The roundtrip compares the quotient with the ceer `h` enumerates directly.
pub fn ceer_as_coequalizer(h: &FunExpr, s: u64, n: usize) -> Result<CeerCoequalizer> {
    let f1 = FunExpr::compose(FunExpr::Proj0, h.clone());
    let f2 = FunExpr::compose(FunExpr::Proj1, h.clone());
    let alpha = Morphism::new(RelationSpec::IdAll, RelationSpec::IdAll, f1.clone());
    let beta = Morphism::new(RelationSpec::IdAll, RelationSpec::IdAll, f2.clone());
    let z = coequalizer(&alpha, &beta)?.spec;
    let direct = RelationSpec::FromPairs(PairSource::FunRange(h.clone()));
    let (za, da) = (approximant(&z, s, n)?, approximant(&direct, s, n)?);
    let roundtrip = za.same_partition(&da);

    let mut diagnostics = Diagnostics::new("ceer-coeq");
    diagnostics.field("stage", s);
    diagnostics.field("n", n);
    diagnostics.field("h", h);
    diagnostics.field("classes", za.classes_count());
    diagnostics.field("deferred", za.deferred());
    diagnostics.check("roundtrip", roundtrip, "");
    diagnostics.summary = format!(
        "classes={}, roundtrip {}",
        za.classes_count(),
        if roundtrip { "ok" } else { "FAILED" }
    );
    Ok(CeerCoequalizer {
        f1,
        f2,
        z,
        roundtrip,
        diagnostics,
    })
}

#[derive(Debug, Clone)]
pub struct RemarkDemo {
    /// `X (+) Id_1`.
    pub join: RelationSpec,
    pub z: RelationSpec,
    pub classes: usize,
    pub diagnostics: Diagnostics,
}

/// Coequalizes `x -> 2x` with the constant `1` from `X` into `X (+) Id_1`.
///
/// Here the odd-side map is the constant 1, not `2x+1`.
pub fn remark_demo(x: &RelationSpec, s: u64, n: usize) -> Result<RemarkDemo> {
    let cocone = coproduct(x, &RelationSpec::IdN(1));
    let ev = Morphism::new(x.clone(), cocone.spec.clone(), FunExpr::Double);
    let odd = Morphism::new(x.clone(), cocone.spec.clone(), FunExpr::Const(1));
    let scope = Scope::new(s, n).with_codomain(2 * n);

    let mut diagnostics = Diagnostics::new("remark");
    diagnostics.field("stage", s);
    diagnostics.field("n", n);
    for m in [&ev, &odd] {
        let verdict = check_preserving(&m.fun, &m.source, &m.target, scope)?;
        diagnostics.check(&format!("preserving.{}", m.fun), verdict.is_ok(), &verdict);
    }
    let z = coequalizer(&ev, &odd)?.spec;
    let classes = approximant(&z, s, n)?.classes_count();
    diagnostics.field("classes", classes);
    diagnostics.check(
        "one-class",
        classes == 1,
        format!("{classes} classes on [0,{n})"),
    );
    diagnostics.summary = format!("classes={classes}");
    Ok(RemarkDemo {
        join: cocone.spec,
        z,
        classes,
        diagnostics,
    })
}

/// `count` generator pairs with values below `n`, for coequalizers over a fixed base.
pub fn sample_generators(seed: u64, cap: usize, count: usize, n: usize) -> Vec<(FunExpr, FunExpr)> {
    let mut sampler = InstanceSampler::new(seed, cap);
    (0..count)
        .map(|_| {
            (
                sampler.bounded_term(n as u64),
                sampler.bounded_term(n as u64),
            )
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct DarkstarDemo {
    /// `None` when no light witness was supplied.
    pub light_y: Option<Verdict>,
    pub light_join: Option<Verdict>,
    pub contained: usize,
    pub generators: usize,
    pub diagnostics: Diagnostics,
}

/// Scope-level evidence for the closure argument: lightness passes from `Y`
/// to `Y (+) X`, and every coequalizer over `Y` contains `Y`.
///
/// Darkness itself is never certified.
pub fn darkstar_closure_demo(
    x: &RelationSpec,
    y: &RelationSpec,
    light_witness: Option<&FunExpr>,
    generators: &[(FunExpr, FunExpr)],
    s: u64,
    n: usize,
) -> Result<DarkstarDemo> {
    let mut diagnostics = Diagnostics::new("darkstar");
    diagnostics.field("stage", s);
    diagnostics.field("n", n);

    let (mut light_y, mut light_join) = (None, None);
    match light_witness {
        Some(f) => {
            let images = f.eval_range(n)?;
            let m = images.iter().max().map_or(n, |&v| n.max(v as usize + 1));
            let scope = Scope::new(s, n).with_codomain(m);
            let into_y = reduction_check(f, &RelationSpec::IdAll, y, scope)?;
            let join = RelationSpec::coproduct(y.clone(), x.clone());
            let lifted = FunExpr::compose(FunExpr::Double, f.clone());
            let into_join = reduction_check(
                &lifted,
                &RelationSpec::IdAll,
                &join,
                scope.with_codomain(2 * m),
            )?;
            diagnostics.field("light_y", &into_y);
            diagnostics.field("light_join", &into_join);
            diagnostics.field("join_witness", &lifted);
            // a light Y must give a light join; a failure to witness Y is reported, not judged
            diagnostics.check(
                "light-transfers",
                !into_y.is_ok() || into_join.is_ok(),
                format!("witness {lifted}"),
            );
            light_y = Some(into_y);
            light_join = Some(into_join);
        }
        None => diagnostics.field("light", "not-applicable"),
    }

    let ya = approximant(y, s, n)?;
    let mut contained = 0;
    for (f1, f2) in generators {
        let z = RelationSpec::coequalizer(y.clone(), f1.clone(), f2.clone());
        if ya.refines(&approximant(&z, s, n)?) {
            contained += 1;
        }
    }
    diagnostics.field("containment", format!("{contained}/{}", generators.len()));
    diagnostics.check("containment", contained == generators.len(), "");
    diagnostics.field("darkness", "undecidable; not certified by this checker");
    diagnostics.summary = format!(
        "light {}, containment {contained}/{}",
        light_join
            .as_ref()
            .map_or("n/a".to_string(), Verdict::to_string),
        generators.len()
    );
    Ok(DarkstarDemo {
        light_y,
        light_join,
        contained,
        generators: generators.len(),
        diagnostics,
    })
}
