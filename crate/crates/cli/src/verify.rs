use clap::ValueEnum;
use eeq_core::category::{
    check_preserving, coequalizer_laws, coproduct_laws, equalizer_refutation, initial_refutation,
    injective_at, morphism_eq, product_laws, reduction_check, surjective_at, terminal_uniqueness,
    CandidateConfig, CategoryError, InstanceSampler, Morphism, Scope, Verdict,
};
use eeq_core::funlang::FunExpr;

use crate::args::{function, Context, KvArgs};
use crate::output::Report;
use crate::{CliError, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Preserving,
    Injective,
    Surjective,
    Reduction,
    ProductLaws,
    CoproductLaws,
    CoeqLaws,
    Terminal,
    Initial,
    Equalizer,
}

/// Final verdict text and its exit status.
struct Judgement {
    text: String,
    code: u8,
}

impl From<Verdict> for Judgement {
    fn from(v: Verdict) -> Self {
        Judgement {
            text: v.to_string(),
            code: v.exit_code() as u8,
        }
    }
}

impl Judgement {
    fn cex(detail: impl std::fmt::Display) -> Self {
        Judgement {
            text: format!("cex {detail}"),
            code: 1,
        }
    }
}

impl Kind {
    fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

pub fn verify(ctx: &Context, kind: Kind, raw: &[String]) -> Result<Outcome, CliError> {
    let mut args = KvArgs::parse(raw)?;
    let mut report = Report::new("verify");
    report.field("kind", kind.name());
    let verdict: Judgement = match kind {
        Kind::Preserving | Kind::Injective | Kind::Surjective | Kind::Reduction => {
            single(ctx, kind, &mut args, &mut report)?.into()
        }
        Kind::ProductLaws | Kind::CoproductLaws | Kind::CoeqLaws => {
            laws(ctx, kind, &mut args, &mut report)?
        }
        Kind::Terminal => terminal(ctx, &mut args, &mut report)?,
        Kind::Initial => initial(ctx, &mut args, &mut report)?,
        Kind::Equalizer => equalizer(ctx, &mut report)?,
    };
    args.finish()?;
    report.field("verdict", &verdict.text);
    report.line(&verdict.text);
    Ok(Outcome {
        text: report.render(ctx.format),
        code: verdict.code,
    })
}

/// Counterexamples and scope faults raised as errors become verdicts.
fn as_verdict(
    result: Result<Verdict, CategoryError>,
    report: &mut Report,
) -> Result<Verdict, CliError> {
    match result {
        Ok(v) => Ok(v),
        Err(CategoryError::NotPreserving { fun, witness }) => {
            report.field("note", format!("{fun} is not equivalence preserving"));
            report.line(format!("note: {fun} is not equivalence preserving"));
            Ok(Verdict::Counterexample(witness))
        }
        Err(CategoryError::ScopeFault { need_n }) => Ok(Verdict::Unknown { need_n }),
        Err(e) => Err(e.into()),
    }
}

fn single(
    ctx: &Context,
    kind: Kind,
    args: &mut KvArgs,
    report: &mut Report,
) -> Result<Verdict, CliError> {
    let (f_text, r_text, s_text) = (args.require("f")?, args.require("R")?, args.require("S")?);
    let f = function(&f_text)?;
    let (r, s) = (ctx.relation(&r_text)?, ctx.relation(&s_text)?);
    report.field("f", &f);
    report.field("R", &r_text);
    report.field("S", &s_text);
    report.scope(ctx.scope);
    let scope = ctx.scope;
    let alpha = Morphism::new(r.clone(), s.clone(), f.clone());
    let result = match kind {
        Kind::Preserving => check_preserving(&f, &r, &s, scope),
        Kind::Injective => injective_at(&alpha, scope),
        Kind::Surjective => surjective_at(&alpha, scope),
        _ => reduction_check(&f, &r, &s, scope),
    };
    as_verdict(result, report)
}

fn config(ctx: &Context, instance: u64) -> CandidateConfig {
    CandidateConfig {
        seed: ctx.seed.wrapping_add(instance),
        cap: ctx.cap,
        count: ctx.candidates,
    }
}

/// Widens the codomain to hold every value `fun` takes on the domain.
fn covering(scope: Scope, fun: &FunExpr) -> Result<Scope, CliError> {
    let top = fun.eval_range(scope.domain)?.into_iter().max().unwrap_or(0);
    Ok(scope.with_codomain(scope.codomain.max(top as usize + 1)))
}

struct Instance {
    rho: Morphism,
    sigma: Morphism,
    scope: Scope,
}

fn explicit_instance(
    ctx: &Context,
    kind: Kind,
    args: &mut KvArgs,
    report: &mut Report,
) -> Result<Option<Instance>, CliError> {
    let Some(f_text) = args.take("f") else {
        return Ok(None);
    };
    let f = function(&f_text)?;
    let g = function(&args.require("g")?)?;
    report.field("f", &f);
    report.field("g", &g);
    let names: &[&str] = match kind {
        Kind::ProductLaws => &["T", "R", "S"],
        Kind::CoproductLaws => &["R", "S", "T"],
        _ => &["X", "Y"],
    };
    let mut specs = Vec::new();
    for &name in names {
        let text = args.require(name)?;
        report.field(name, &text);
        specs.push(ctx.relation(&text)?);
    }
    let (rho, sigma) = match kind {
        Kind::ProductLaws => (
            Morphism::new(specs[0].clone(), specs[1].clone(), f),
            Morphism::new(specs[0].clone(), specs[2].clone(), g),
        ),
        Kind::CoproductLaws => (
            Morphism::new(specs[0].clone(), specs[2].clone(), f),
            Morphism::new(specs[1].clone(), specs[2].clone(), g),
        ),
        _ => (
            Morphism::new(specs[0].clone(), specs[1].clone(), f),
            Morphism::new(specs[0].clone(), specs[1].clone(), g),
        ),
    };
    Ok(Some(Instance {
        rho,
        sigma,
        scope: ctx.scope,
    }))
}

fn sampled_instance(
    sampler: &mut InstanceSampler,
    kind: Kind,
    scope: Scope,
) -> Result<Instance, CliError> {
    let m = scope.codomain as u64;
    let (a, b, c) = (sampler.object(), sampler.object(), sampler.object());
    Ok(match kind {
        Kind::ProductLaws => Instance {
            rho: sampler.morphism(&a, &b, m.min(16), scope)?,
            sigma: sampler.morphism(&a, &c, m.min(16), scope)?,
            scope,
        },
        Kind::CoproductLaws => Instance {
            rho: sampler.morphism(&a, &c, m, scope)?,
            sigma: sampler.morphism(&b, &c, m, scope)?,
            scope,
        },
        _ => Instance {
            rho: sampler.morphism(&a, &b, m, scope)?,
            sigma: sampler.morphism(&a, &b, m, scope)?,
            scope,
        },
    })
}

fn laws(
    ctx: &Context,
    kind: Kind,
    args: &mut KvArgs,
    report: &mut Report,
) -> Result<Judgement, CliError> {
    let instances = match explicit_instance(ctx, kind, args, report)? {
        Some(one) => vec![one],
        None => {
            let count = args.take_usize("instances", 10)?;
            report.field("seed", ctx.seed);
            report.field("instances", count);
            let mut sampler = InstanceSampler::new(ctx.seed, ctx.cap);
            (0..count)
                .map(|_| sampled_instance(&mut sampler, kind, ctx.scope))
                .collect::<Result<_, _>>()?
        }
    };
    report.scope(ctx.scope);
    let mut verdict: Option<Judgement> = None;
    for (i, inst) in instances.iter().enumerate() {
        let cfg = config(ctx, i as u64);
        let outcome = match kind {
            Kind::ProductLaws => {
                let med = FunExpr::pair(inst.rho.fun.clone(), inst.sigma.fun.clone());
                let scope = covering(inst.scope, &med)?;
                product_laws(&inst.rho, &inst.sigma, scope, cfg).map(|r| {
                    let detail = format!(
                        "candidates={} morphisms={} commuting={}",
                        r.candidates, r.morphisms, r.commuting
                    );
                    (r.holds(), detail, r.violations)
                })
            }
            Kind::CoproductLaws => coproduct_laws(&inst.rho, &inst.sigma, inst.scope, cfg).map(|r| {
                let detail = format!(
                    "candidates={} morphisms={} commuting={}",
                    r.candidates, r.morphisms, r.commuting
                );
                (r.holds(), detail, r.violations)
            }),
            _ => coequalizer_laws(&inst.rho, &inst.sigma, inst.scope, cfg).map(|r| {
                let detail = format!(
                    "coequalizes={} contains_target={} matches_closure={} deferred={} factors={}/{}",
                    r.coequalizes,
                    r.contains_target,
                    r.matches_closure,
                    r.deferred,
                    r.factor_coequalizing,
                    r.factor_candidates
                );
                (r.holds(), detail, r.violations)
            }),
        };
        let (status, detail) = match outcome {
            Ok((true, detail, _)) => ("ok".to_string(), detail),
            Ok((false, detail, violations)) => {
                let first = violations
                    .first()
                    .cloned()
                    .unwrap_or_else(|| "law fails".into());
                verdict.get_or_insert(Judgement::cex(format!("instance={i} {first}")));
                (format!("fail ({first})"), detail)
            }
            Err(CategoryError::ScopeFault { need_n }) => {
                verdict.get_or_insert(Verdict::Unknown { need_n }.into());
                (format!("unknown need_n={need_n}"), String::new())
            }
            Err(CategoryError::NotPreserving { fun, witness }) => {
                verdict.get_or_insert(Judgement::cex(format!("instance={i} {witness}")));
                (
                    format!("fail ({fun} not preserving: {witness})"),
                    String::new(),
                )
            }
            Err(e) => return Err(e.into()),
        };
        let text = if detail.is_empty() {
            status
        } else {
            format!("{status} {detail}")
        };
        report.field(&format!("instance.{i}"), &text);
        report.line(format!("instance {i}: {text}"));
    }
    Ok(verdict.unwrap_or_else(|| Verdict::Ok(ctx.scope).into()))
}

fn terminal(ctx: &Context, args: &mut KvArgs, report: &mut Report) -> Result<Judgement, CliError> {
    let r_text = args.require("R")?;
    let r = ctx.relation(&r_text)?;
    report.field("R", &r_text);
    report.scope(ctx.scope);
    let result = terminal_uniqueness(&r, ctx.scope, config(ctx, 0))?;
    report.field("candidates", result.candidates);
    report.field("agreeing", result.agreeing);
    report.line(format!(
        "{}/{} candidate maps into Id_1 agree with const 0",
        result.agreeing, result.candidates
    ));
    Ok(if result.candidates == result.agreeing {
        Verdict::Ok(ctx.scope).into()
    } else {
        Judgement::cex(format!(
            "disagreeing={}",
            result.candidates - result.agreeing
        ))
    })
}

fn initial(ctx: &Context, args: &mut KvArgs, report: &mut Report) -> Result<Judgement, CliError> {
    let r_text = args.require("R")?;
    let r = ctx.relation(&r_text)?;
    report.field("R", &r_text);
    let scope = ctx.scope.with_codomain(ctx.scope.codomain.max(2));
    report.scope(scope);
    let (zero, one) = initial_refutation(&r);
    let distinct = !morphism_eq(&zero, &one, scope)?;
    report.field("refutation", format!("{} != {}", zero.fun, one.fun));
    report.line(format!(
        "maps {} and {} into Id_2 {}",
        zero.fun,
        one.fun,
        if distinct {
            "differ: R is not initial"
        } else {
            "agree"
        }
    ));
    Ok(if distinct {
        Verdict::Ok(scope).into()
    } else {
        Judgement::cex("maps agree")
    })
}

fn equalizer(ctx: &Context, report: &mut Report) -> Result<Judgement, CliError> {
    let w = equalizer_refutation(ctx.scope.domain)?;
    report.field("left", &w.left.fun);
    report.field("right", &w.right.fun);
    report.field("checked", w.checked);
    report.line(format!(
        "{} and {} into Id_2 agree nowhere on [0,{}): no equalizing object",
        w.left.fun, w.right.fun, w.checked
    ));
    Ok(if w.holds {
        Verdict::Ok(ctx.scope).into()
    } else {
        Judgement::cex("maps agree somewhere")
    })
}
