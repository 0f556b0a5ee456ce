use std::fs;

use clap::ValueEnum;
use eeq_core::constructions::{
    bundled_family, ceer_as_coequalizer, counter_pi1_machine, darkstar_closure_demo,
    epi_case_identity, epi_not_onto_example, remark_demo, sample_generators, CoCeFamily,
    Diagnostics, KbarSurrogate,
};
use eeq_core::rel::StageTrace;

use crate::args::{function, Context, KvArgs};
use crate::output::Format;
use crate::{CliError, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    CounterPi1,
    EpiNotOnto,
    CeerCoeq,
    Remark,
    Darkstar,
}

impl Which {
    fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

/// Runs one construction; exit 0 when every check passes, 1 otherwise.
pub fn construct(ctx: &Context, which: Which, raw: &[String]) -> Result<Outcome, CliError> {
    let mut args = KvArgs::parse(raw)?;
    let (s, n) = (ctx.scope.stage, ctx.scope.domain);
    let (mut diagnostics, trace) = match which {
        Which::CounterPi1 => {
            let family = match args.take("family") {
                Some(path) => CoCeFamily::parse(&ctx.read_input(&path)?)
                    .map_err(|e| CliError::Data(format!("{path}: {e}")))?,
                None => bundled_family(),
            };
            let run = counter_pi1_machine(&family, s, n)?;
            (run.diagnostics, Some(run.trace))
        }
        Which::EpiNotOnto => epi(ctx, &mut args)?,
        Which::CeerCoeq => {
            let h = function(&args.require("h")?)?;
            (ceer_as_coequalizer(&h, s, n)?.diagnostics, None)
        }
        Which::Remark => {
            let x = ctx.relation(&args.require("X")?)?;
            (remark_demo(&x, s, n)?.diagnostics, None)
        }
        Which::Darkstar => {
            let x = ctx.relation(&args.require("X")?)?;
            let y = ctx.relation(&args.require("Y")?)?;
            let light = args.take("light").map(|t| function(&t)).transpose()?;
            let count = args.take_usize("generators", 10)?;
            let generators = sample_generators(ctx.seed, ctx.cap, count, n);
            let demo = darkstar_closure_demo(&x, &y, light.as_ref(), &generators, s, n)?;
            (demo.diagnostics, None)
        }
    };
    args.finish()?;
    diagnostics.field("seed", ctx.seed);
    write_artifacts(ctx, which, &diagnostics, trace.as_ref())?;

    let text = match ctx.format {
        Format::Human => diagnostics.to_string(),
        Format::Structured => diagnostics.structured(),
    };
    Ok(Outcome {
        text,
        code: if diagnostics.passed() { 0 } else { 1 },
    })
}

fn epi(ctx: &Context, args: &mut KvArgs) -> Result<(Diagnostics, Option<StageTrace>), CliError> {
    let k = match args.take("k") {
        Some(path) => KbarSurrogate::parse(&ctx.read_input(&path)?)
            .map_err(|e| CliError::Data(format!("{path}: {e}")))?,
        None => KbarSurrogate::bundled(),
    };
    let mut ex = epi_not_onto_example(&k, ctx.scope.stage, ctx.scope.domain)?;
    let pair = (args.take("f1"), args.take("f2"), args.take("S"));
    match pair {
        (None, None, None) => {}
        (Some(f1), Some(f2), Some(s_rel)) => {
            let (f1, f2) = (function(&f1)?, function(&f2)?);
            let s_rel = ctx.relation(&s_rel)?;
            let case = epi_case_identity(&ex, &f1, &f2, &s_rel)?;
            ex.diagnostics.field("pair", format!("{f1}, {f2}"));
            ex.diagnostics.field("pair_applicable", case.applicable);
            ex.diagnostics.field("pair_case", case.case);
            if case.applicable {
                ex.diagnostics.check(
                    "case-identity",
                    case.identity_holds,
                    if case.mismatches.is_empty() {
                        format!("case {}", case.case)
                    } else {
                        format!("mismatches at {:?}", case.mismatches)
                    },
                );
            } else {
                ex.diagnostics
                    .summary
                    .push_str("; pair does not equalize alpha, identity not applicable");
            }
        }
        _ => {
            return Err(CliError::Usage(
                "case identity needs all of `f1=`, `f2=` and `S=`".into(),
            ))
        }
    }
    Ok((ex.diagnostics, Some(ex.trace)))
}

fn write_artifacts(
    ctx: &Context,
    which: Which,
    diagnostics: &Diagnostics,
    trace: Option<&StageTrace>,
) -> Result<(), CliError> {
    let Some(dir) = &ctx.out else {
        return Ok(());
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let stem = which.name();
    fs::write(dir.join(format!("{stem}.diag")), diagnostics.structured()).map_err(io)?;
    if let Some(trace) = trace {
        fs::write(dir.join(format!("{stem}.trace")), trace.to_string()).map_err(io)?;
    }
    Ok(())
}
