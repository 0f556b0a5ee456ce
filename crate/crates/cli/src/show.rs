use std::path::Path;

use eeq_core::rel::{approximant, CoceerSeed, PairSource, RelationSpec, StageTrace};

use crate::args::{read, Context};
use crate::output::{classes_line, set, Report};
use crate::{CliError, Outcome, ReplayKind};

pub fn show(ctx: &Context, relation: &str) -> Result<Outcome, CliError> {
    let spec = ctx.relation(relation)?;
    let (s, n) = (ctx.scope.stage, ctx.scope.domain);
    let window = approximant(&spec, s, n)?;
    let mut report = Report::new("show");
    report.field("relation", relation);
    report.field("stage", s);
    report.field("n", n);
    report.field("classes", window.classes_count());
    report.field("deferred", window.deferred());
    for class in window.classes() {
        report.field(&format!("class.{}", class[0]), set(&class));
    }
    report.line(classes_line(&window));
    Ok(Outcome {
        text: report.render(ctx.format),
        code: 0,
    })
}

pub fn trace_replay(ctx: &Context, path: &Path, kind: ReplayKind) -> Result<Outcome, CliError> {
    let text = read(path)?;
    let trace =
        StageTrace::parse(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let has_merges = trace.merges_up_to(u64::MAX).next().is_some();
    let as_ceer = match kind {
        ReplayKind::Auto => has_merges,
        ReplayKind::Ceer => true,
        ReplayKind::Coceer => false,
    };
    let spec = if as_ceer {
        RelationSpec::FromPairs(PairSource::TraceBacked(trace.clone()))
    } else {
        RelationSpec::Coceer {
            seed: CoceerSeed::zero_and_rest(),
            trace: trace.clone(),
        }
    };
    spec.validate()
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;

    let n = ctx.scope.domain;
    let last = trace.last_stage().unwrap_or(0).min(ctx.scope.stage);
    let mut report = Report::new("trace-replay");
    report.field("kind", if as_ceer { "ceer" } else { "coceer" });
    report.field("events", trace.events().len());
    report.field("n", n);
    let mut previous: Option<String> = None;
    for s in 0..=last {
        let line = classes_line(&approximant(&spec, s, n)?);
        // only stages that change the partition
        if previous.as_deref() != Some(line.as_str()) {
            report.field(&format!("stage.{s}"), &line);
            report.line(format!("s={s} {line}"));
            previous = Some(line);
        }
    }
    Ok(Outcome {
        text: report.render(ctx.format),
        code: 0,
    })
}
