use super::document::{PipelineSpec, Scenario};
use crate::rules::{average, fuse, over_normalize, FuseOptions, FusionError, FusionReport, RuleId};

/// Runs the document's own pipeline, or PCR5 redistribute-first if none.
pub fn run_pipeline(scenario: &Scenario) -> Result<FusionReport, FusionError> {
    run_with(scenario, &scenario.pipeline())
}

/// Folds the sources left to right with `spec`.
///
/// The target range defaults to the union of all source ranges. PCR5 is
/// only defined for two sources, so with three or more the result depends on
/// source order. The average rule takes all sources at once.
pub fn run_with(scenario: &Scenario, spec: &PipelineSpec) -> Result<FusionReport, FusionError> {
    let masses = scenario.masses();
    if masses.len() < 2 {
        return Err(FusionError::NotEnoughSources(masses.len()));
    }
    let target = spec
        .target
        .or_else(|| scenario.range_union())
        .expect("at least two sources");
    let opts = FuseOptions {
        rule: spec.rule,
        order: spec.order,
        target: Some(target),
        normalize: spec.normalizes(),
    };

    if spec.rule == RuleId::Average {
        let report = average(&masses)?;
        return if opts.normalize {
            over_normalize(report, target)
        } else {
            Ok(report)
        };
    }

    let mut report = fuse(&masses[0], &masses[1], &opts)?;
    for next in &masses[2..] {
        report = fuse(&report.result, next, &opts)?;
    }
    Ok(report)
}
