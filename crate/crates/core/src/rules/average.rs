use std::collections::{BTreeMap, BTreeSet};

use super::{check_frames, check_no_conflict, FusionError, FusionReport, RuleId};
use crate::mass::MassFunction;

/// Average of masses: the arithmetic mean of each set's weight across all
/// sources. Negative weights are allowed and no conflict arises.
///
/// Weights are summed in sorted order so the output does not depend on the
/// order of the sources.
pub fn average(masses: &[MassFunction]) -> Result<FusionReport, FusionError> {
    if masses.len() < 2 {
        return Err(FusionError::NotEnoughSources(masses.len()));
    }
    let refs: Vec<&MassFunction> = masses.iter().collect();
    check_frames(&refs)?;
    check_no_conflict(RuleId::Average, &refs)?;

    let frame = masses[0].frame().clone();
    let sets: BTreeSet<_> = masses
        .iter()
        .flat_map(|m| m.focal_entries().map(|(s, _)| s))
        .collect();
    let n = masses.len() as f64;
    let mut weights: BTreeMap<_, _> = sets
        .into_iter()
        .map(|s| {
            let mut values: Vec<f64> = masses.iter().map(|m| m.weight(s)).collect();
            values.sort_by(f64::total_cmp);
            (s, values.iter().sum::<f64>() / n)
        })
        .collect();
    weights.insert(frame.empty_set(), 0.0);

    let range = masses[1..]
        .iter()
        .fold(masses[0].range(), |acc, m| acc.union(&m.range()));
    let negative_inputs = masses
        .iter()
        .enumerate()
        .flat_map(|(i, m)| m.negative_entries().map(move |(s, w)| (i, s, w)))
        .collect();

    Ok(FusionReport {
        result: MassFunction::from_parts(frame, weights, range),
        conflict: 0.0,
        trace: Vec::new(),
        redistributions: Vec::new(),
        skipped_fractions: 0,
        divisor: 1.0,
        rule: RuleId::Average,
        input_totals: masses.iter().map(MassFunction::total).collect(),
        negative_inputs,
    })
}
