use std::collections::BTreeMap;

use super::{check_no_conflict, conjunctive, FusionError, FusionReport, Redistribution, RuleId};
use crate::mass::{MassFunction, MassRange};

/// PCR5: conjunctive combination, then each conflicting product
/// `m1(x)·m2(y)` with `x ∩ y = ∅` goes back to `x` and `y` in the ratio
/// `m1(x) : m2(y)`. Fractions with a zero denominator are dropped.
///
/// The total is conserved, so the result sums to `Σm1 · Σm2` with nothing
/// left on ∅.
pub fn pcr5(m1: &MassFunction, m2: &MassFunction) -> Result<FusionReport, FusionError> {
    check_no_conflict(RuleId::Pcr5, &[m1, m2])?;
    redistribute_pcr5(conjunctive(m1, m2)?)
}

/// Applies the PCR5 redistribution to a conjunctive product table, which may
/// already have been rescaled by [`over_normalize`]. Amounts are taken at the
/// current scale of the result.
pub fn redistribute_pcr5(report: FusionReport) -> Result<FusionReport, FusionError> {
    if report.rule != RuleId::Conjunctive {
        return Err(FusionError::Guard {
            rule: RuleId::Pcr5,
            reason: format!(
                "redistribution needs a conjunctive product table, got a {} result",
                report.rule
            ),
            permitted: vec![RuleId::Conjunctive],
        });
    }
    let FusionReport {
        result,
        conflict,
        trace,
        divisor,
        input_totals,
        negative_inputs,
        ..
    } = report;

    let frame = result.frame().clone();
    let range = result.range();
    let empty = frame.empty_set();
    let mut weights: BTreeMap<_, _> = result.entries().collect();
    let mut redistributions = Vec::new();
    let mut skipped = 0;

    for rec in trace.iter().filter(|r| r.assigned_to.is_empty()) {
        if rec.x.is_empty() || rec.y.is_empty() {
            if rec.product != 0.0 {
                let weight = if rec.x.is_empty() {
                    rec.left
                } else {
                    rec.right
                };
                return Err(FusionError::ConflictInInput {
                    rule: RuleId::Pcr5,
                    weight,
                });
            }
            continue;
        }
        let denom = rec.left + rec.right;
        if denom == 0.0 {
            // one fraction for each side
            skipped += 2;
            continue;
        }
        let amount = rec.product / divisor;
        let to_x = amount * rec.left / denom;
        let to_y = amount * rec.right / denom;
        *weights.entry(rec.x).or_insert(0.0) += to_x;
        *weights.entry(rec.y).or_insert(0.0) += to_y;
        redistributions.push(Redistribution {
            x: rec.x,
            y: rec.y,
            amount,
            to_x,
            to_y,
        });
    }
    weights.insert(empty, 0.0);

    Ok(FusionReport {
        result: MassFunction::from_parts(frame, weights, range),
        conflict,
        trace,
        redistributions,
        skipped_fractions: skipped,
        divisor,
        rule: RuleId::Pcr5,
        input_totals,
        negative_inputs,
    })
}

/// Spreads the mass on ∅ over all nonempty sets in proportion to their
/// weights: `w -> w · (1 + k / S)` with `S` the focal total.
pub fn total_proportional(mut report: FusionReport) -> Result<FusionReport, FusionError> {
    let k = report.result.conflict_weight();
    if k < 0.0 {
        return Err(FusionError::NegativeConflict(k));
    }
    let focal_total = report.result.focal_total();
    if k > 0.0 && focal_total <= 0.0 {
        return Err(FusionError::NothingToRedistribute {
            conflict: k,
            focal_total,
        });
    }
    let factor = if k > 0.0 { 1.0 + k / focal_total } else { 1.0 };
    let frame = report.result.frame().clone();
    let range = report.result.range();
    let weights = report
        .result
        .entries()
        .map(|(s, w)| (s, if s.is_empty() { 0.0 } else { w * factor }))
        .chain(std::iter::once((frame.empty_set(), 0.0)))
        .collect();
    report.result = MassFunction::from_parts(frame, weights, range);
    report.rule = RuleId::TotalProportional;
    Ok(report)
}

/// OverNormalization: divides every weight, ∅ included, by
/// `d = total / (target.lo + target.hi)` so the result sums to the target's
/// `lo + hi`. Every rule here conserves the product total, so `d` equals
/// `Σm1 · Σm2 / (lo + hi)`. The cumulative divisor is recorded.
pub fn over_normalize(
    mut report: FusionReport,
    target: MassRange,
) -> Result<FusionReport, FusionError> {
    let total = report.result.total();
    let target_sum = target.target_sum();
    if !(total > 0.0 && target_sum > 0.0) {
        return Err(FusionError::InvalidDivisor {
            total,
            target: target_sum,
        });
    }
    let d = total / target_sum;
    let frame = report.result.frame().clone();
    let weights = report.result.entries().map(|(s, w)| (s, w / d)).collect();
    report.result = MassFunction::from_parts(frame, weights, target);
    report.divisor *= d;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use crate::mass::Validation;

    fn ab() -> Frame {
        Frame::new(["A", "B"]).unwrap()
    }

    fn over(pairs: &[(&str, f64)], hi: f64) -> MassFunction {
        MassFunction::from_labels(
            &ab(),
            pairs.iter().copied(),
            MassRange::over(hi).unwrap(),
            Validation::Lenient,
        )
        .unwrap()
    }

    fn w(m: &MassFunction, expr: &str) -> f64 {
        m.weight_of(expr).unwrap()
    }

    #[test]
    fn pcr5_mixed_intervals() {
        let m1 = over(&[("A", 0.7), ("B", 0.3), ("A|B", 0.1)], 1.1);
        let m2 = over(&[("A", 0.4), ("B", 0.6), ("A|B", 0.2)], 1.2);
        let r = pcr5(&m1, &m2).unwrap();
        assert!((w(&r.result, "A") - 0.7547).abs() < 1e-3);
        assert!((w(&r.result, "B") - 0.5453).abs() < 1e-3);
        assert!((w(&r.result, "A|B") - 0.020).abs() < 1e-3);
        assert_eq!(r.result.conflict_weight(), 0.0);
        assert!((r.result.total() - 1.32).abs() < 1e-12);
        assert_eq!(r.redistributions.len(), 2);

        let n = over_normalize(r, MassRange::over(1.2).unwrap()).unwrap();
        assert!((w(&n.result, "A") - 0.686).abs() < 1e-3);
        assert!((w(&n.result, "B") - 0.496).abs() < 1e-3);
        assert!((w(&n.result, "A|B") - 0.018).abs() < 1e-3);
        assert!((n.result.total() - 1.2).abs() < 1e-12);
        assert!((n.divisor - 1.1).abs() < 1e-12);
        // 0.54 / 1.1
        assert!((n.scaled_conflict() - 0.4909).abs() < 1e-4);
    }

    #[test]
    fn pcr5_suspects() {
        let m1 = over(&[("A", 0.3), ("B", 0.6), ("A|B", 0.2)], 1.1);
        let m2 = over(&[("A", 0.5), ("B", 0.5), ("A|B", 0.1)], 1.1);
        let r = pcr5(&m1, &m2).unwrap();
        assert!((w(&r.result, "A") - 0.4726).abs() < 1e-4);
        assert!((w(&r.result, "B") - 0.7174).abs() < 1e-4);
        assert!((w(&r.result, "A|B") - 0.02).abs() < 1e-12);
        // rounded intermediates give 0.48 / 0.71
        assert!((w(&r.result, "A") - 0.48).abs() <= 0.02);
        assert!((w(&r.result, "B") - 0.71).abs() <= 0.02);
    }

    #[test]
    fn pcr5_without_conflict_matches_conjunctive() {
        let m1 = over(&[("A", 0.5), ("A|B", 0.5)], 1.0);
        let m2 = over(&[("A", 0.2), ("A|B", 0.8)], 1.0);
        let c = conjunctive(&m1, &m2).unwrap();
        let p = pcr5(&m1, &m2).unwrap();
        assert_eq!(
            c.result.entries().collect::<Vec<_>>(),
            p.result.entries().collect::<Vec<_>>()
        );
    }

    #[test]
    fn pcr5_skips_zero_denominators() {
        let m1 = over(&[("A", 0.0), ("A|B", 1.0)], 1.0);
        let m2 = over(&[("B", 0.0), ("A|B", 1.0)], 1.0);
        let r = pcr5(&m1, &m2).unwrap();
        assert_eq!(r.skipped_fractions, 2);
        assert_eq!(w(&r.result, "A|B"), 1.0);
    }

    #[test]
    fn over_normalize_directors() {
        let m1 = over(&[("A", 0.6), ("B", 0.3), ("A|B", 0.2)], 1.1);
        let m2 = over(&[("A", 0.5), ("B", 0.5), ("A|B", 0.1)], 1.1);
        let n = over_normalize(
            conjunctive(&m1, &m2).unwrap(),
            MassRange::over(1.1).unwrap(),
        )
        .unwrap();
        assert!((w(&n.result, "A") - 0.418).abs() < 1e-3);
        assert!((w(&n.result, "B") - 0.2545).abs() < 1e-4);
        assert!((w(&n.result, "A|B") - 0.018).abs() < 1e-3);
        assert!((n.result.conflict_weight() - 0.409).abs() < 1e-3);
        assert!((n.result.total() - 1.1).abs() < 1e-12);

        let t = total_proportional(n).unwrap();
        assert!((w(&t.result, "A") - 0.6658).abs() < 1e-4);
        assert!((w(&t.result, "B") - 0.4053).abs() < 1e-4);
        assert!((w(&t.result, "A|B") - 0.0289).abs() < 1e-4);
        assert_eq!(t.result.conflict_weight(), 0.0);
        assert!((t.result.total() - 1.1).abs() < 1e-12);
    }

    #[test]
    fn over_normalize_classical_is_identity() {
        let m = over(&[("A", 0.3), ("B", 0.3), ("A|B", 0.4)], 1.0);
        let c = conjunctive(&m, &m).unwrap();
        let n = over_normalize(c.clone(), MassRange::CLASSICAL).unwrap();
        assert_eq!(n.divisor, 1.0);
        assert_eq!(
            n.result.entries().collect::<Vec<_>>(),
            c.result.entries().collect::<Vec<_>>()
        );
    }

    #[test]
    fn over_normalize_rejects_bad_divisor() {
        let f = ab();
        let zero = MassFunction::from_parts(
            f.clone(),
            [(f.universe(), 0.0)].into_iter().collect(),
            MassRange::CLASSICAL,
        );
        let r = FusionReport::from_mass(zero, RuleId::Conjunctive);
        assert!(matches!(
            over_normalize(r, MassRange::CLASSICAL),
            Err(FusionError::InvalidDivisor { .. })
        ));

        let m = over(&[("A", 1.0)], 1.0);
        let r = FusionReport::from_mass(m, RuleId::Conjunctive);
        let target = MassRange::new(-1.5, 1.0).unwrap();
        assert!(matches!(
            over_normalize(r, target),
            Err(FusionError::InvalidDivisor { .. })
        ));
    }

    #[test]
    fn total_proportional_cases() {
        let f = ab();
        let table = MassFunction::from_parts(
            f.clone(),
            [
                (f.empty_set(), 0.5),
                (f.parse_focal("A").unwrap(), 0.5),
                (f.parse_focal("B").unwrap(), 0.5),
            ]
            .into_iter()
            .collect(),
            MassRange::over(1.5).unwrap(),
        );
        let t = total_proportional(FusionReport::from_mass(table, RuleId::Conjunctive)).unwrap();
        assert_eq!(w(&t.result, "A"), 0.75);
        assert_eq!(w(&t.result, "B"), 0.75);
        assert_eq!(t.result.conflict_weight(), 0.0);

        let m = over(&[("A", 0.25), ("A|B", 0.75)], 1.0);
        let t =
            total_proportional(FusionReport::from_mass(m.clone(), RuleId::Conjunctive)).unwrap();
        for (s, wt) in m.entries() {
            assert_eq!(t.result.weight(s), wt);
        }

        let only_conflict = MassFunction::from_parts(
            f.clone(),
            [(f.empty_set(), 0.5)].into_iter().collect(),
            MassRange::CLASSICAL,
        );
        assert!(matches!(
            total_proportional(FusionReport::from_mass(only_conflict, RuleId::Conjunctive)),
            Err(FusionError::NothingToRedistribute { .. })
        ));
    }

    #[test]
    fn redistribute_needs_product_table() {
        let m = over(&[("A", 0.5), ("B", 0.5)], 1.0);
        let r = pcr5(&m, &m).unwrap();
        assert!(redistribute_pcr5(r).unwrap_err().is_guard());
    }
}
