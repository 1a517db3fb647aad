use std::collections::BTreeMap;

use super::{
    check_frames, check_no_conflict, check_nonnegative, FusionError, FusionReport, ProductRecord,
    RuleId,
};
use crate::mass::{MassFunction, MassRange, EPSILON};

/// Unnormalized conjunctive combination.
///
/// The result keeps the total conflict on ∅ and carries the union of the
/// input ranges. Only declared focal sets are paired.
pub fn conjunctive(m1: &MassFunction, m2: &MassFunction) -> Result<FusionReport, FusionError> {
    check_frames(&[m1, m2])?;
    check_nonnegative(RuleId::Conjunctive, &[m1, m2])?;

    let frame = m1.frame().clone();
    let empty = frame.empty_set();
    let mut weights = BTreeMap::from([(empty, 0.0)]);
    let mut trace = Vec::new();
    for (x, left) in m1.entries() {
        for (y, right) in m2.entries() {
            // same frame, so the widths match
            let z = x.intersect(y).expect("same frame");
            let product = left * right;
            *weights.entry(z).or_insert(0.0) += product;
            trace.push(ProductRecord {
                x,
                y,
                left,
                right,
                product,
                assigned_to: z,
            });
        }
    }
    let conflict = weights[&empty];
    let range = m1.range().union(&m2.range());
    Ok(FusionReport {
        result: MassFunction::from_parts(frame, weights, range),
        conflict,
        trace,
        redistributions: Vec::new(),
        skipped_fractions: 0,
        divisor: 1.0,
        rule: RuleId::Conjunctive,
        input_totals: vec![m1.total(), m2.total()],
        negative_inputs: Vec::new(),
    })
}

/// Total conflict `k`: Σ m1(x)·m2(y) over disjoint pairs.
pub fn conflict_mass(m1: &MassFunction, m2: &MassFunction) -> Result<f64, FusionError> {
    conjunctive(m1, m2).map(|r| r.conflict)
}

/// Dempster's rule on two classical masses.
pub fn dempster(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction, FusionError> {
    dempster_report(m1, m2).map(|r| r.result)
}

pub fn dempster_report(m1: &MassFunction, m2: &MassFunction) -> Result<FusionReport, FusionError> {
    check_frames(&[m1, m2])?;
    check_nonnegative(RuleId::Dempster, &[m1, m2])?;
    check_no_conflict(RuleId::Dempster, &[m1, m2])?;
    for (i, m) in [m1, m2].into_iter().enumerate() {
        if !m.is_classical() {
            return Err(FusionError::Guard {
                rule: RuleId::Dempster,
                reason: format!(
                    "source {} is not classical (range {} is {}, sum {} is {})",
                    i + 1,
                    m.range(),
                    m.classify_range(),
                    m.total(),
                    m.classify_sum()
                ),
                permitted: vec![
                    RuleId::Conjunctive,
                    RuleId::Pcr5,
                    RuleId::TotalProportional,
                    RuleId::Average,
                ],
            });
        }
    }

    let mut report = conjunctive(m1, m2)?;
    let k = report.conflict;
    if k >= 1.0 - EPSILON {
        return Err(FusionError::TotalConflict { k });
    }
    let scale = 1.0 - k;
    let frame = report.result.frame().clone();
    let weights = report
        .result
        .entries()
        .map(|(s, w)| (s, if s.is_empty() { 0.0 } else { w / scale }))
        .collect();
    report.result = MassFunction::from_parts(frame, weights, MassRange::CLASSICAL);
    report.divisor = scale;
    report.rule = RuleId::Dempster;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use crate::mass::Validation;

    fn over(frame: &Frame, pairs: &[(&str, f64)], hi: f64) -> MassFunction {
        MassFunction::from_labels(
            frame,
            pairs.iter().copied(),
            MassRange::over(hi).unwrap(),
            Validation::Lenient,
        )
        .unwrap()
    }

    fn ab() -> Frame {
        Frame::new(["A", "B"]).unwrap()
    }

    fn assert_weights(m: &MassFunction, expected: &[(&str, f64)], tol: f64) {
        for &(expr, w) in expected {
            let got = if expr == "∅" {
                m.conflict_weight()
            } else {
                m.weight_of(expr).unwrap()
            };
            assert!((got - w).abs() <= tol, "{expr}: got {got}, want {w}");
        }
    }

    #[test]
    fn suspects_table() {
        let f = ab();
        let m1 = over(&f, &[("A", 0.3), ("B", 0.6), ("A|B", 0.2)], 1.1);
        let m2 = over(&f, &[("A", 0.5), ("B", 0.5), ("A|B", 0.1)], 1.1);
        let r = conjunctive(&m1, &m2).unwrap();
        assert_weights(
            &r.result,
            &[("A", 0.28), ("B", 0.46), ("A|B", 0.02), ("∅", 0.45)],
            1e-12,
        );
        assert!((r.conflict - 0.45).abs() < 1e-12);
        assert!((r.trace_total() - 1.21).abs() < 1e-12);
        assert_eq!(r.trace.len(), 9);
        assert_eq!(r.divisor, 1.0);
        assert_eq!(r.result.range(), MassRange::over(1.1).unwrap());
    }

    #[test]
    fn mixed_interval_table() {
        let f = ab();
        let m1 = over(&f, &[("A", 0.7), ("B", 0.3), ("A|B", 0.1)], 1.1);
        let m2 = over(&f, &[("A", 0.4), ("B", 0.6), ("A|B", 0.2)], 1.2);
        let r = conjunctive(&m1, &m2).unwrap();
        assert_weights(
            &r.result,
            &[("A", 0.46), ("B", 0.30), ("A|B", 0.02), ("∅", 0.54)],
            1e-12,
        );
        assert_eq!(r.result.range(), MassRange::over(1.2).unwrap());
        assert!((conflict_mass(&m1, &m2).unwrap() - 0.54).abs() < 1e-12);
    }

    #[test]
    fn vacuous_is_neutral() {
        let f = ab();
        let m = over(&f, &[("A", 0.25), ("B", 0.5), ("A|B", 0.25)], 1.0);
        let r = conjunctive(&MassFunction::vacuous(f.clone()), &m).unwrap();
        for (s, w) in m.entries() {
            assert_eq!(r.result.weight(s), w);
        }
        assert_eq!(r.conflict, 0.0);
    }

    #[test]
    fn conflict_values() {
        let f = ab();
        let m1 = over(&f, &[("A", 0.6), ("B", 0.3), ("A|B", 0.2)], 1.1);
        let m2 = over(&f, &[("A", 0.5), ("B", 0.5), ("A|B", 0.1)], 1.1);
        assert!((conflict_mass(&m1, &m2).unwrap() - 0.45).abs() < 1e-12);

        let nested = over(&f, &[("A", 0.5), ("A|B", 0.5)], 1.0);
        assert_eq!(conflict_mass(&nested, &nested).unwrap(), 0.0);
    }

    #[test]
    fn dempster_cases() {
        let f = ab();
        let sure = over(&f, &[("A", 1.0)], 1.0);
        let m = dempster(&sure, &sure).unwrap();
        assert_eq!(m.weight_of("A").unwrap(), 1.0);

        let m1 = over(&f, &[("A", 0.6), ("A|B", 0.4)], 1.0);
        let m2 = over(&f, &[("B", 0.7), ("A|B", 0.3)], 1.0);
        let m = dempster(&m1, &m2).unwrap();
        // k = 0.42; focal products 0.18, 0.28, 0.12 over 0.58
        assert_weights(
            &m,
            &[("A", 0.3103), ("B", 0.4828), ("A|B", 0.2069), ("∅", 0.0)],
            1e-4,
        );
        assert!((m.total() - 1.0).abs() < 1e-12);

        let abc = Frame::new(["A", "B", "C"]).unwrap();
        let m1 = over(&abc, &[("A", 0.9), ("C", 0.1)], 1.0);
        let m2 = over(&abc, &[("B", 0.9), ("C", 0.1)], 1.0);
        let r = dempster_report(&m1, &m2).unwrap();
        assert!((r.conflict - 0.99).abs() < 1e-12);
        assert!((r.result.weight_of("C").unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn dempster_rejects() {
        let f = ab();
        let a = over(&f, &[("A", 1.0)], 1.0);
        let b = over(&f, &[("B", 1.0)], 1.0);
        assert!(matches!(
            dempster(&a, &b),
            Err(FusionError::TotalConflict { .. })
        ));

        let o = over(&f, &[("A", 0.6), ("B", 0.3), ("A|B", 0.2)], 1.1);
        assert!(dempster(&o, &a).unwrap_err().is_guard());
    }

    #[test]
    fn conjunctive_rejects_negative() {
        let f = ab();
        let u = MassFunction::from_labels(
            &f,
            [("A", -0.2), ("B", 0.7), ("A|B", 0.3)],
            MassRange::new(-0.2, 1.0).unwrap(),
            Validation::Strict,
        )
        .unwrap();
        let err = conjunctive(&u, &u).unwrap_err();
        assert!(err.is_guard());
        assert!(err.to_string().contains("average"));
    }
}
