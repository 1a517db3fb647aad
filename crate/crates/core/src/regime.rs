//! Operational advisories derived from the shape of a mass.
//!
//! Precedence is fixed: any negative weight gives
//! [`AdvisoryKind::CounterEvidenceDiscount`], otherwise a surplus total gives
//! [`AdvisoryKind::CriticalPriority`], a deficit gives
//! [`AdvisoryKind::Reconnaissance`], and a balanced mass is
//! [`AdvisoryKind::Nominal`].

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::frame::{FocalSet, Frame};
use crate::mass::{MassFunction, SumClass};
use crate::rules::FusionReport;

/// Default conflict level above which a fusion advisory carries a warning.
pub const DEFAULT_CONFLICT_WARNING: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AdvisoryKind {
    /// Redundant, overlapping evidence pushes the total above 1.
    CriticalPriority,
    /// Missing mass: gather more evidence before acting.
    Reconnaissance,
    /// Negative weights contradict some reports.
    CounterEvidenceDiscount,
    Nominal,
}

impl fmt::Display for AdvisoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::CriticalPriority => "critical-priority",
            Self::Reconnaissance => "reconnaissance",
            Self::CounterEvidenceDiscount => "counter-evidence-discount",
            Self::Nominal => "nominal",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Advisory {
    pub kind: AdvisoryKind,
    pub rationale: String,
    pub triggering_sets: Vec<FocalSet>,
    /// `1 - Σ` for a deficit.
    pub unknown_mass: Option<f64>,
    /// Set by [`assess_fusion`] when the conflict exceeds the threshold.
    pub conflict_warning: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeConfig {
    pub conflict_warning: f64,
}

impl Default for RegimeConfig {
    fn default() -> Self {
        Self {
            conflict_warning: DEFAULT_CONFLICT_WARNING,
        }
    }
}

/// Formats a number with up to six decimals and no trailing zeros.
pub(crate) fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_owned()
    } else {
        s.to_owned()
    }
}

struct Negative {
    source: Option<usize>,
    set: FocalSet,
    weight: f64,
}

fn classify(
    frame: &Frame,
    total: f64,
    focal: &[(FocalSet, f64)],
    negatives: &[Negative],
) -> Advisory {
    if !negatives.is_empty() {
        let mut rationale = String::from("counter-evidence present:");
        for n in negatives {
            let _ = write!(
                rationale,
                " weight {} on `{}`",
                num(n.weight),
                frame.render(n.set)
            );
            if let Some(i) = n.source {
                let _ = write!(rationale, " (source {})", i + 1);
            }
            rationale.push(';');
        }
        let _ = write!(
            rationale,
            " total mass {}; discount the reports contradicted by negative weight",
            num(total)
        );
        let mut sets: Vec<FocalSet> = negatives.iter().map(|n| n.set).collect();
        sets.sort();
        sets.dedup();
        return Advisory {
            kind: AdvisoryKind::CounterEvidenceDiscount,
            rationale,
            triggering_sets: sets,
            unknown_mass: None,
            conflict_warning: false,
        };
    }

    let carrying: Vec<FocalSet> = focal
        .iter()
        .filter(|(_, w)| *w != 0.0)
        .map(|(s, _)| *s)
        .collect();
    match SumClass::of(total) {
        SumClass::Surplus => Advisory {
            kind: AdvisoryKind::CriticalPriority,
            rationale: format!(
                "total mass {} exceeds 1 by {}: overlapping evidence corroborates the event",
                num(total),
                num(total - 1.0)
            ),
            triggering_sets: carrying,
            unknown_mass: None,
            conflict_warning: false,
        },
        SumClass::Deficit => {
            let unknown = 1.0 - total;
            Advisory {
                kind: AdvisoryKind::Reconnaissance,
                rationale: format!(
                    "total mass {} is below 1, unknown mass {}: gather more evidence before acting",
                    num(total),
                    num(unknown)
                ),
                triggering_sets: carrying,
                unknown_mass: Some(unknown),
                conflict_warning: false,
            }
        }
        // a negative total implies a negative weight, handled above
        SumClass::Balanced | SumClass::NegativeTotal => Advisory {
            kind: AdvisoryKind::Nominal,
            rationale: format!("total mass {} is balanced", num(total)),
            triggering_sets: Vec::new(),
            unknown_mass: None,
            conflict_warning: false,
        },
    }
}

pub fn assess(m: &MassFunction) -> Advisory {
    let focal: Vec<_> = m.focal_entries().collect();
    let negatives: Vec<_> = m
        .negative_entries()
        .map(|(set, weight)| Negative {
            source: None,
            set,
            weight,
        })
        .collect();
    classify(m.frame(), m.total(), &focal, &negatives)
}

/// Pools several reports on one frame: weights of the same set add up and
/// a negative weight in any source dominates.
///
/// Three reports of 0.9, 1.0 and 0.8 on the same event pool to 2.7.
///
/// # Panics
///
/// If `masses` is empty or the frames differ.
pub fn assess_sources(masses: &[MassFunction]) -> Advisory {
    let frame = masses[0].frame();
    assert!(
        masses.iter().all(|m| m.frame() == frame),
        "sources must share a frame"
    );
    let mut pooled: BTreeMap<FocalSet, f64> = BTreeMap::new();
    for m in masses {
        for (s, w) in m.focal_entries() {
            *pooled.entry(s).or_insert(0.0) += w;
        }
    }
    let focal: Vec<_> = pooled.into_iter().collect();
    let total = focal.iter().map(|(_, w)| w).sum();
    let negatives: Vec<_> = masses
        .iter()
        .enumerate()
        .flat_map(|(i, m)| {
            m.negative_entries().map(move |(set, weight)| Negative {
                source: Some(i),
                set,
                weight,
            })
        })
        .collect();
    classify(frame, total, &focal, &negatives)
}

pub fn assess_fusion(report: &FusionReport) -> Advisory {
    assess_fusion_with(report, &RegimeConfig::default())
}

/// Advisory for a fused result. Negative weights on the inputs count as
/// counter-evidence even when they cancelled out in the result.
pub fn assess_fusion_with(report: &FusionReport, config: &RegimeConfig) -> Advisory {
    let m = &report.result;
    let focal: Vec<_> = m.focal_entries().collect();
    let negatives: Vec<_> = report
        .negative_inputs
        .iter()
        .map(|&(i, set, weight)| Negative {
            source: Some(i),
            set,
            weight,
        })
        .chain(m.negative_entries().map(|(set, weight)| Negative {
            source: None,
            set,
            weight,
        }))
        .collect();
    let mut advisory = classify(m.frame(), m.focal_total(), &focal, &negatives);

    let _ = write!(
        advisory.rationale,
        "; rule {}, conflict k={} ({} at result scale), divisor {}",
        report.rule,
        num(report.conflict),
        num(report.scaled_conflict()),
        num(report.divisor)
    );
    if report.conflict > config.conflict_warning {
        advisory.conflict_warning = true;
        let _ = write!(
            advisory.rationale,
            "; warning: conflict exceeds {}",
            num(config.conflict_warning)
        );
    }
    advisory
}
