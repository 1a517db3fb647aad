//! Combination rules.
//!
//! Every pairwise rule starts from the conjunctive product table: each pair
//! of focal sets `(x, y)` contributes `m1(x) * m2(y)` to `x ∩ y`. The rules
//! differ in what they do with the mass that lands on ∅:
//!
//! * [`conjunctive`] leaves it there.
//! * [`dempster`] discards it and rescales by `1 / (1 - k)`.
//! * [`pcr5`] hands each conflicting product back to the two sets that
//!   produced it, in proportion to their source weights.
//! * [`total_proportional`] spreads the whole conflict over every focal set
//!   in proportion to its combined weight.
//!
//! [`over_normalize`] rescales a result so its total matches the sum
//! `lo + hi` of a target range. [`average`] is the only rule that accepts
//! negative weights.

mod average;
mod conjunctive;
mod redistribution;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::FocalSet;
use crate::mass::{MassFunction, MassRange};

pub use average::average;
pub use conjunctive::{conflict_mass, conjunctive, dempster, dempster_report};
pub use redistribution::{over_normalize, pcr5, redistribute_pcr5, total_proportional};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleId {
    Conjunctive,
    Dempster,
    Pcr5,
    TotalProportional,
    Average,
}

impl RuleId {
    pub const ALL: [RuleId; 5] = [
        RuleId::Conjunctive,
        RuleId::Dempster,
        RuleId::Pcr5,
        RuleId::TotalProportional,
        RuleId::Average,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Conjunctive => "conjunctive",
            Self::Dempster => "dempster",
            Self::Pcr5 => "pcr5",
            Self::TotalProportional => "total-proportional",
            Self::Average => "average",
        }
    }

    /// Whether the rule normalizes onto the target range by default.
    pub fn normalizes_by_default(self) -> bool {
        matches!(self, Self::Pcr5 | Self::TotalProportional)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// Whether OverNormalization runs before or after conflict redistribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Order {
    NormalizeFirst,
    #[default]
    RedistributeFirst,
}

impl Order {
    pub fn name(self) -> &'static str {
        match self {
            Self::NormalizeFirst => "normalize-first",
            Self::RedistributeFirst => "redistribute-first",
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Order {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "normalize-first" => Ok(Self::NormalizeFirst),
            "redistribute-first" => Ok(Self::RedistributeFirst),
            _ => Err(format!("unknown order `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FusionError {
    #[error("masses are defined over different frames")]
    FrameMismatch,
    #[error("{rule} cannot combine these masses: {reason}; permitted rules: {}", list(.permitted))]
    Guard {
        rule: RuleId,
        reason: String,
        permitted: Vec<RuleId>,
    },
    #[error("total conflict k = {k}: Dempster's rule is undefined")]
    TotalConflict { k: f64 },
    #[error("{rule} input already carries {weight} on the empty set")]
    ConflictInInput { rule: RuleId, weight: f64 },
    #[error("conflict {conflict} cannot be redistributed: focal weights sum to {focal_total}")]
    NothingToRedistribute { conflict: f64, focal_total: f64 },
    #[error("conflict mass {0} is negative")]
    NegativeConflict(f64),
    #[error("cannot normalize a total of {total} onto a target sum of {target}")]
    InvalidDivisor { total: f64, target: f64 },
    #[error("need at least 2 sources, got {0}")]
    NotEnoughSources(usize),
}

impl FusionError {
    /// Rule/mass-class mismatches, as opposed to numeric failures.
    pub fn is_guard(&self) -> bool {
        matches!(self, Self::Guard { .. })
    }
}

fn list(rules: &[RuleId]) -> String {
    rules
        .iter()
        .map(|r| r.name())
        .collect::<Vec<_>>()
        .join(", ")
}

/// One cell of the conjunctive product table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductRecord {
    pub x: FocalSet,
    pub y: FocalSet,
    /// `m1(x)`
    pub left: f64,
    /// `m2(y)`
    pub right: f64,
    pub product: f64,
    pub assigned_to: FocalSet,
}

/// Where one conflicting product went under PCR5.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Redistribution {
    pub x: FocalSet,
    pub y: FocalSet,
    /// Product at the scale of the result it was taken from.
    pub amount: f64,
    pub to_x: f64,
    pub to_y: f64,
}

/// Outcome of a combination together with the audit trail that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionReport {
    pub result: MassFunction,
    /// Total conflict `k` of the raw product table, before any rescaling.
    pub conflict: f64,
    pub trace: Vec<ProductRecord>,
    pub redistributions: Vec<Redistribution>,
    /// Zero-denominator PCR5 fractions that were dropped.
    pub skipped_fractions: usize,
    /// Cumulative divisor applied to the raw products; 1 if none.
    pub divisor: f64,
    pub rule: RuleId,
    /// Σ weights of each input, in input order.
    pub input_totals: Vec<f64>,
    /// Negative weights seen on the inputs: (source index, set, weight).
    pub negative_inputs: Vec<(usize, FocalSet, f64)>,
}

impl FusionReport {
    /// Wraps an existing mass, e.g. a table with conflict already on ∅.
    pub fn from_mass(result: MassFunction, rule: RuleId) -> Self {
        let conflict = result.conflict_weight();
        let negative_inputs = result.negative_entries().map(|(s, w)| (0, s, w)).collect();
        Self {
            input_totals: vec![result.total()],
            result,
            conflict,
            trace: Vec::new(),
            redistributions: Vec::new(),
            skipped_fractions: 0,
            divisor: 1.0,
            rule,
            negative_inputs,
        }
    }

    /// Conflict expressed at the scale of the result.
    pub fn scaled_conflict(&self) -> f64 {
        self.conflict / self.divisor
    }

    /// Σ of all trace products.
    pub fn trace_total(&self) -> f64 {
        self.trace.iter().map(|r| r.product).sum()
    }
}

/// Options for [`fuse`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuseOptions {
    pub rule: RuleId,
    pub order: Order,
    /// Defaults to the union of the input ranges.
    pub target: Option<MassRange>,
    pub normalize: bool,
}

impl FuseOptions {
    pub fn new(rule: RuleId) -> Self {
        Self {
            rule,
            order: Order::default(),
            target: None,
            normalize: rule.normalizes_by_default(),
        }
    }

    pub fn order(mut self, order: Order) -> Self {
        self.order = order;
        self
    }

    pub fn target(mut self, target: MassRange) -> Self {
        self.target = Some(target);
        self
    }

    pub fn normalize(mut self, normalize: bool) -> Self {
        self.normalize = normalize;
        self
    }
}

impl Default for FuseOptions {
    fn default() -> Self {
        Self::new(RuleId::Pcr5)
    }
}

pub(crate) fn check_frames(masses: &[&MassFunction]) -> Result<(), FusionError> {
    match masses.split_first() {
        Some((first, rest)) if rest.iter().any(|m| !m.same_frame(first)) => {
            Err(FusionError::FrameMismatch)
        }
        _ => Ok(()),
    }
}

/// Rejects negative weights for every rule except [`RuleId::Average`].
pub(crate) fn check_nonnegative(rule: RuleId, masses: &[&MassFunction]) -> Result<(), FusionError> {
    for (i, m) in masses.iter().enumerate() {
        if let Some((set, w)) = m.negative_entries().next() {
            return Err(FusionError::Guard {
                rule,
                reason: format!(
                    "source {} has negative weight {} on `{}`; products of negative weights are not meaningful",
                    i + 1,
                    w,
                    m.frame().render(set)
                ),
                permitted: vec![RuleId::Average],
            });
        }
    }
    Ok(())
}

pub(crate) fn check_no_conflict(rule: RuleId, masses: &[&MassFunction]) -> Result<(), FusionError> {
    for m in masses {
        let w = m.conflict_weight();
        if w != 0.0 {
            return Err(FusionError::ConflictInInput { rule, weight: w });
        }
    }
    Ok(())
}

/// Combines two masses with the chosen rule.
///
/// Negative weights are only accepted by the average rule, and Dempster's
/// rule only takes classical masses. With `normalize` set, the result is
/// OverNormalized onto the target range, either before or after the
/// conflict is redistributed depending on `order`.
pub fn fuse(
    m1: &MassFunction,
    m2: &MassFunction,
    opts: &FuseOptions,
) -> Result<FusionReport, FusionError> {
    check_frames(&[m1, m2])?;
    if opts.rule != RuleId::Average {
        check_nonnegative(opts.rule, &[m1, m2])?;
    }
    let target = opts.target.unwrap_or_else(|| m1.range().union(&m2.range()));
    let normalize = |r: FusionReport| {
        if opts.normalize {
            over_normalize(r, target)
        } else {
            Ok(r)
        }
    };

    match (opts.rule, opts.order) {
        (RuleId::Conjunctive, _) => normalize(conjunctive(m1, m2)?),
        (RuleId::Dempster, _) => dempster_report(m1, m2),
        (RuleId::Pcr5, Order::RedistributeFirst) => normalize(pcr5(m1, m2)?),
        (RuleId::Pcr5, Order::NormalizeFirst) => {
            check_no_conflict(RuleId::Pcr5, &[m1, m2])?;
            redistribute_pcr5(normalize(conjunctive(m1, m2)?)?)
        }
        (RuleId::TotalProportional, Order::RedistributeFirst) => {
            normalize(total_proportional(conjunctive(m1, m2)?)?)
        }
        (RuleId::TotalProportional, Order::NormalizeFirst) => {
            total_proportional(normalize(conjunctive(m1, m2)?)?)
        }
        (RuleId::Average, _) => normalize(average(&[m1.clone(), m2.clone()])?),
    }
}
