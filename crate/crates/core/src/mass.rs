//! Mass functions whose weights may leave `[0, 1]`.
//!
//! A [`MassRange`] `[lo, hi]` with `lo <= 0 <= 1 <= hi` declares where weights
//! may live. The range decides the [`RangeClass`]; the actual total of the
//! weights decides the [`SumClass`]. The two are reported separately and can
//! disagree.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{FocalSet, Frame, FrameError};

/// Tolerance for sum checks.
pub const EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MassError {
    #[error("invalid range [{lo}, {hi}]: need finite lo <= 0, hi >= 1 and lo < hi")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("weight {weight} on `{focal}` is outside [{lo}, {hi}]")]
    OutOfRange {
        focal: String,
        weight: f64,
        lo: f64,
        hi: f64,
    },
    #[error("weight on `{focal}` is not finite")]
    NotFinite { focal: String },
    #[error("weights sum to {sum}, strict validation expects lo + hi = {expected}")]
    SumMismatch { sum: f64, expected: f64 },
    #[error("source mass assigns {0} to the empty set")]
    EmptySetWeight(f64),
    #[error("`{0}` is assigned more than once")]
    DuplicateFocal(String),
    #[error("focal set does not belong to the frame")]
    ForeignFocal,
    #[error("belief and plausibility need a nonempty query set")]
    EmptyQuery,
    #[error(transparent)]
    Frame(#[from] FrameError),
}

/// Validation strictness for source masses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Validation {
    /// Weights within bounds and Σ = lo + hi.
    Strict,
    /// Weights within bounds only.
    #[default]
    Lenient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RangeClass {
    Classical,
    Over,
    Under,
    Off,
}

impl fmt::Display for RangeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Classical => "classical",
            Self::Over => "over",
            Self::Under => "under",
            Self::Off => "off",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SumClass {
    Balanced,
    Surplus,
    Deficit,
    NegativeTotal,
}

impl SumClass {
    pub fn of(total: f64) -> Self {
        if total < 0.0 {
            Self::NegativeTotal
        } else if total > 1.0 + EPSILON {
            Self::Surplus
        } else if total < 1.0 - EPSILON {
            Self::Deficit
        } else {
            Self::Balanced
        }
    }
}

impl fmt::Display for SumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Balanced => "balanced",
            Self::Surplus => "surplus",
            Self::Deficit => "deficit",
            Self::NegativeTotal => "negative-total",
        };
        f.write_str(s)
    }
}

/// Declared value interval `[lo, hi]` of a mass function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct MassRange {
    lo: f64,
    hi: f64,
}

impl MassRange {
    pub const CLASSICAL: MassRange = MassRange { lo: 0.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self, MassError> {
        if !lo.is_finite() || !hi.is_finite() || lo > 0.0 || hi < 1.0 || lo >= hi {
            return Err(MassError::InvalidRange { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// `[0, psi]` with `psi >= 1`.
    pub fn over(psi: f64) -> Result<Self, MassError> {
        Self::new(0.0, psi)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// The total a strictly valid mass on this range carries: `lo + hi`.
    pub fn target_sum(&self) -> f64 {
        self.lo + self.hi
    }

    pub fn contains(&self, w: f64) -> bool {
        self.lo <= w && w <= self.hi
    }

    pub fn class(&self) -> RangeClass {
        match (self.lo < 0.0, self.hi > 1.0) {
            (false, false) => RangeClass::Classical,
            (false, true) => RangeClass::Over,
            (true, false) => RangeClass::Under,
            (true, true) => RangeClass::Off,
        }
    }

    /// Smallest range covering both.
    pub fn union(&self, other: &MassRange) -> MassRange {
        MassRange {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

impl TryFrom<[f64; 2]> for MassRange {
    type Error = MassError;

    fn try_from([lo, hi]: [f64; 2]) -> Result<Self, Self::Error> {
        Self::new(lo, hi)
    }
}

impl From<MassRange> for [f64; 2] {
    fn from(r: MassRange) -> Self {
        [r.lo, r.hi]
    }
}

impl fmt::Display for MassRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

pub fn interval_union(r1: &MassRange, r2: &MassRange) -> MassRange {
    r1.union(r2)
}

/// Belief and plausibility of one query set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeliefInterval {
    pub bel: f64,
    pub pl: f64,
    /// Set when the mass has negative weights, so `bel <= pl` need not hold.
    pub signed: bool,
}

/// Weights over the powerset of a frame, with their declared range.
///
/// Sets that were never assigned carry weight 0. Entries iterate in ascending
/// bitmask order.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    weights: BTreeMap<FocalSet, f64>,
    range: MassRange,
}

impl MassFunction {
    /// Validated source mass. ∅ must carry no weight.
    pub fn new<I>(
        frame: Frame,
        assignments: I,
        range: MassRange,
        mode: Validation,
    ) -> Result<Self, MassError>
    where
        I: IntoIterator<Item = (FocalSet, f64)>,
    {
        let mut weights = BTreeMap::new();
        for (set, w) in assignments {
            if set.width() != frame.len() {
                return Err(MassError::ForeignFocal);
            }
            let focal = frame.render(set);
            if !w.is_finite() {
                return Err(MassError::NotFinite { focal });
            }
            if set.is_empty() {
                if w != 0.0 {
                    return Err(MassError::EmptySetWeight(w));
                }
                continue;
            }
            if !range.contains(w) {
                return Err(MassError::OutOfRange {
                    focal,
                    weight: w,
                    lo: range.lo,
                    hi: range.hi,
                });
            }
            if weights.insert(set, w).is_some() {
                return Err(MassError::DuplicateFocal(focal));
            }
        }
        let mass = Self {
            frame,
            weights,
            range,
        };
        if mode == Validation::Strict {
            let sum = mass.total();
            if (sum - range.target_sum()).abs() > EPSILON {
                return Err(MassError::SumMismatch {
                    sum,
                    expected: range.target_sum(),
                });
            }
        }
        Ok(mass)
    }

    /// Parses `(expression, weight)` pairs against the frame, then validates.
    pub fn from_labels<'a, I>(
        frame: &Frame,
        assignments: I,
        range: MassRange,
        mode: Validation,
    ) -> Result<Self, MassError>
    where
        I: IntoIterator<Item = (&'a str, f64)>,
    {
        let parsed = assignments
            .into_iter()
            .map(|(expr, w)| Ok((frame.parse_focal(expr)?, w)))
            .collect::<Result<Vec<_>, MassError>>()?;
        Self::new(frame.clone(), parsed, range, mode)
    }

    /// All weight on Θ.
    pub fn vacuous(frame: Frame) -> Self {
        let theta = frame.universe();
        Self {
            frame,
            weights: BTreeMap::from([(theta, 1.0)]),
            range: MassRange::CLASSICAL,
        }
    }

    /// A combination intermediate such as a conjunctive table with its
    /// conflict on ∅. Only finiteness and frame membership are checked;
    /// repeated sets accumulate.
    pub fn intermediate<I>(
        frame: Frame,
        assignments: I,
        range: MassRange,
    ) -> Result<Self, MassError>
    where
        I: IntoIterator<Item = (FocalSet, f64)>,
    {
        let mut weights = BTreeMap::new();
        for (set, w) in assignments {
            if set.width() != frame.len() {
                return Err(MassError::ForeignFocal);
            }
            if !w.is_finite() {
                return Err(MassError::NotFinite {
                    focal: frame.render(set),
                });
            }
            *weights.entry(set).or_insert(0.0) += w;
        }
        Ok(Self::from_parts(frame, weights, range))
    }

    /// Combination results: no bound or ∅ checks.
    pub(crate) fn from_parts(
        frame: Frame,
        weights: BTreeMap<FocalSet, f64>,
        range: MassRange,
    ) -> Self {
        Self {
            frame,
            weights,
            range,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn range(&self) -> MassRange {
        self.range
    }

    pub fn weight(&self, set: FocalSet) -> f64 {
        self.weights.get(&set).copied().unwrap_or(0.0)
    }

    /// Weight of a set given in `A|B` notation.
    pub fn weight_of(&self, expr: &str) -> Result<f64, MassError> {
        Ok(self.weight(self.frame.parse_focal(expr)?))
    }

    /// Declared entries, including zero weights, in bitmask order.
    pub fn entries(&self) -> impl Iterator<Item = (FocalSet, f64)> + '_ {
        self.weights.iter().map(|(&s, &w)| (s, w))
    }

    /// Entries with nonempty sets only.
    pub fn focal_entries(&self) -> impl Iterator<Item = (FocalSet, f64)> + '_ {
        self.entries().filter(|(s, _)| !s.is_empty())
    }

    /// Σ over all entries, ∅ included.
    pub fn total(&self) -> f64 {
        self.weights.values().sum()
    }

    /// Σ over nonempty sets.
    pub fn focal_total(&self) -> f64 {
        self.focal_entries().map(|(_, w)| w).sum()
    }

    /// Weight parked on ∅.
    pub fn conflict_weight(&self) -> f64 {
        self.weight(self.frame.empty_set())
    }

    pub fn has_negative(&self) -> bool {
        self.weights.values().any(|&w| w < 0.0)
    }

    pub fn negative_entries(&self) -> impl Iterator<Item = (FocalSet, f64)> + '_ {
        self.entries().filter(|(_, w)| *w < 0.0)
    }

    pub fn classify_range(&self) -> RangeClass {
        self.range.class()
    }

    pub fn classify_sum(&self) -> SumClass {
        SumClass::of(self.total())
    }

    /// Classical range and a total of 1.
    pub fn is_classical(&self) -> bool {
        self.classify_range() == RangeClass::Classical
            && self.classify_sum() == SumClass::Balanced
            && !self.has_negative()
    }

    /// Nonempty set with the largest weight; ties go to the smaller mask.
    pub fn argmax(&self) -> Option<FocalSet> {
        self.focal_entries()
            .fold(None, |best: Option<(FocalSet, f64)>, (s, w)| match best {
                Some((_, bw)) if bw >= w => best,
                _ => Some((s, w)),
            })
            .map(|(s, _)| s)
    }

    fn check_query(&self, a: FocalSet) -> Result<(), MassError> {
        if a.width() != self.frame.len() {
            return Err(MassError::ForeignFocal);
        }
        if a.is_empty() {
            return Err(MassError::EmptyQuery);
        }
        Ok(())
    }

    /// Σ m(X) over nonempty X ⊆ a.
    pub fn belief(&self, a: FocalSet) -> Result<f64, MassError> {
        self.check_query(a)?;
        Ok(self
            .focal_entries()
            .filter(|(x, _)| x.is_subset_of(a))
            .map(|(_, w)| w)
            .sum())
    }

    /// Σ m(X) over X with X ∩ a ≠ ∅.
    pub fn plausibility(&self, a: FocalSet) -> Result<f64, MassError> {
        self.check_query(a)?;
        Ok(self
            .entries()
            .filter(|(x, _)| x.intersects(a))
            .map(|(_, w)| w)
            .sum())
    }

    pub fn belief_interval(&self, a: FocalSet) -> Result<BeliefInterval, MassError> {
        Ok(BeliefInterval {
            bel: self.belief(a)?,
            pl: self.plausibility(a)?,
            signed: self.has_negative(),
        })
    }

    pub fn same_frame(&self, other: &MassFunction) -> bool {
        self.frame == other.frame
    }
}
