//! Frame of discernment and subset algebra over its powerset.
//!
//! Subsets are stored as bitmasks: bit `i` set means the `i`-th label of the
//! frame is a member. The all-zero mask is the empty set, which is kept
//! representable because combined masses park their conflict on it.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Separator used in text notation for unions, e.g. `A|B`.
pub const SEPARATOR: char = '|';

/// Label used when rendering the empty set.
pub const EMPTY_SYMBOL: &str = "∅";

/// Largest supported frame. 2^16 subsets still fit comfortably in memory and
/// every mask fits in one machine word.
pub const MAX_FRAME_SIZE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("a frame needs at least 2 elements, got {0}")]
    TooFew(usize),
    #[error("frame has {size} elements, limit is {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error(
        "invalid label `{0}`: labels must be nonempty, trimmed, and must not contain `|` or be `∅`"
    )]
    InvalidLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("empty focal expression")]
    EmptyExpression,
    #[error("focal sets belong to different frames")]
    FrameMismatch,
}

/// An ordered set of mutually exclusive hypotheses.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    labels: Arc<[String]>,
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self, FrameError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(FrameError::TooFew(labels.len()));
        }
        if labels.len() > MAX_FRAME_SIZE {
            return Err(FrameError::TooLarge {
                size: labels.len(),
                limit: MAX_FRAME_SIZE,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty()
                || label.trim() != label
                || label.contains(SEPARATOR)
                || label == EMPTY_SYMBOL
            {
                return Err(FrameError::InvalidLabel(label.clone()));
            }
            if labels[..i].contains(label) {
                return Err(FrameError::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; a frame has at least two elements.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn full_mask(&self) -> u32 {
        (1u32 << self.len()) - 1
    }

    pub fn empty_set(&self) -> FocalSet {
        FocalSet::new(0, self.len())
    }

    /// Θ itself.
    pub fn universe(&self) -> FocalSet {
        FocalSet::new(self.full_mask(), self.len())
    }

    pub fn singleton(&self, index: usize) -> Option<FocalSet> {
        (index < self.len()).then(|| FocalSet::new(1 << index, self.len()))
    }

    /// Builds a focal set from a raw mask, rejecting bits outside the frame.
    pub fn focal_from_bits(&self, bits: u32) -> Option<FocalSet> {
        (bits & !self.full_mask() == 0).then(|| FocalSet::new(bits, self.len()))
    }

    /// Parses `A|B|C` style notation. Whitespace around labels is ignored.
    pub fn parse_focal(&self, expr: &str) -> Result<FocalSet, FrameError> {
        if expr.trim().is_empty() {
            return Err(FrameError::EmptyExpression);
        }
        let mut bits = 0u32;
        for part in expr.split(SEPARATOR) {
            let label = part.trim();
            if label.is_empty() {
                return Err(FrameError::EmptyExpression);
            }
            let index = self
                .index_of(label)
                .ok_or_else(|| FrameError::UnknownLabel(label.to_owned()))?;
            bits |= 1 << index;
        }
        Ok(FocalSet::new(bits, self.len()))
    }

    /// Renders a focal set with its labels in frame order.
    pub fn render(&self, set: FocalSet) -> String {
        if set.is_empty() {
            return EMPTY_SYMBOL.to_owned();
        }
        set.members()
            .map(|i| self.labels[i].as_str())
            .collect::<Vec<_>>()
            .join("|")
    }

    /// All 2^n subsets, ascending by bitmask, starting with ∅.
    pub fn powerset(&self) -> Result<Vec<FocalSet>, FrameError> {
        self.powerset_limited(MAX_FRAME_SIZE)
    }

    pub fn powerset_limited(&self, limit: usize) -> Result<Vec<FocalSet>, FrameError> {
        if self.len() > limit {
            return Err(FrameError::TooLarge {
                size: self.len(),
                limit,
            });
        }
        Ok((0..=self.full_mask())
            .map(|bits| FocalSet::new(bits, self.len()))
            .collect())
    }
}

/// A subset of a frame in canonical bitmask form.
///
/// Ordering is by width first, then by mask, so sets of one frame sort in
/// ascending bitmask order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FocalSet {
    width: u8,
    bits: u32,
}

impl FocalSet {
    fn new(bits: u32, width: usize) -> Self {
        Self {
            width: width as u8,
            bits,
        }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn cardinality(self) -> u32 {
        self.bits.count_ones()
    }

    /// Indices of member elements, ascending.
    pub fn members(self) -> impl Iterator<Item = usize> {
        (0..self.width()).filter(move |i| self.bits & (1 << i) != 0)
    }

    pub fn is_subset_of(self, other: FocalSet) -> bool {
        self.width == other.width && self.bits & !other.bits == 0
    }

    pub fn intersects(self, other: FocalSet) -> bool {
        self.width == other.width && self.bits & other.bits != 0
    }

    pub fn intersect(self, other: FocalSet) -> Result<FocalSet, FrameError> {
        self.check_width(other)?;
        Ok(Self::new(self.bits & other.bits, self.width()))
    }

    pub fn unite(self, other: FocalSet) -> Result<FocalSet, FrameError> {
        self.check_width(other)?;
        Ok(Self::new(self.bits | other.bits, self.width()))
    }

    fn check_width(self, other: FocalSet) -> Result<(), FrameError> {
        if self.width == other.width {
            Ok(())
        } else {
            Err(FrameError::FrameMismatch)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Frame {
        Frame::new(["A", "B"]).unwrap()
    }

    #[test]
    fn builds_frames() {
        assert_eq!(ab().len(), 2);
        assert_eq!(Frame::new(["θ1", "θ2", "θ3"]).unwrap().len(), 3);
    }

    #[test]
    fn rejects_bad_frames() {
        assert_eq!(
            Frame::new(["A", "A"]),
            Err(FrameError::DuplicateLabel("A".into()))
        );
        assert_eq!(Frame::new(["A"]), Err(FrameError::TooFew(1)));
        assert_eq!(
            Frame::new(["A|B", "C"]),
            Err(FrameError::InvalidLabel("A|B".into()))
        );
        assert!(matches!(
            Frame::new(["", "C"]),
            Err(FrameError::InvalidLabel(_))
        ));
        assert!(matches!(
            Frame::new(" A B".split(' ')),
            Err(FrameError::InvalidLabel(_))
        ));
        let many: Vec<String> = (0..17).map(|i| format!("t{i}")).collect();
        assert!(matches!(
            Frame::new(many),
            Err(FrameError::TooLarge { size: 17, .. })
        ));
    }

    #[test]
    fn parses_focal_expressions() {
        let f = ab();
        assert_eq!(f.parse_focal("A|B").unwrap(), f.universe());
        assert_eq!(f.parse_focal(" B | A ").unwrap(), f.universe());
        assert_eq!(f.parse_focal("B").unwrap(), f.singleton(1).unwrap());
        assert_eq!(
            f.parse_focal("C"),
            Err(FrameError::UnknownLabel("C".into()))
        );
        assert_eq!(f.parse_focal(""), Err(FrameError::EmptyExpression));
        assert_eq!(f.parse_focal("A|"), Err(FrameError::EmptyExpression));
    }

    #[test]
    fn render_uses_frame_order() {
        let f = Frame::new(["A", "B", "C"]).unwrap();
        assert_eq!(f.render(f.parse_focal("C|A").unwrap()), "A|C");
        assert_eq!(f.render(f.empty_set()), "∅");
    }

    #[test]
    fn set_algebra() {
        let f = ab();
        let a = f.parse_focal("A").unwrap();
        let b = f.parse_focal("B").unwrap();
        let ab = f.universe();
        let empty = f.empty_set();

        assert_eq!(a.intersect(b).unwrap(), empty);
        assert_eq!(a.intersect(ab).unwrap(), a);
        assert_eq!(ab.intersect(ab).unwrap(), ab);

        assert_eq!(a.unite(b).unwrap(), ab);
        assert_eq!(a.unite(empty).unwrap(), a);
        assert_eq!(ab.unite(b).unwrap(), ab);

        let other = Frame::new(["x", "y", "z"]).unwrap().universe();
        assert_eq!(a.intersect(other), Err(FrameError::FrameMismatch));
        assert_eq!(a.unite(other), Err(FrameError::FrameMismatch));
    }

    #[test]
    fn powerset_sizes() {
        let f = ab();
        let sets = f.powerset().unwrap();
        let rendered: Vec<_> = sets.iter().map(|&s| f.render(s)).collect();
        assert_eq!(rendered, ["∅", "A", "B", "A|B"]);

        assert_eq!(
            Frame::new(["a", "b", "c"])
                .unwrap()
                .powerset()
                .unwrap()
                .len(),
            8
        );
        let twelve: Vec<String> = (0..12).map(|i| format!("t{i}")).collect();
        assert_eq!(Frame::new(twelve).unwrap().powerset().unwrap().len(), 4096);

        let four = Frame::new(["a", "b", "c", "d"]).unwrap();
        assert!(matches!(
            four.powerset_limited(3),
            Err(FrameError::TooLarge { size: 4, limit: 3 })
        ));
    }

    #[test]
    fn focal_from_bits_checks_width() {
        let f = ab();
        assert!(f.focal_from_bits(0b11).is_some());
        assert!(f.focal_from_bits(0b100).is_none());
    }
}
