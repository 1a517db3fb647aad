//! Evidence combination over a frame of discernment.
//!
//! Besides classical Dempster-Shafer masses this crate handles masses whose
//! weights live in an extended range `[lo, hi]` with `lo <= 0` and `hi >= 1`:
//! over-masses (`hi > 1`), under-masses (`lo < 0`) and off-masses (both).
//!
//! ```
//! use overmass::{Frame, MassFunction, MassRange, Validation};
//! use overmass::rules::{fuse, FuseOptions, RuleId};
//!
//! let frame = Frame::new(["A", "B"]).unwrap();
//! let m1 = MassFunction::from_labels(&frame, [("A", 0.7), ("B", 0.3), ("A|B", 0.1)],
//!     MassRange::over(1.1).unwrap(), Validation::Strict).unwrap();
//! let m2 = MassFunction::from_labels(&frame, [("A", 0.4), ("B", 0.6), ("A|B", 0.2)],
//!     MassRange::over(1.2).unwrap(), Validation::Strict).unwrap();
//!
//! let report = fuse(&m1, &m2, &FuseOptions::new(RuleId::Pcr5)).unwrap();
//! assert!((report.result.total() - 1.2).abs() < 1e-9);
//! assert!((report.result.weight_of("A").unwrap() - 0.686).abs() < 1e-3);
//! ```

pub mod cli_io;
pub mod frame;
pub mod mass;
pub mod regime;
pub mod rules;

pub use frame::{FocalSet, Frame, FrameError};
pub use mass::{
    interval_union, BeliefInterval, MassError, MassFunction, MassRange, RangeClass, SumClass,
    Validation, EPSILON,
};
pub use regime::{assess, assess_fusion, assess_sources, Advisory, AdvisoryKind};
pub use rules::{fuse, FuseOptions, FusionError, FusionReport, Order, RuleId};
