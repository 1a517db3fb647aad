//! Scenario documents, pipeline execution, table rendering and the bundled
//! worked examples behind the command-line tool.

mod document;
mod golden;
mod pipeline;
mod render;

use thiserror::Error;

use crate::frame::FrameError;
use crate::mass::MassError;
use crate::rules::FusionError;

pub use document::{
    load_document, DocumentError, PipelineSpec, Scenario, ScenarioDocument, Source, SourceSpec,
};
pub use golden::{
    paper_examples, GoldenCase, GoldenCheck, GoldenReport, DIRECTORS_MIXED_INTERVALS,
    DIRECTORS_TOTAL_PROPORTIONAL, DIRECTORS_UNDER_AVERAGE, SUSPECTS_PCR5,
};
pub use pipeline::{run_pipeline, run_with};
pub use render::{format_value, render_csv, render_table, table_cells};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VALIDATION: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const GUARD: i32 = 3;
    pub const GOLDEN_MISMATCH: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {error}")]
    Io { path: String, error: std::io::Error },
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Mass(#[from] MassError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("worked examples do not match their reference values")]
    GoldenMismatch,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } | Self::Argument(_) => exit::PARSE,
            Self::Document(e) if e.is_parse() => exit::PARSE,
            Self::Fusion(e) if e.is_guard() => exit::GUARD,
            Self::GoldenMismatch => exit::GOLDEN_MISMATCH,
            Self::Document(_) | Self::Fusion(_) | Self::Mass(_) | Self::Frame(_) => {
                exit::VALIDATION
            }
        }
    }
}
