use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{Frame, FrameError};
use crate::mass::{MassError, MassFunction, MassRange, Validation};
use crate::rules::{Order, RuleId};

/// JSON scenario:
///
/// ```json
/// {"frame":["A","B"],
///  "sources":[{"name":"m1","range":[0,1.1],"masses":{"A":0.6,"B":0.3,"A|B":0.2}}],
///  "pipeline":{"rule":"pcr5","order":"redistribute-first","strict":true}}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDocument {
    pub frame: Vec<String>,
    pub sources: Vec<SourceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pipeline: Option<PipelineSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceSpec {
    pub name: String,
    pub range: [f64; 2],
    pub masses: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineSpec {
    pub rule: RuleId,
    #[serde(default)]
    pub order: Order,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<MassRange>,
    #[serde(default)]
    pub strict: bool,
    /// Defaults to on for pcr5 and total-proportional, off otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalize: Option<bool>,
}

impl PipelineSpec {
    pub fn new(rule: RuleId) -> Self {
        Self {
            rule,
            order: Order::default(),
            target: None,
            strict: false,
            normalize: None,
        }
    }

    pub fn normalizes(&self) -> bool {
        self.normalize
            .unwrap_or_else(|| self.rule.normalizes_by_default())
    }
}

impl Default for PipelineSpec {
    fn default() -> Self {
        Self::new(RuleId::Pcr5)
    }
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid frame: {0}")]
    Frame(#[from] FrameError),
    #[error("source `{name}`: {error}")]
    Source { name: String, error: MassError },
}

impl DocumentError {
    pub fn is_parse(&self) -> bool {
        matches!(self, Self::Parse { .. })
    }
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        Self::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Source {
    pub name: String,
    pub mass: MassFunction,
}

/// A parsed document with every source constructed and validated.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub document: ScenarioDocument,
    pub frame: Frame,
    pub sources: Vec<Source>,
}

impl Scenario {
    pub fn from_document(document: ScenarioDocument) -> Result<Self, DocumentError> {
        let frame = Frame::new(document.frame.iter().cloned())?;
        let mode = match document.pipeline {
            Some(p) if p.strict => Validation::Strict,
            _ => Validation::Lenient,
        };
        let sources = document
            .sources
            .iter()
            .map(|spec| {
                let build = || {
                    let range = MassRange::new(spec.range[0], spec.range[1])?;
                    MassFunction::from_labels(
                        &frame,
                        spec.masses.iter().map(|(k, &v)| (k.as_str(), v)),
                        range,
                        mode,
                    )
                };
                build()
                    .map(|mass| Source {
                        name: spec.name.clone(),
                        mass,
                    })
                    .map_err(|error| DocumentError::Source {
                        name: spec.name.clone(),
                        error,
                    })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            document,
            frame,
            sources,
        })
    }

    pub fn pipeline(&self) -> PipelineSpec {
        self.document.pipeline.unwrap_or_default()
    }

    pub fn masses(&self) -> Vec<MassFunction> {
        self.sources.iter().map(|s| s.mass.clone()).collect()
    }

    /// Union of all source ranges.
    pub fn range_union(&self) -> Option<MassRange> {
        self.sources
            .iter()
            .map(|s| s.mass.range())
            .reduce(|a, b| a.union(&b))
    }
}

pub fn load_document(bytes: &[u8]) -> Result<Scenario, DocumentError> {
    let document: ScenarioDocument = serde_json::from_slice(bytes)?;
    Scenario::from_document(document)
}

impl ScenarioDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}
