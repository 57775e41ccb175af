use std::path::PathBuf;

use scf_core::fusion::EmbeddingRule;
use scf_core::sympair::PairFamily;
use scf_core::{GroupTag, TorusElement, Turn};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    Circle {
        weights: Vec<i64>,
        /// `None` selects the default `n · (max a)²`.
        m_max: Option<u64>,
    },
    So3 {
        spins: Vec<u32>,
        q_max: u64,
    },
    So3Search {
        sum_max: u32,
        q_max: u64,
    },
    WeylConj {
        x: TorusElement,
        y: TorusElement,
    },
    Fusion {
        sub: GroupTag,
        amb: GroupTag,
        embed: Option<EmbeddingRule>,
        q: u32,
    },
    SympairList,
    Sympair {
        family: PairFamily,
        theta: Option<Turn>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Circle { .. } => "circle",
            Command::So3 { .. } => "so3",
            Command::So3Search { .. } => "so3-search",
            Command::WeylConj { .. } => "weyl-conj",
            Command::Fusion { .. } => "fusion",
            Command::SympairList | Command::Sympair { .. } => "sympair",
        }
    }
}

/// Everything [`crate::run`] needs. `workers` only affects speed, never output.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub output: OutputFormat,
    pub workers: usize,
    pub out_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            output: OutputFormat::Text,
            workers: 1,
            out_path: None,
        }
    }
}
