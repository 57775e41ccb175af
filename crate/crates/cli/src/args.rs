//! Clap front end; converts parsed flags into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use scf_core::fusion::EmbeddingRule;
use scf_core::sympair::{PairFamily, PairParams};
use scf_core::turn::parse_turns;
use scf_core::{GroupTag, TorusElement, Turn};

use crate::config::{Command, OutputFormat, RunConfig};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "scf",
    version,
    about = "Fusion control checks for compact classical groups"
)]
pub struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the searches.
    #[arg(long, global = true, env = "SCF_WORKERS")]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Circle subgroup H(a) of U(n).
    Circle {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<i64>,
        /// Largest modulus to scan (default n·(max a)²).
        #[arg(long)]
        m_max: Option<u64>,
    },
    /// Sum of irreducible SO(3) representations.
    So3 {
        #[arg(long, value_delimiter = ',', required = true)]
        spins: Vec<u32>,
        #[arg(long, default_value_t = 200)]
        q_max: u64,
    },
    /// Classify every spin sequence up to a total.
    So3Search {
        #[arg(long)]
        sum_max: u32,
        #[arg(long, default_value_t = 200)]
        q_max: u64,
    },
    /// Are two torus elements conjugate?
    WeylConj(WeylConjArgs),
    /// Exhaustive torsion fusion check for a torus embedding.
    Fusion {
        #[arg(long, num_args = 2, value_names = ["FAMILY", "N"], required = true)]
        sub: Vec<String>,
        #[arg(long, num_args = 2, value_names = ["FAMILY", "N"], required = true)]
        amb: Vec<String>,
        #[arg(long, default_value_t = 6)]
        q: u32,
        /// identity, append-zero-turn or same-turns (inferred when omitted).
        #[arg(long)]
        embed: Option<String>,
    },
    /// Symmetric pair catalog and witnesses.
    Sympair(SympairArgs),
}

#[derive(Debug, Args)]
pub struct WeylConjArgs {
    /// Group as family and size, e.g. `so 4`, `u 3`, `sp 2`.
    #[arg(long, num_args = 2, value_names = ["FAMILY", "N"])]
    pub group: Option<Vec<String>>,
    /// Comma separated turns, or a JSON torus element.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
}

#[derive(Debug, Args)]
pub struct SympairArgs {
    #[arg(long, conflicts_with = "family")]
    pub list: bool,
    #[arg(long, required_unless_present = "list")]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    /// Exceptional equal-rank pair name, e.g. `f4-b4`.
    #[arg(long)]
    pub pair: Option<String>,
    #[arg(long)]
    pub theta: Option<String>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn group_from(words: &[String]) -> Result<GroupTag, CliError> {
    match words {
        [family, n] => Ok(GroupTag::parse_named(family, n)?),
        _ => Err(usage("a group is given as FAMILY N")),
    }
}

fn element_from(raw: &str, group: Option<GroupTag>) -> Result<TorusElement, CliError> {
    let raw = raw.trim();
    if raw.starts_with('{') {
        let x: TorusElement =
            serde_json::from_str(raw).map_err(|e| usage(format!("bad torus element JSON: {e}")))?;
        return Ok(x);
    }
    let group = group.ok_or_else(|| usage("--group is required unless elements are JSON"))?;
    Ok(TorusElement::new(parse_turns(raw)?, group)?)
}

fn pair_family(a: &SympairArgs) -> Result<PairFamily, CliError> {
    let name = a.family.as_deref().unwrap_or_default();
    let params = PairParams {
        n: a.n,
        p: a.p,
        q: a.q,
        pair: a.pair.as_deref(),
    };
    Ok(PairFamily::from_name(name, params)?)
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let command = match self.command {
            Sub::Circle { weights, m_max } => Command::Circle { weights, m_max },
            Sub::So3 { spins, q_max } => Command::So3 { spins, q_max },
            Sub::So3Search { sum_max, q_max } => Command::So3Search { sum_max, q_max },
            Sub::WeylConj(a) => {
                let group = a.group.as_deref().map(group_from).transpose()?;
                let x = element_from(&a.x, group)?;
                let y = element_from(&a.y, group.or(Some(x.group())))?;
                if x.group() != y.group() {
                    return Err(usage(format!(
                        "group mismatch: {} vs {}",
                        x.group(),
                        y.group()
                    )));
                }
                Command::WeylConj { x, y }
            }
            Sub::Fusion { sub, amb, q, embed } => {
                let embed = embed
                    .map(|e| {
                        serde_json::from_value::<EmbeddingRule>(e.clone().into())
                            .map_err(|_| usage(format!("unknown embedding {e:?}")))
                    })
                    .transpose()?;
                Command::Fusion {
                    sub: group_from(&sub)?,
                    amb: group_from(&amb)?,
                    embed,
                    q,
                }
            }
            Sub::Sympair(a) if a.list => Command::SympairList,
            Sub::Sympair(a) => {
                let theta = a.theta.as_deref().map(str::parse::<Turn>).transpose()?;
                Command::Sympair {
                    family: pair_family(&a)?,
                    theta,
                }
            }
        };
        let workers = self
            .workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        if workers == 0 {
            return Err(usage("--workers must be at least 1"));
        }
        Ok(RunConfig {
            command,
            output: if self.json {
                OutputFormat::Json
            } else {
                OutputFormat::Text
            },
            workers,
            out_path: self.out,
        })
    }
}
