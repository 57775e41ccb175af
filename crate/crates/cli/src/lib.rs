//! Command dispatch and reporting for the `scf` tool.

pub mod args;
pub mod config;
pub mod report;

use std::time::Instant;

use scf_core::circle::{decide_scf_circle, normalize_weights, verify_witness_circle};
use scf_core::fusion::{fusion_counterexample, EmbeddingRule};
use scf_core::so3::{decide_scf_so3, search_open_question, verify_witness_so3, SpinSequence};
use scf_core::sympair::{
    build_witness_so_sum, catalog, classify_pair, equal_rank_instance, equal_rank_witness,
    verify_pair_witness, PairFamily, PairWitness, ScfStatus, DEFAULT_THETA,
};
use scf_core::{conjugate_in, ScfError, ScfVerdict};
use serde_json::{json, Value};
use thiserror::Error;

pub use config::{Command, OutputFormat, RunConfig};
pub use report::{Outcome, Report};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] ScfError),
    #[error("usage: {0}")]
    Usage(String),
    #[error("emitted witness failed re-verification: {0}")]
    Unverified(String),
    #[error("could not build worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 3 for engine refusals, 4 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(e) if e.is_refusal() => 3,
            CliError::Engine(_) | CliError::Usage(_) => 2,
            CliError::Unverified(_) | CliError::Pool(_) | CliError::Io(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "usage",
            3 => "refusal",
            _ => "internal",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}

const HOLDS_CAVEAT: &str =
    "a bounded search: holds means no failure below the stated bound, not a proof";

/// Runs one command on a worker pool of `config.workers` threads.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()?;
    let start = Instant::now();
    let mut report = pool.install(|| dispatch(&config.command))?;
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    if let Some(path) = &config.out_path {
        std::fs::write(path, report.to_json())?;
    }
    Ok(report)
}

fn new_report(command: &Command) -> Report {
    Report {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.name().to_string(),
        config: serde_json::to_value(command).expect("commands serialize"),
        outcome: Outcome::Holds,
        verdicts: Vec::new(),
        bound_disclaimers: Vec::new(),
        wall_time_ms: 0,
        text: Vec::new(),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("verdicts serialize")
}

fn dispatch(command: &Command) -> Result<Report, CliError> {
    let mut report = new_report(command);
    match command {
        Command::Circle { weights, m_max } => {
            let a = normalize_weights(weights)?;
            let bound = m_max.unwrap_or_else(|| a.default_bound());
            let verdict = decide_scf_circle(&a, bound)?;
            match &verdict {
                ScfVerdict::Fails(w) => {
                    if !verify_witness_circle(&a, w) {
                        return Err(CliError::Unverified(format!("{a}: {w:?}")));
                    }
                    report.outcome = Outcome::Fails;
                    report.text.push(format!(
                        "H{a} does not strongly control fusion in U({}): {}·a ≡ a (mod {}), permutation {:?}",
                        a.len(),
                        w.k,
                        w.m,
                        w.permutation
                    ));
                }
                ScfVerdict::Holds { bound } => {
                    report.text.push(format!(
                        "H{a} in U({}): SCF verified up to modulus {bound}",
                        a.len()
                    ));
                    report.bound_disclaimers.push(HOLDS_CAVEAT.to_string());
                }
            }
            report.verdicts.push(to_value(&verdict));
        }
        Command::So3 { spins, q_max } => {
            let a = SpinSequence::from_unsorted(spins.clone())?;
            let verdict = decide_scf_so3(&a, *q_max)?;
            let ambient = scf_core::so3::expand_profile(&a).ambient_group();
            match &verdict {
                ScfVerdict::Fails(w) => {
                    if !verify_witness_so3(&a, w) {
                        return Err(CliError::Unverified(format!("{a}: {w:?}")));
                    }
                    report.outcome = Outcome::Fails;
                    report.text.push(format!(
                        "spins {a} in {ambient}: rotations by {}/{q} and {}/{q} are fused but not SO(3)-conjugate",
                        w.p,
                        w.p_prime,
                        q = w.q
                    ));
                }
                ScfVerdict::Holds { bound } => {
                    report.text.push(format!(
                        "spins {a} in {ambient}: SCF verified up to denominator {bound}"
                    ));
                    report.bound_disclaimers.push(HOLDS_CAVEAT.to_string());
                }
            }
            report.verdicts.push(to_value(&verdict));
        }
        Command::So3Search { sum_max, q_max } => {
            let entries = search_open_question(*sum_max, *q_max)?;
            for e in &entries {
                let line = match &e.verdict {
                    ScfVerdict::Fails(w) => {
                        if !verify_witness_so3(&e.spins, w) {
                            return Err(CliError::Unverified(format!("{}: {w:?}", e.spins)));
                        }
                        format!(
                            "{:<16} fails  q={} p={} p'={}",
                            e.spins.to_string(),
                            w.q,
                            w.p,
                            w.p_prime
                        )
                    }
                    ScfVerdict::Holds { bound } => {
                        format!("{:<16} holds  up to q={bound}", e.spins.to_string())
                    }
                };
                report.text.push(line);
                report.verdicts.push(to_value(e));
            }
            report.bound_disclaimers.push(format!(
                "sequences marked holds were only checked for rotation denominators up to {q_max}"
            ));
            if entries.iter().any(|e| !e.verdict.holds()) {
                report.outcome = Outcome::Fails;
            }
        }
        Command::WeylConj { x, y } => {
            let group = x.group();
            let conjugate = conjugate_in(x, y, group)?;
            let (cx, cy) = (x.canonical_form(), y.canonical_form());
            report.text.push(format!("x: {x}\n   canonical {cx}"));
            report.text.push(format!("y: {y}\n   canonical {cy}"));
            report
                .text
                .push(format!("conjugate in {group}: {conjugate}"));
            report.verdicts.push(json!({
                "conjugate": conjugate,
                "x_canonical": cx,
                "y_canonical": cy,
            }));
            if !conjugate {
                report.outcome = Outcome::QueryFalse;
            }
        }
        Command::Fusion { sub, amb, embed, q } => {
            let rule = match embed {
                Some(r) => *r,
                None => EmbeddingRule::infer(*sub, *amb)?,
            };
            let verdict = match fusion_counterexample(*sub, *amb, rule, *q)? {
                Some(w) => {
                    let ex = rule.embed(&w.x, *amb)?;
                    let ey = rule.embed(&w.y, *amb)?;
                    if !conjugate_in(&ex, &ey, *amb)? || conjugate_in(&w.x, &w.y, *sub)? {
                        return Err(CliError::Unverified(format!("{} / {}", w.x, w.y)));
                    }
                    report.outcome = Outcome::Fails;
                    report.text.push(format!(
                        "{sub} in {amb}: {} and {} are fused in {amb} but not in {sub}",
                        w.x, w.y
                    ));
                    ScfVerdict::Fails(w)
                }
                None => {
                    report.text.push(format!(
                        "{sub} in {amb}: no fusion failure among {q}-torsion elements"
                    ));
                    report.bound_disclaimers.push(format!(
                        "only torus elements with turns in (1/{q})Z were compared"
                    ));
                    ScfVerdict::Holds { bound: *q as u64 }
                }
            };
            report.verdicts.push(to_value(&verdict));
        }
        Command::SympairList => {
            for row in catalog() {
                report.text.push(format!(
                    "{:<24} {:<38} {:<20} any H: {:<26} connected H: {}",
                    row.name,
                    row.pair,
                    row.params,
                    row.status.to_string(),
                    row.connected_status
                ));
                report.verdicts.push(to_value(&row));
            }
        }
        Command::Sympair { family, theta } => {
            let case = classify_pair(*family)?;
            report.text.push(format!(
                "{}: any H {}, connected H {}",
                case.label, case.status, case.connected_status
            ));
            let witness = sympair_witness(family, *theta)?;
            let mut entry = to_value(&case);
            if let Some(w) = witness {
                let check = verify_pair_witness(&w);
                if !check.is_counterexample() {
                    return Err(CliError::Unverified(format!("{} / {}", w.x, w.y)));
                }
                report.outcome = Outcome::Fails;
                report.text.push(format!("  X = {}\n  Y = {}", w.x, w.y));
                report.text.push(format!(
                    "  conjugate in {}: {}, conjugate in the subgroup: {}",
                    w.ambient, check.ambient_conjugate, check.subgroup_conjugate
                ));
                entry["witness"] = to_value(&w);
                entry["verification"] = to_value(&check);
            }
            if report.outcome != Outcome::Fails && matches!(case.status, ScfStatus::NotScf(_)) {
                report.outcome = Outcome::Fails;
                report.bound_disclaimers.push(
                    "verdict taken from the classification; no explicit witness is computed for this pair"
                        .into(),
                );
            }
            report.verdicts.push(entry);
        }
    }
    Ok(report)
}

fn sympair_witness(
    family: &PairFamily,
    theta: Option<scf_core::Turn>,
) -> Result<Option<PairWitness>, CliError> {
    match *family {
        PairFamily::SoSumOdd { p, q } => Ok(Some(build_witness_so_sum(
            p,
            q,
            theta.unwrap_or(DEFAULT_THETA),
        )?)),
        PairFamily::EqualRank(kind) => match equal_rank_instance(kind) {
            Ok((ambient, sub)) => Ok(Some(equal_rank_witness(ambient, &sub)?)),
            Err(ScfError::NoWitness(_)) => Ok(None),
            Err(e) => Err(e.into()),
        },
        _ => Ok(None),
    }
}
