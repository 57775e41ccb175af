//! Fusion control for `⊕_j ρ_{a_j}: SO(3) -> SO(N)`.
//!
//! A rotation by θ maps to rotation blocks with angles `c·θ` for every
//! coefficient `c` in `⊎_j {1, ..., a_j}`, plus one fixed vector per summand.
//! Every profile has at least one fixed vector, so the image always has a
//! `+1` eigenvalue beyond the rotation blocks: in type B there is no chirality
//! at all, and in type D (even N, hence at least two summands) a zero turn
//! absorbs it. Ambient conjugacy of two image elements is therefore equality
//! of the folded multisets `{fold(c·θ)}`. In SO(3) itself `θ ~ φ` iff
//! `φ ≡ ±θ`.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ScfError};
use crate::group::GroupTag;
use crate::torus::{conjugate_in, TorusElement};
use crate::turn::Turn;
use crate::verdict::ScfVerdict;

/// Non-decreasing positive spins, one per irreducible summand.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct SpinSequence(Vec<u32>);

impl SpinSequence {
    pub fn new(spins: Vec<u32>) -> Result<Self> {
        if spins.is_empty() {
            return Err(ScfError::invalid("spin sequence is empty"));
        }
        if spins.contains(&0) {
            return Err(ScfError::invalid("spins must be positive"));
        }
        if spins.windows(2).any(|w| w[0] > w[1]) {
            return Err(ScfError::invalid(format!(
                "{spins:?} is not non-decreasing"
            )));
        }
        Ok(SpinSequence(spins))
    }

    /// Sorts before validating.
    pub fn from_unsorted(mut spins: Vec<u32>) -> Result<Self> {
        spins.sort_unstable();
        Self::new(spins)
    }

    pub fn spins(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<u32>> for SpinSequence {
    type Error = ScfError;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        SpinSequence::new(v)
    }
}

impl From<SpinSequence> for Vec<u32> {
    fn from(s: SpinSequence) -> Self {
        s.0
    }
}

impl fmt::Display for SpinSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleProfile {
    /// Rotation-block multipliers, summand by summand, each listed
    /// `a_j, a_j - 1, ..., 1`.
    pub coefficients: Vec<i64>,
    pub fixed_count: usize,
    pub ambient_dim: usize,
}

impl AngleProfile {
    pub fn ambient_group(&self) -> GroupTag {
        GroupTag::special_orthogonal(self.ambient_dim).expect("ambient dimension is at least 3")
    }
}

pub fn expand_profile(a: &SpinSequence) -> AngleProfile {
    let coefficients: Vec<i64> = a
        .spins()
        .iter()
        .flat_map(|&s| (1..=s as i64).rev())
        .collect();
    let fixed_count = a.spins().len();
    AngleProfile {
        ambient_dim: 2 * coefficients.len() + fixed_count,
        coefficients,
        fixed_count,
    }
}

/// The image of the SO(3) rotation by `theta` in the ambient torus.
pub fn image_element(a: &SpinSequence, theta: Turn) -> TorusElement {
    let profile = expand_profile(a);
    let group = profile.ambient_group();
    let mut turns: Vec<Turn> = profile
        .coefficients
        .iter()
        .map(|&c| theta.scale(c))
        .collect();
    turns.resize(group.rank(), Turn::ZERO);
    TorusElement::new(turns, group).expect("image has the ambient rank")
}

/// Rotations by `p/q` and `p_prime/q` that are fused in SO(N) but not in SO(3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct So3Witness {
    pub q: i64,
    pub p: i64,
    pub p_prime: i64,
}

/// Folded coefficient numerators `min(c·p mod q, q - c·p mod q)`, sorted.
fn folded_signature(coefficients: &[i64], p: i64, q: i64) -> Vec<i64> {
    let mut sig: Vec<i64> = coefficients
        .iter()
        .map(|&c| {
            let r = (c * p).rem_euclid(q);
            r.min(q - r)
        })
        .collect();
    sig.sort_unstable();
    sig
}

fn same_in_so3(p: i64, p_prime: i64, q: i64) -> bool {
    (p - p_prime).rem_euclid(q) == 0 || (p + p_prime).rem_euclid(q) == 0
}

/// First witness at a fixed denominator, in `(p, p')` order.
fn witness_at(coefficients: &[i64], q: i64) -> Option<So3Witness> {
    let mut buckets: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let signatures: Vec<Vec<i64>> = (1..q)
        .map(|p| folded_signature(coefficients, p, q))
        .collect();
    for (p, sig) in (1..q).zip(&signatures) {
        buckets.entry(sig.clone()).or_default().push(p);
    }
    (1..q).zip(&signatures).find_map(|(p, sig)| {
        buckets[sig]
            .iter()
            .find(|&&pp| !same_in_so3(p, pp, q))
            .map(|&p_prime| So3Witness { q, p, p_prime })
    })
}

/// Scans `q = 3..=q_max` and reports the first `(q, p, p')` in lexicographic
/// order whose image elements are SO(N)-conjugate while `p' ≢ ±p (mod q)`.
pub fn decide_scf_so3(a: &SpinSequence, q_max: u64) -> Result<ScfVerdict<So3Witness>> {
    if q_max < 3 {
        return Err(ScfError::invalid("q_max must be at least 3"));
    }
    let coefficients = expand_profile(a).coefficients;
    let found = (3..=q_max as i64)
        .into_par_iter()
        .find_map_first(|q| witness_at(&coefficients, q));
    Ok(match found {
        Some(w) => ScfVerdict::Fails(w),
        None => ScfVerdict::Holds { bound: q_max },
    })
}

/// Re-derives a witness through the torus conjugacy test.
pub fn verify_witness_so3(a: &SpinSequence, w: &So3Witness) -> bool {
    let So3Witness { q, p, p_prime } = *w;
    if q < 3 || !(0 < p && p < q) || !(0 < p_prime && p_prime < q) {
        return false;
    }
    if same_in_so3(p, p_prime, q) {
        return false;
    }
    let x = image_element(a, Turn::frac(p, q));
    let y = image_element(a, Turn::frac(p_prime, q));
    conjugate_in(&x, &y, x.group()).unwrap_or(false)
}

/// Every non-decreasing spin sequence with sum at most `sum_max`, ordered by
/// sum and then lexicographically.
pub fn spin_sequences(sum_max: u32) -> Vec<SpinSequence> {
    fn extend(prefix: &mut Vec<u32>, min: u32, remaining: u32, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for next in min..=remaining {
            prefix.push(next);
            extend(prefix, next, remaining - next, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 1..=sum_max {
        let mut seqs = Vec::new();
        extend(&mut Vec::new(), 1, total, &mut seqs);
        seqs.sort();
        out.extend(seqs.into_iter().map(SpinSequence));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchEntry {
    pub spins: SpinSequence,
    #[serde(flatten)]
    pub verdict: ScfVerdict<So3Witness>,
}

/// Classifies every spin sequence with `Σ a_j ≤ sum_max` up to `q_max`.
pub fn search_open_question(sum_max: u32, q_max: u64) -> Result<Vec<SearchEntry>> {
    if sum_max == 0 {
        return Err(ScfError::invalid("sum_max must be at least 1"));
    }
    spin_sequences(sum_max)
        .into_iter()
        .map(|spins| {
            let verdict = decide_scf_so3(&spins, q_max)?;
            Ok(SearchEntry { spins, verdict })
        })
        .collect()
}
