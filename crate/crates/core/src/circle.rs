//! Fusion control for circle subgroups `H(a) = {diag(z^a_1, ..., z^a_n)}` of U(n).
//!
//! `H(a)` fails to control fusion exactly when some `m > k > 1` makes
//! `k·a ≡ a (mod m)` as multisets: then `z = e^{2πi/m}` and `w = z^k` are
//! distinct but `h(z)` and `h(w)` have the same eigenvalues. No general bound
//! on the smallest such `m` is known, so [`decide_scf_circle`] scans up to a
//! caller-supplied bound and says so in its verdict.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ScfError};
use crate::group::GroupTag;
use crate::torus::{conjugate_in, TorusElement};
use crate::turn::Turn;
use crate::verdict::ScfVerdict;

/// Non-decreasing non-negative weights whose nonzero entries have gcd 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct WeightSequence(Vec<i64>);

impl WeightSequence {
    /// Accepts only sequences already in normal form.
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        let normal = normalize_weights(&weights)?;
        if normal.0 != weights {
            return Err(ScfError::invalid(format!(
                "{weights:?} is not normalized (expected {:?})",
                normal.0
            )));
        }
        Ok(normal)
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> i64 {
        *self.0.last().expect("weight sequences are nonempty")
    }

    /// Default scan bound `n · (max a)²`, at least 3.
    pub fn default_bound(&self) -> u64 {
        let m = self.max() as u64;
        (self.len() as u64 * m * m).max(3)
    }

    /// `h(e^{2πi·p/m})` as a U(n) torus element.
    pub fn realize(&self, p: i64, m: i64) -> Result<TorusElement> {
        let group = GroupTag::unitary(self.len())?;
        let turns = self.0.iter().map(|&a| Turn::frac(a * p, m)).collect();
        TorusElement::new(turns, group)
    }
}

impl TryFrom<Vec<i64>> for WeightSequence {
    type Error = ScfError;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        WeightSequence::new(v)
    }
}

impl From<WeightSequence> for Vec<i64> {
    fn from(w: WeightSequence) -> Self {
        w.0
    }
}

impl fmt::Display for WeightSequence {
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

/// Sorts and divides out the gcd of the nonzero entries.
pub fn normalize_weights(raw: &[i64]) -> Result<WeightSequence> {
    if raw.is_empty() {
        return Err(ScfError::invalid("weight sequence is empty"));
    }
    if let Some(neg) = raw.iter().find(|&&a| a < 0) {
        return Err(ScfError::invalid(format!("negative weight {neg}")));
    }
    let g = raw.iter().fold(0i64, |g, &a| g.gcd(&a));
    if g == 0 {
        return Err(ScfError::invalid("all weights are zero"));
    }
    let mut w: Vec<i64> = raw.iter().map(|a| a / g).collect();
    w.sort_unstable();
    Ok(WeightSequence(w))
}

/// `(m, k)` with `k·a ≡ a (mod m)` as multisets; `permutation[i] = j` means
/// `k·a_i ≡ a_j (mod m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceWitness {
    pub m: i64,
    pub k: i64,
    pub permutation: Vec<usize>,
}

fn sorted_residues(a: &[i64], k: i64, m: i64) -> Vec<i64> {
    let mut r: Vec<i64> = a.iter().map(|x| (k * x).rem_euclid(m)).collect();
    r.sort_unstable();
    r
}

/// A matching `σ` with `k·a_i ≡ a_σ(i) (mod m)`, if the multisets agree.
/// Ties are broken by taking the lowest unused index.
pub fn residue_matching(a: &[i64], k: i64, m: i64) -> Option<Vec<usize>> {
    let mut used = vec![false; a.len()];
    a.iter()
        .map(|&x| {
            let target = (k * x).rem_euclid(m);
            let j = (0..a.len()).find(|&j| !used[j] && a[j].rem_euclid(m) == target)?;
            used[j] = true;
            Some(j)
        })
        .collect()
}

/// The first `(m, k)` in lexicographic order with `3 ≤ m ≤ m_max`,
/// `2 ≤ k < m` and `k·a ≡ a (mod m)`, or `Holds(m_max)` if there is none.
pub fn decide_scf_circle(a: &WeightSequence, m_max: u64) -> Result<ScfVerdict<CongruenceWitness>> {
    if m_max < 3 {
        return Err(ScfError::invalid("m_max must be at least 3"));
    }
    let w = a.weights();
    let found = (3..=m_max as i64).into_par_iter().find_map_first(|m| {
        let base = sorted_residues(w, 1, m);
        (2..m).find_map(|k| {
            (sorted_residues(w, k, m) == base).then(|| CongruenceWitness {
                m,
                k,
                permutation: residue_matching(w, k, m).expect("multisets agree"),
            })
        })
    });
    Ok(match found {
        Some(witness) => ScfVerdict::Fails(witness),
        None => ScfVerdict::Holds { bound: m_max },
    })
}

/// Checks a claimed witness: the permutation realizes the congruence, the
/// realized elements `h(z)`, `h(w)` are U(n)-conjugate, and they differ.
pub fn verify_witness_circle(a: &WeightSequence, w: &CongruenceWitness) -> bool {
    let (m, k) = (w.m, w.k);
    if m <= 2 || k <= 1 || k >= m || w.permutation.len() != a.len() {
        return false;
    }
    let weights = a.weights();
    let mut seen = vec![false; a.len()];
    for (i, &j) in w.permutation.iter().enumerate() {
        if j >= a.len() || std::mem::replace(&mut seen[j], true) {
            return false;
        }
        if (k * weights[i] - weights[j]).rem_euclid(m) != 0 {
            return false;
        }
    }
    let (Ok(hz), Ok(hw)) = (a.realize(1, m), a.realize(k, m)) else {
        return false;
    };
    let conjugate = conjugate_in(&hz, &hw, hz.group()).unwrap_or(false);
    conjugate && hz != hw
}

/// `Some(c)` when the weight multiset is invariant under `x -> c - x`.
/// The only candidate is `c = min + max`.
pub fn negation_center(a: &WeightSequence) -> Option<i64> {
    let w = a.weights();
    let c = w[0] + a.max();
    let mut reflected: Vec<i64> = w.iter().map(|x| c - x).collect();
    reflected.sort_unstable();
    (reflected == w).then_some(c)
}

pub fn negation_symmetric(a: &WeightSequence) -> bool {
    negation_center(a).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(v: &[i64]) -> WeightSequence {
        normalize_weights(v).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(ws(&[4, 2, 6]).weights(), &[1, 2, 3]);
        assert_eq!(ws(&[1]).weights(), &[1]);
        assert_eq!(ws(&[0, 3, 3]).weights(), &[0, 1, 1]);
        assert!(normalize_weights(&[0, 0]).is_err());
        assert!(normalize_weights(&[]).is_err());
        assert!(normalize_weights(&[1, -2]).is_err());
        assert!(WeightSequence::new(vec![2, 4]).is_err());
        assert!(WeightSequence::new(vec![1, 2]).is_ok());
    }

    #[test]
    fn witness_verification_examples() {
        let a = ws(&[1, 2]);
        let good = CongruenceWitness {
            m: 3,
            k: 2,
            permutation: vec![1, 0],
        };
        assert!(verify_witness_circle(&a, &good));
        let bad = CongruenceWitness {
            m: 4,
            k: 3,
            permutation: vec![1, 0],
        };
        assert!(!verify_witness_circle(&a, &bad));
        // wrong matching for a genuine (m, k)
        let swapped = CongruenceWitness {
            m: 3,
            k: 2,
            permutation: vec![0, 1],
        };
        assert!(!verify_witness_circle(&a, &swapped));

        let single = ws(&[1]);
        for m in 3..20 {
            for k in 2..m {
                let w = CongruenceWitness {
                    m,
                    k,
                    permutation: vec![0],
                };
                assert!(!verify_witness_circle(&single, &w));
            }
        }
    }

    #[test]
    fn matching_handles_repeats() {
        assert_eq!(residue_matching(&[1, 1, 2], 1, 5), Some(vec![0, 1, 2]));
        assert_eq!(residue_matching(&[1, 2, 3], 3, 4), Some(vec![2, 1, 0]));
        assert_eq!(residue_matching(&[1, 2], 3, 4), None);
    }

    #[test]
    fn negation_examples() {
        assert_eq!(negation_center(&ws(&[1, 2, 3, 4, 5])), Some(6));
        assert!(!negation_symmetric(&ws(&[1, 1, 2])));
        assert_eq!(negation_center(&ws(&[1])), Some(2));
    }

    #[test]
    fn bound_is_required() {
        assert!(decide_scf_circle(&ws(&[1, 2]), 2).is_err());
        assert_eq!(ws(&[1, 3]).default_bound(), 18);
        assert_eq!(ws(&[1]).default_bound(), 3);
    }

    #[test]
    fn json_schema() {
        let v = decide_scf_circle(&ws(&[1, 2]), 5).unwrap();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"outcome":"fails","m":3,"k":2,"permutation":[1,0]}"#
        );
        let v = decide_scf_circle(&ws(&[1, 1, 2]), 50).unwrap();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"outcome":"holds","bound":50}"#
        );
    }
}
