//! Exhaustive elementwise fusion checks on torsion points of a torus.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ScfError};
use crate::group::{Family, GroupTag};
use crate::torus::{canonical_form, CanonicalForm, TorusElement};
use crate::turn::Turn;

/// How the subgroup's torus sits inside the ambient torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbeddingRule {
    /// Same group on both sides.
    Identity,
    /// SO(2n-1) ⊂ SO(2n): the extra ambient coordinate is the zero turn.
    AppendZeroTurn,
    /// SO(2n) ⊂ SO(2n+1): same turns, the ambient group gains all sign changes.
    SameTurns,
}

impl EmbeddingRule {
    pub fn check(self, sub: GroupTag, amb: GroupTag) -> Result<()> {
        let ok = match self {
            EmbeddingRule::Identity => sub == amb,
            EmbeddingRule::AppendZeroTurn => {
                sub.family() == Family::OddOrthogonalB
                    && amb.family() == Family::EvenOrthogonalD
                    && amb.rank() == sub.rank() + 1
            }
            EmbeddingRule::SameTurns => {
                sub.family() == Family::EvenOrthogonalD
                    && amb.family() == Family::OddOrthogonalB
                    && amb.rank() == sub.rank()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(ScfError::UnsupportedEmbedding(format!(
                "{self:?} from {sub} into {amb}"
            )))
        }
    }

    /// Picks the rule for a pair of groups, if one applies.
    pub fn infer(sub: GroupTag, amb: GroupTag) -> Result<Self> {
        [
            EmbeddingRule::Identity,
            EmbeddingRule::AppendZeroTurn,
            EmbeddingRule::SameTurns,
        ]
        .into_iter()
        .find(|r| r.check(sub, amb).is_ok())
        .ok_or_else(|| ScfError::UnsupportedEmbedding(format!("no rule from {sub} into {amb}")))
    }

    pub fn embed(self, x: &TorusElement, amb: GroupTag) -> Result<TorusElement> {
        self.check(x.group(), amb)?;
        let mut turns = x.turns().to_vec();
        if self == EmbeddingRule::AppendZeroTurn {
            turns.push(Turn::ZERO);
        }
        TorusElement::new(turns, amb)
    }
}

/// All elements of `group`'s torus whose turns are multiples of `1/q`, in
/// lexicographic order of numerators. SU elements off the determinant-one
/// locus are skipped.
pub fn torsion_elements(group: GroupTag, q: u32) -> Vec<TorusElement> {
    let rank = group.rank();
    let q = q as i64;
    let mut out = Vec::new();
    let mut numers = vec![0i64; rank];
    loop {
        let turns: Vec<Turn> = numers.iter().map(|&p| Turn::frac(p, q)).collect();
        if let Ok(x) = TorusElement::new(turns, group) {
            out.push(x);
        }
        // odometer increment, last coordinate fastest
        let mut i = rank;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            numers[i] += 1;
            if numers[i] < q {
                break;
            }
            numers[i] = 0;
        }
    }
}

/// A pair of subgroup elements fused by the ambient group but not by the
/// subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionWitness {
    pub x: TorusElement,
    pub y: TorusElement,
}

/// Searches the `q`-torsion of `sub`'s torus for a [`FusionWitness`].
///
/// Elements are bucketed by the canonical form of their ambient image; a
/// bucket holding two distinct subgroup canonical forms is a counterexample.
/// The first such pair in torsion enumeration order is returned.
pub fn fusion_counterexample(
    sub: GroupTag,
    amb: GroupTag,
    embed: EmbeddingRule,
    q: u32,
) -> Result<Option<FusionWitness>> {
    embed.check(sub, amb)?;
    if q == 0 {
        return Err(ScfError::invalid("torsion order q must be positive"));
    }
    let elements = torsion_elements(sub, q);
    let keyed: Vec<(CanonicalForm, CanonicalForm)> = elements
        .par_iter()
        .map(|x| {
            let image = embed.embed(x, amb)?;
            Ok((canonical_form(&image), canonical_form(x)))
        })
        .collect::<Result<_>>()?;

    let mut buckets: HashMap<&CanonicalForm, (&CanonicalForm, usize)> = HashMap::new();
    for (i, (amb_key, sub_key)) in keyed.iter().enumerate() {
        match buckets.get(amb_key) {
            Some(&(first_key, j)) if first_key != sub_key => {
                return Ok(Some(FusionWitness {
                    x: elements[j].clone(),
                    y: elements[i].clone(),
                }));
            }
            Some(_) => {}
            None => {
                buckets.insert(amb_key, (sub_key, i));
            }
        }
    }
    Ok(None)
}

/// True iff no two `q`-torsion elements of `sub` are fused in `amb` without
/// being conjugate in `sub`.
pub fn fusion_elementwise(
    sub: GroupTag,
    amb: GroupTag,
    embed: EmbeddingRule,
    q: u32,
) -> Result<bool> {
    Ok(fusion_counterexample(sub, amb, embed, q)?.is_none())
}
