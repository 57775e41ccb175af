//! Explicit signed-permutation Weyl groups.
//!
//! This is the brute-force side of torus conjugacy: orbits are enumerated
//! element by element, independent of the canonical forms in [`crate::torus`].

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::ops::Range;

use itertools::Itertools;

use crate::error::{Result, ScfError};
use crate::group::{Family, GroupTag};
use crate::torus::TorusElement;
use crate::turn::Turn;

/// Largest rank for which [`weyl_orbit`] enumerates.
pub const DEFAULT_ORACLE_LIMIT: usize = 6;

/// A signed permutation acting on turn vectors by
/// `w(x)[i] = sign[i] * x[perm[i]]`, where a negative sign maps `t` to `-t`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPerm {
    perm: Vec<usize>,
    negate: Vec<bool>,
}

impl SignedPerm {
    pub fn new(perm: Vec<usize>, negate: Vec<bool>) -> Result<Self> {
        if perm.len() != negate.len() {
            return Err(ScfError::invalid("permutation and sign lengths differ"));
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(ScfError::invalid(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(SignedPerm { perm, negate })
    }

    pub fn identity(degree: usize) -> Self {
        SignedPerm {
            perm: (0..degree).collect(),
            negate: vec![false; degree],
        }
    }

    /// Swaps coordinates `i` and `j`.
    pub fn transposition(degree: usize, i: usize, j: usize) -> Self {
        let mut w = Self::identity(degree);
        w.perm.swap(i, j);
        w
    }

    /// Negates the listed coordinates.
    pub fn sign_change(degree: usize, coords: &[usize]) -> Self {
        let mut w = Self::identity(degree);
        for &c in coords {
            w.negate[c] = !w.negate[c];
        }
        w
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn negations(&self) -> usize {
        self.negate.iter().filter(|&&n| n).count()
    }

    pub fn is_unsigned(&self) -> bool {
        self.negations() == 0
    }

    pub fn apply(&self, turns: &[Turn]) -> Vec<Turn> {
        self.perm
            .iter()
            .zip(&self.negate)
            .map(|(&p, &neg)| if neg { turns[p].negate() } else { turns[p] })
            .collect()
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        let negate = self
            .perm
            .iter()
            .zip(&self.negate)
            .map(|(&p, &n)| n ^ other.negate[p])
            .collect();
        SignedPerm { perm, negate }
    }

    /// Whether this element lies in the Weyl group of `group`.
    pub fn belongs_to(&self, group: GroupTag) -> bool {
        if self.degree() != group.rank() {
            return false;
        }
        match group.family() {
            Family::UnitaryA | Family::SpecialUnitaryA => self.is_unsigned(),
            Family::EvenOrthogonalD => self.negations().is_multiple_of(2),
            _ => true,
        }
    }
}

/// All Weyl group elements of `group`, ordered lexicographically by
/// permutation and then by sign mask.
pub fn weyl_group(group: GroupTag) -> Vec<SignedPerm> {
    let n = group.rank();
    let sign_masks: Vec<Vec<bool>> = if group.family().is_signed() {
        (0u32..1 << n)
            .map(|mask| (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect())
            .filter(|neg: &Vec<bool>| {
                group.family() != Family::EvenOrthogonalD
                    || neg.iter().filter(|&&b| b).count() % 2 == 0
            })
            .collect()
    } else {
        vec![vec![false; n]]
    };
    (0..n)
        .permutations(n)
        .flat_map(|perm| {
            sign_masks.iter().map(move |neg| SignedPerm {
                perm: perm.clone(),
                negate: neg.clone(),
            })
        })
        .collect()
}

/// The full Weyl orbit of `x`, refusing ranks above [`DEFAULT_ORACLE_LIMIT`].
pub fn weyl_orbit(x: &TorusElement) -> Result<BTreeSet<TorusElement>> {
    weyl_orbit_with_limit(x, DEFAULT_ORACLE_LIMIT)
}

pub fn weyl_orbit_with_limit(x: &TorusElement, limit: usize) -> Result<BTreeSet<TorusElement>> {
    let group = x.group();
    if group.rank() > limit {
        return Err(ScfError::OracleLimit {
            rank: group.rank(),
            limit,
        });
    }
    Ok(weyl_group(group)
        .iter()
        .map(|w| TorusElement::from_parts(w.apply(x.turns()), group))
        .collect())
}

/// A subgroup of a Weyl group, given by generators, optionally with the block
/// structure of the subgroup it comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermGroupSpec {
    degree: usize,
    generators: Vec<SignedPerm>,
    blocks: Vec<(GroupTag, Range<usize>)>,
}

impl SignedPermGroupSpec {
    pub fn new(
        degree: usize,
        generators: Vec<SignedPerm>,
        blocks: Vec<(GroupTag, Range<usize>)>,
    ) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(ScfError::invalid(format!(
                "generator of degree {} in a degree {degree} group",
                g.degree()
            )));
        }
        Ok(SignedPermGroupSpec {
            degree,
            generators,
            blocks,
        })
    }

    /// Weyl group of a block-diagonal product of classical groups, with the
    /// factors occupying consecutive torus coordinates.
    pub fn block_product(factors: &[GroupTag]) -> Self {
        let degree = factors.iter().map(GroupTag::rank).sum();
        let mut generators = Vec::new();
        let mut blocks = Vec::new();
        let mut start = 0;
        for &factor in factors {
            let range = start..start + factor.rank();
            for i in range.start..range.end - 1 {
                generators.push(SignedPerm::transposition(degree, i, i + 1));
            }
            match factor.family() {
                Family::UnitaryA | Family::SpecialUnitaryA => {}
                Family::EvenOrthogonalD => {
                    if factor.rank() >= 2 {
                        generators.push(SignedPerm::sign_change(degree, &[start, start + 1]));
                    }
                }
                _ => generators.push(SignedPerm::sign_change(degree, &[start])),
            }
            blocks.push((factor, range.clone()));
            start = range.end;
        }
        SignedPermGroupSpec {
            degree,
            generators,
            blocks,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[SignedPerm] {
        &self.generators
    }

    pub fn blocks(&self) -> &[(GroupTag, Range<usize>)] {
        &self.blocks
    }

    /// Every element of the generated group (breadth-first closure).
    pub fn elements(&self) -> HashSet<SignedPerm> {
        let id = SignedPerm::identity(self.degree);
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for g in &self.generators {
                let next = g.compose(&w);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// Orbit of a turn vector under the generated group.
    pub fn orbit(&self, turns: &[Turn]) -> HashSet<Vec<Turn>> {
        let mut seen = HashSet::from([turns.to_vec()]);
        let mut queue = VecDeque::from([turns.to_vec()]);
        while let Some(v) = queue.pop_front() {
            for g in &self.generators {
                let next = g.apply(&v);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }
}
