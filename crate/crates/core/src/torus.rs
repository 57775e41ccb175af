//! Maximal-torus elements and Weyl-orbit canonical forms.
//!
//! Two torus elements of a compact connected group are conjugate iff they are
//! related by the Weyl group. For the classical families the Weyl group acts on
//! turn vectors by permutations (types A) or signed permutations (B, C, and D
//! with an even number of sign changes), so an orbit is determined by:
//!
//! * A: the sorted multiset of turns;
//! * B, C, O(n): the sorted multiset of folded turns `min(t, 1 - t)`;
//! * D: the folded multiset plus, when no coordinate is fixed by negation,
//!   the parity of the number of folds performed (the chirality).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ScfError};
use crate::group::{Family, GroupTag};
use crate::turn::Turn;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawElement")]
pub struct TorusElement {
    turns: Vec<Turn>,
    group: GroupTag,
}

impl TorusElement {
    pub fn new(turns: Vec<Turn>, group: GroupTag) -> Result<Self> {
        if turns.len() != group.rank() {
            return Err(ScfError::invalid(format!(
                "{group} expects {} turns, got {}",
                group.rank(),
                turns.len()
            )));
        }
        if group.family() == Family::SpecialUnitaryA {
            let total = turns.iter().copied().sum::<Turn>();
            if total != Turn::ZERO {
                return Err(ScfError::invalid(format!(
                    "SU element turns must sum to 0 mod 1, got {total}"
                )));
            }
        }
        Ok(TorusElement { turns, group })
    }

    pub fn identity(group: GroupTag) -> Self {
        TorusElement {
            turns: vec![Turn::ZERO; group.rank()],
            group,
        }
    }

    /// Skips validation; used for Weyl images of already valid elements.
    pub(crate) fn from_parts(turns: Vec<Turn>, group: GroupTag) -> Self {
        debug_assert_eq!(turns.len(), group.rank());
        TorusElement { turns, group }
    }

    pub fn turns(&self) -> &[Turn] {
        &self.turns
    }

    pub fn group(&self) -> GroupTag {
        self.group
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(self)
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.group)?;
        for (i, t) in self.turns.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]")
    }
}

#[derive(Deserialize)]
struct RawElement {
    turns: Vec<Turn>,
    group: GroupTag,
}

impl TryFrom<RawElement> for TorusElement {
    type Error = ScfError;

    fn try_from(raw: RawElement) -> Result<Self> {
        TorusElement::new(raw.turns, raw.group)
    }
}

/// Parity of the sign changes used to reach a type D representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Even,
    Odd,
}

/// The Weyl-orbit representative of a torus element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub turns: Vec<Turn>,
    pub group: GroupTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chirality: Option<Chirality>,
}

impl CanonicalForm {
    /// The representative as a torus element of the same group.
    ///
    /// For an odd type D form the first coordinate is negated so that the
    /// element lies in the odd orbit again.
    pub fn to_element(&self) -> TorusElement {
        let mut turns = self.turns.clone();
        if self.chirality == Some(Chirality::Odd) {
            turns[0] = turns[0].negate();
        }
        TorusElement::from_parts(turns, self.group)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.group)?;
        for (i, t) in self.turns.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]")?;
        match self.chirality {
            Some(Chirality::Even) => write!(f, " even"),
            Some(Chirality::Odd) => write!(f, " odd"),
            None => Ok(()),
        }
    }
}

pub fn canonical_form(x: &TorusElement) -> CanonicalForm {
    let group = x.group;
    let mut chirality = None;
    let mut turns: Vec<Turn> = if group.family().is_signed() {
        let folds = x.turns.iter().filter(|t| t.folds()).count();
        let folded: Vec<Turn> = x.turns.iter().map(|t| t.fold()).collect();
        if group.family() == Family::EvenOrthogonalD && !folded.iter().any(|t| t.is_self_inverse())
        {
            chirality = Some(if folds % 2 == 0 {
                Chirality::Even
            } else {
                Chirality::Odd
            });
        }
        folded
    } else {
        x.turns.clone()
    };
    turns.sort_unstable_by(|a, b| b.cmp(a));
    CanonicalForm {
        turns,
        group,
        chirality,
    }
}

/// Whether `x` and `y` are conjugate in `group`.
pub fn conjugate_in(x: &TorusElement, y: &TorusElement, group: GroupTag) -> Result<bool> {
    for e in [x, y] {
        if e.group != group {
            return Err(ScfError::GroupMismatch {
                left: e.group,
                right: group,
            });
        }
    }
    Ok(canonical_form(x) == canonical_form(y))
}
