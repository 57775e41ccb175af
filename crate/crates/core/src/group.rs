//! Tags for the compact classical groups and their maximal tori.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ScfError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// U(n)
    UnitaryA,
    /// SU(n); torus elements carry all n eigenvalue turns, summing to 0.
    SpecialUnitaryA,
    /// SO(2n+1)
    OddOrthogonalB,
    /// Sp(n)
    SymplecticC,
    /// SO(2n)
    EvenOrthogonalD,
    /// O(n), acting on the maximal torus of SO(n).
    FullOrthogonal,
}

impl Family {
    /// Whether the Weyl action includes sign changes `t -> -t`.
    pub fn is_signed(self) -> bool {
        !matches!(self, Family::UnitaryA | Family::SpecialUnitaryA)
    }
}

/// A classical group together with the dimension of its torus coordinate
/// vector (`rank`).
///
/// For U(n) and SU(n) `rank` is `n`: elements are stored as the full list of
/// eigenvalue turns. For O(n) the matrix size is kept alongside `rank = n/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTag", into = "RawTag")]
pub struct GroupTag {
    family: Family,
    rank: usize,
    matrix_size: usize,
}

impl GroupTag {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(ScfError::invalid("group rank must be at least 1"));
        }
        let matrix_size = match family {
            Family::UnitaryA | Family::SpecialUnitaryA | Family::SymplecticC => rank,
            Family::OddOrthogonalB => 2 * rank + 1,
            Family::EvenOrthogonalD => 2 * rank,
            Family::FullOrthogonal => 2 * rank,
        };
        Ok(GroupTag {
            family,
            rank,
            matrix_size,
        })
    }

    /// U(n).
    pub fn unitary(n: usize) -> Result<Self> {
        Self::new(Family::UnitaryA, n)
    }

    /// SU(n).
    pub fn special_unitary(n: usize) -> Result<Self> {
        Self::new(Family::SpecialUnitaryA, n)
    }

    /// SO(n), picking type B or D by parity. SO(1) has no torus and is rejected.
    pub fn special_orthogonal(n: usize) -> Result<Self> {
        if n % 2 == 1 {
            Self::new(Family::OddOrthogonalB, n / 2)
        } else {
            Self::new(Family::EvenOrthogonalD, n / 2)
        }
    }

    /// Sp(n), the compact symplectic group of rank n.
    pub fn symplectic(n: usize) -> Result<Self> {
        Self::new(Family::SymplecticC, n)
    }

    /// O(n) with torus rank `n / 2`.
    pub fn full_orthogonal(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(ScfError::invalid(
                "O(n) needs n >= 2 for a nontrivial torus",
            ));
        }
        Ok(GroupTag {
            family: Family::FullOrthogonal,
            rank: n / 2,
            matrix_size: n,
        })
    }

    /// Parses `"<family> <n>"` pairs such as `so 7`, `u 3`, `sp 2`, `o 5`.
    /// `n` is the matrix size except for `sp`, where it is the rank.
    pub fn parse_named(family: &str, n: &str) -> Result<Self> {
        let size: usize = n.trim().parse().map_err(|_| ScfError::Parse {
            what: "group size",
            input: n.to_string(),
        })?;
        match family.trim().to_ascii_lowercase().as_str() {
            "u" => Self::unitary(size),
            "su" => Self::special_unitary(size),
            "so" => Self::special_orthogonal(size),
            "sp" => Self::symplectic(size),
            "o" => Self::full_orthogonal(size),
            "a" => Self::new(Family::UnitaryA, size),
            "b" => Self::new(Family::OddOrthogonalB, size),
            "c" => Self::new(Family::SymplecticC, size),
            "d" => Self::new(Family::EvenOrthogonalD, size),
            other => Err(ScfError::Parse {
                what: "group family",
                input: other.to_string(),
            }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix_size(&self) -> usize {
        self.matrix_size
    }

    /// Order of the group acting on the torus coordinates: `n!` for the
    /// unitary families, `2^n n!` for B, C and O(n), `2^(n-1) n!` for D.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact: u64 = (1..=n).product();
        match self.family {
            Family::UnitaryA | Family::SpecialUnitaryA => fact,
            Family::OddOrthogonalB | Family::SymplecticC | Family::FullOrthogonal => {
                (1u64 << n) * fact
            }
            Family::EvenOrthogonalD => (1u64 << (n - 1)) * fact,
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::UnitaryA => write!(f, "U({})", self.matrix_size),
            Family::SpecialUnitaryA => write!(f, "SU({})", self.matrix_size),
            Family::OddOrthogonalB | Family::EvenOrthogonalD => {
                write!(f, "SO({})", self.matrix_size)
            }
            Family::SymplecticC => write!(f, "Sp({})", self.rank),
            Family::FullOrthogonal => write!(f, "O({})", self.matrix_size),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawTag {
    family: Family,
    rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
}

impl TryFrom<RawTag> for GroupTag {
    type Error = ScfError;

    fn try_from(raw: RawTag) -> Result<Self> {
        match (raw.family, raw.n) {
            (Family::FullOrthogonal, Some(n)) => {
                let tag = GroupTag::full_orthogonal(n)?;
                if tag.rank != raw.rank {
                    return Err(ScfError::invalid(format!(
                        "O({n}) has torus rank {}, not {}",
                        tag.rank, raw.rank
                    )));
                }
                Ok(tag)
            }
            (Family::FullOrthogonal, None) => GroupTag::full_orthogonal(2 * raw.rank),
            (family, _) => GroupTag::new(family, raw.rank),
        }
    }
}

impl From<GroupTag> for RawTag {
    fn from(tag: GroupTag) -> Self {
        RawTag {
            family: tag.family,
            rank: tag.rank,
            n: (tag.family == Family::FullOrthogonal).then_some(tag.matrix_size),
        }
    }
}
