//! Simple compact symmetric pairs: which ones admit a fusion-controlling
//! realization, and explicit torus witnesses for the classical failures.
//!
//! Realizable (any H): `(k⊕k, Δk)`, `(su(n), so(n))`, `(su(2n), sp(n))`,
//! `(so(2n), so(2n-1))`, `(e6, f4)`. With H required connected,
//! `(su(2n), so(2n))` drops out and `(su(2n+1), so(2n+1))` stays. Everything
//! else fails: equal-rank pairs via a regular element moved by a Weyl element
//! outside `W_H`, `(so(2p+2q+2), so(2p+1)⊕so(2q+1))` via explicit block
//! rotations, and `(e6, sp(4))` by counting involution classes (catalog only).

use std::collections::HashSet;
use std::fmt;
use std::ops::Range;

use serde::de::IntoDeserializer;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ScfError};
use crate::group::{Family, GroupTag};
use crate::torus::{canonical_form, conjugate_in, TorusElement};
use crate::turn::Turn;
use crate::weyl::{weyl_group, weyl_orbit, SignedPermGroupSpec, DEFAULT_ORACLE_LIMIT};

/// Witness rotation used when none is given.
pub const DEFAULT_THETA: Turn = Turn::frac_const(1, 5);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReasonCode {
    EqualRank,
    OddSumWitness,
    InvolutionCount,
    OuterAutomorphism,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum ScfStatus {
    ScfRealizable,
    NotScf(ReasonCode),
}

impl fmt::Display for ScfStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScfStatus::ScfRealizable => write!(f, "SCF"),
            ScfStatus::NotScf(r) => write!(f, "not SCF ({r:?})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExceptionalEqualRank {
    G2A1A1,
    F4C3A1,
    F4B4,
    E6A5A1,
    E6D5T1,
    E7A7,
    E7D6A1,
    E7E6T1,
    E8D8,
    E8E7A1,
}

impl ExceptionalEqualRank {
    pub const ALL: [ExceptionalEqualRank; 10] = [
        Self::G2A1A1,
        Self::F4C3A1,
        Self::F4B4,
        Self::E6A5A1,
        Self::E6D5T1,
        Self::E7A7,
        Self::E7D6A1,
        Self::E7E6T1,
        Self::E8D8,
        Self::E8E7A1,
    ];

    fn label(self) -> &'static str {
        match self {
            Self::G2A1A1 => "(g2, su(2)⊕su(2))",
            Self::F4C3A1 => "(f4, sp(3)⊕su(2))",
            Self::F4B4 => "(f4, so(9))",
            Self::E6A5A1 => "(e6, su(6)⊕su(2))",
            Self::E6D5T1 => "(e6, so(10)⊕u(1))",
            Self::E7A7 => "(e7, su(8))",
            Self::E7D6A1 => "(e7, so(12)⊕su(2))",
            Self::E7E6T1 => "(e7, e6⊕u(1))",
            Self::E8D8 => "(e8, so(16))",
            Self::E8E7A1 => "(e8, e7⊕su(2))",
        }
    }
}

/// Symmetric pairs whose subgroup contains a maximal torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EqualRankKind {
    /// `(su(p+q), s(u(p)⊕u(q)))`, `1 ≤ p ≤ q`
    UnitaryBlocks {
        p: u32,
        q: u32,
    },
    /// `(so(2p+2q), so(2p)⊕so(2q))`, `1 ≤ p ≤ q`
    EvenOrthogonalBlocks {
        p: u32,
        q: u32,
    },
    /// `(so(2p+2q+1), so(2p)⊕so(2q+1))`, `p ≥ 1`, `q ≥ 0`
    OddOrthogonalBlocks {
        p: u32,
        q: u32,
    },
    /// `(sp(p+q), sp(p)⊕sp(q))`, `1 ≤ p ≤ q`
    SymplecticBlocks {
        p: u32,
        q: u32,
    },
    /// `(sp(n), u(n))`, `n ≥ 1`
    SymplecticUnitary {
        n: u32,
    },
    /// `(so(2n), u(n))`, `n ≥ 2`
    OrthogonalUnitary {
        n: u32,
    },
    Exceptional {
        pair: ExceptionalEqualRank,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum PairFamily {
    /// `(k⊕k, Δk)` for a compact simple `k`; `n` is the rank of `k`.
    DiagonalKK {
        n: u32,
    },
    /// `(su(2n+1), so(2n+1))`, `n ≥ 1`
    SuSoOdd {
        n: u32,
    },
    /// `(su(2n), so(2n))`, `n ≥ 2`
    SuSoEven {
        n: u32,
    },
    /// `(su(2n), sp(n))`, `n ≥ 2`
    SuSp {
        n: u32,
    },
    /// `(so(2n), so(2n-1))`, `n ≥ 2`
    SoSoOdd {
        n: u32,
    },
    E6F4,
    EqualRank(EqualRankKind),
    /// `(so(2p+2q+2), so(2p+1)⊕so(2q+1))`, `1 ≤ p ≤ q`, `p + q ≥ 3`
    SoSumOdd {
        p: u32,
        q: u32,
    },
    E6Sp4,
    /// `(su(n), so(n))` for either parity, realized by `(SU^{±1}(n), O(n))`, `n ≥ 3`
    SuO {
        n: u32,
    },
}

/// Loose parameters for building a [`PairFamily`] from its short name.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PairParams<'a> {
    pub n: Option<u32>,
    pub p: Option<u32>,
    pub q: Option<u32>,
    /// Exceptional equal-rank pair, e.g. `f4-b4`.
    pub pair: Option<&'a str>,
}

/// Short family names accepted by [`PairFamily::from_name`].
pub const FAMILY_NAMES: [&str; 16] = [
    "diagonal",
    "su-so-odd",
    "su-so-even",
    "su-sp",
    "so-so-odd",
    "e6-f4",
    "so-sum-odd",
    "e6-sp4",
    "su-o",
    "equal-rank-su",
    "equal-rank-so-even",
    "equal-rank-so-odd",
    "equal-rank-sp",
    "equal-rank-sp-u",
    "equal-rank-so-u",
    "equal-rank-exceptional",
];

impl PairFamily {
    pub fn from_name(name: &str, params: PairParams<'_>) -> Result<Self> {
        use EqualRankKind::*;
        let need = |v: Option<u32>, flag: &str| {
            v.ok_or_else(|| ScfError::invalid(format!("{name} needs parameter {flag}")))
        };
        let n = || need(params.n, "n");
        let pq = || Ok::<_, ScfError>((need(params.p, "p")?, need(params.q, "q")?));
        let family = match name {
            "diagonal" => PairFamily::DiagonalKK { n: n()? },
            "su-so-odd" => PairFamily::SuSoOdd { n: n()? },
            "su-so-even" => PairFamily::SuSoEven { n: n()? },
            "su-sp" => PairFamily::SuSp { n: n()? },
            "so-so-odd" => PairFamily::SoSoOdd { n: n()? },
            "su-o" => PairFamily::SuO { n: n()? },
            "e6-f4" => PairFamily::E6F4,
            "e6-sp4" => PairFamily::E6Sp4,
            "so-sum-odd" => {
                let (p, q) = pq()?;
                PairFamily::SoSumOdd { p, q }
            }
            "equal-rank-su" => {
                let (p, q) = pq()?;
                PairFamily::EqualRank(UnitaryBlocks { p, q })
            }
            "equal-rank-so-even" => {
                let (p, q) = pq()?;
                PairFamily::EqualRank(EvenOrthogonalBlocks { p, q })
            }
            "equal-rank-so-odd" => {
                let (p, q) = pq()?;
                PairFamily::EqualRank(OddOrthogonalBlocks { p, q })
            }
            "equal-rank-sp" => {
                let (p, q) = pq()?;
                PairFamily::EqualRank(SymplecticBlocks { p, q })
            }
            "equal-rank-sp-u" => PairFamily::EqualRank(SymplecticUnitary { n: n()? }),
            "equal-rank-so-u" => PairFamily::EqualRank(OrthogonalUnitary { n: n()? }),
            "equal-rank-exceptional" => {
                let raw = params
                    .pair
                    .ok_or_else(|| ScfError::invalid(format!("{name} needs parameter pair")))?;
                let de = IntoDeserializer::<serde::de::value::Error>::into_deserializer(raw);
                let pair = ExceptionalEqualRank::deserialize(de)
                    .map_err(|_| ScfError::invalid(format!("unknown exceptional pair {raw:?}")))?;
                PairFamily::EqualRank(Exceptional { pair })
            }
            other => return Err(ScfError::invalid(format!("unknown family {other:?}"))),
        };
        Ok(family)
    }

    pub fn validate(&self) -> Result<()> {
        use EqualRankKind::*;
        use PairFamily::*;
        let ok = match *self {
            DiagonalKK { n } | SuSoOdd { n } => n >= 1,
            SuSoEven { n } | SuSp { n } | SoSoOdd { n } => n >= 2,
            SuO { n } => n >= 3,
            E6F4 | E6Sp4 => true,
            SoSumOdd { p, q } => 1 <= p && p <= q && p + q >= 3,
            EqualRank(kind) => match kind {
                UnitaryBlocks { p, q }
                | EvenOrthogonalBlocks { p, q }
                | SymplecticBlocks { p, q } => 1 <= p && p <= q,
                OddOrthogonalBlocks { p, .. } => p >= 1,
                SymplecticUnitary { n } => n >= 1,
                OrthogonalUnitary { n } => n >= 2,
                Exceptional { .. } => true,
            },
        };
        if ok {
            Ok(())
        } else {
            Err(ScfError::invalid(format!(
                "parameters out of range for {self:?}"
            )))
        }
    }

    /// The Lie algebra pair, e.g. `(so(8), so(3)⊕so(5))`.
    pub fn label(&self) -> String {
        use EqualRankKind::*;
        use PairFamily::*;
        match *self {
            DiagonalKK { n } => format!("(k⊕k, Δ(k)), rank k = {n}"),
            SuSoOdd { n } => format!("(su({}), so({}))", 2 * n + 1, 2 * n + 1),
            SuSoEven { n } => format!("(su({}), so({}))", 2 * n, 2 * n),
            SuSp { n } => format!("(su({}), sp({n}))", 2 * n),
            SoSoOdd { n } => format!("(so({}), so({}))", 2 * n, 2 * n - 1),
            E6F4 => "(e6, f4)".to_string(),
            E6Sp4 => "(e6, sp(4))".to_string(),
            SuO { n } => format!("(su({n}), so({n}))"),
            SoSumOdd { p, q } => format!(
                "(so({}), so({})⊕so({}))",
                2 * p + 2 * q + 2,
                2 * p + 1,
                2 * q + 1
            ),
            EqualRank(kind) => match kind {
                UnitaryBlocks { p, q } => format!("(su({}), s(u({p})⊕u({q})))", p + q),
                EvenOrthogonalBlocks { p, q } => {
                    format!("(so({}), so({})⊕so({}))", 2 * (p + q), 2 * p, 2 * q)
                }
                OddOrthogonalBlocks { p, q } => {
                    format!("(so({}), so({})⊕so({}))", 2 * (p + q) + 1, 2 * p, 2 * q + 1)
                }
                SymplecticBlocks { p, q } => format!("(sp({}), sp({p})⊕sp({q}))", p + q),
                SymplecticUnitary { n } => format!("(sp({n}), u({n}))"),
                OrthogonalUnitary { n } => format!("(so({}), u({n}))", 2 * n),
                Exceptional { pair } => pair.label().to_string(),
            },
        }
    }
}

/// A classified symmetric pair. `status` allows disconnected `H`;
/// `connected_status` is the answer when `H` must be connected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymPairCase {
    pub family: PairFamily,
    pub label: String,
    pub status: ScfStatus,
    pub connected_status: ScfStatus,
}

pub fn classify_pair(family: PairFamily) -> Result<SymPairCase> {
    use PairFamily::*;
    use ReasonCode::{InvolutionCount, OddSumWitness, OuterAutomorphism};
    use ScfStatus::*;
    family.validate()?;
    let (status, connected_status) = match family {
        DiagonalKK { .. } | SuSoOdd { .. } | SuSp { .. } | SoSoOdd { .. } | E6F4 => {
            (ScfRealizable, ScfRealizable)
        }
        SuSoEven { .. } => (ScfRealizable, NotScf(OuterAutomorphism)),
        SuO { n } if n % 2 == 0 => (ScfRealizable, NotScf(OuterAutomorphism)),
        SuO { .. } => (ScfRealizable, ScfRealizable),
        EqualRank(_) => (NotScf(ReasonCode::EqualRank), NotScf(ReasonCode::EqualRank)),
        SoSumOdd { .. } => (NotScf(OddSumWitness), NotScf(OddSumWitness)),
        E6Sp4 => (NotScf(InvolutionCount), NotScf(InvolutionCount)),
    };
    Ok(SymPairCase {
        family,
        label: family.label(),
        status,
        connected_status,
    })
}

/// One row per family for catalog listings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub name: &'static str,
    pub pair: &'static str,
    pub params: &'static str,
    pub status: ScfStatus,
    pub connected_status: ScfStatus,
}

pub fn catalog() -> Vec<CatalogRow> {
    use ReasonCode::*;
    use ScfStatus::*;
    let row = |name, pair, params, status, connected_status| CatalogRow {
        name,
        pair,
        params,
        status,
        connected_status,
    };
    let mut rows = vec![
        row(
            "diagonal",
            "(k⊕k, Δ(k))",
            "k compact simple",
            ScfRealizable,
            ScfRealizable,
        ),
        row(
            "su-so-odd",
            "(su(2n+1), so(2n+1))",
            "n ≥ 1",
            ScfRealizable,
            ScfRealizable,
        ),
        row(
            "su-so-even",
            "(su(2n), so(2n))",
            "n ≥ 2",
            ScfRealizable,
            NotScf(OuterAutomorphism),
        ),
        row(
            "su-o",
            "(su(n), so(n)) via (SU±(n), O(n))",
            "n ≥ 3",
            ScfRealizable,
            ScfRealizable,
        ),
        row(
            "su-sp",
            "(su(2n), sp(n))",
            "n ≥ 2",
            ScfRealizable,
            ScfRealizable,
        ),
        row(
            "so-so-odd",
            "(so(2n), so(2n-1))",
            "n ≥ 2",
            ScfRealizable,
            ScfRealizable,
        ),
        row("e6-f4", "(e6, f4)", "", ScfRealizable, ScfRealizable),
        row(
            "equal-rank-su",
            "(su(p+q), s(u(p)⊕u(q)))",
            "1 ≤ p ≤ q",
            NotScf(EqualRank),
            NotScf(EqualRank),
        ),
        row(
            "equal-rank-so-even",
            "(so(2p+2q), so(2p)⊕so(2q))",
            "1 ≤ p ≤ q",
            NotScf(EqualRank),
            NotScf(EqualRank),
        ),
        row(
            "equal-rank-so-odd",
            "(so(2p+2q+1), so(2p)⊕so(2q+1))",
            "p ≥ 1, q ≥ 0",
            NotScf(EqualRank),
            NotScf(EqualRank),
        ),
        row(
            "equal-rank-sp",
            "(sp(p+q), sp(p)⊕sp(q))",
            "1 ≤ p ≤ q",
            NotScf(EqualRank),
            NotScf(EqualRank),
        ),
        row(
            "equal-rank-sp-u",
            "(sp(n), u(n))",
            "n ≥ 1",
            NotScf(EqualRank),
            NotScf(EqualRank),
        ),
        row(
            "equal-rank-so-u",
            "(so(2n), u(n))",
            "n ≥ 2",
            NotScf(EqualRank),
            NotScf(EqualRank),
        ),
    ];
    for pair in ExceptionalEqualRank::ALL {
        rows.push(row(
            "equal-rank-exceptional",
            pair.label(),
            "",
            NotScf(EqualRank),
            NotScf(EqualRank),
        ));
    }
    rows.push(row(
        "so-sum-odd",
        "(so(2p+2q+2), so(2p+1)⊕so(2q+1))",
        "1 ≤ p ≤ q, p+q ≥ 3",
        NotScf(OddSumWitness),
        NotScf(OddSumWitness),
    ));
    rows.push(row(
        "e6-sp4",
        "(e6, sp(4))",
        "",
        NotScf(InvolutionCount),
        NotScf(InvolutionCount),
    ));
    rows
}

/// A subgroup factor occupying consecutive ambient torus coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub group: GroupTag,
    pub range: Range<usize>,
}

/// Torus elements `x`, `y` of a block subgroup, meant to be fused by the
/// ambient group but not by the subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub x: TorusElement,
    pub y: TorusElement,
    pub ambient: GroupTag,
    pub subgroup_blocks: Vec<Block>,
}

impl PairWitness {
    pub fn new(
        x: TorusElement,
        y: TorusElement,
        ambient: GroupTag,
        subgroup_blocks: Vec<Block>,
    ) -> Result<Self> {
        if x.group() != ambient || y.group() != ambient {
            return Err(ScfError::invalid(
                "witness elements must live in the ambient torus",
            ));
        }
        let mut end = 0;
        for b in &subgroup_blocks {
            if b.range.start < end
                || b.range.end > ambient.rank()
                || b.range.len() != b.group.rank()
            {
                return Err(ScfError::invalid(format!(
                    "block {} at {:?} does not fit {ambient}",
                    b.group, b.range
                )));
            }
            for e in [&x, &y] {
                TorusElement::new(e.turns()[b.range.clone()].to_vec(), b.group)?;
            }
            end = b.range.end;
        }
        Ok(PairWitness {
            x,
            y,
            ambient,
            subgroup_blocks,
        })
    }

    fn block_element(&self, e: &TorusElement, b: &Block) -> TorusElement {
        TorusElement::new(e.turns()[b.range.clone()].to_vec(), b.group)
            .expect("blocks validated on construction")
    }

    /// Turns outside every block; the subgroup acts trivially on them.
    fn outside_blocks(&self, e: &TorusElement) -> Vec<Turn> {
        (0..self.ambient.rank())
            .filter(|i| !self.subgroup_blocks.iter().any(|b| b.range.contains(i)))
            .map(|i| e.turns()[i])
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerification {
    pub ambient_conjugate: bool,
    pub subgroup_conjugate: bool,
}

impl PairVerification {
    /// Fused in the ambient group, not in the subgroup.
    pub fn is_counterexample(&self) -> bool {
        self.ambient_conjugate && !self.subgroup_conjugate
    }
}

pub fn verify_pair_witness(w: &PairWitness) -> PairVerification {
    let ambient_conjugate = canonical_form(&w.x) == canonical_form(&w.y);
    let subgroup_conjugate = w.outside_blocks(&w.x) == w.outside_blocks(&w.y)
        && w.subgroup_blocks.iter().all(|b| {
            let (bx, by) = (w.block_element(&w.x, b), w.block_element(&w.y, b));
            conjugate_in(&bx, &by, b.group).expect("same block group")
        });
    PairVerification {
        ambient_conjugate,
        subgroup_conjugate,
    }
}

/// The block rotations for `SO(2p+1)×SO(2q+1) ⊂ SO(2p+2q+2)`:
/// `x` rotates by `theta` once in each factor, `y` twice in the second.
pub fn build_witness_so_sum(p: u32, q: u32, theta: Turn) -> Result<PairWitness> {
    PairFamily::SoSumOdd { p, q }.validate()?;
    if theta.is_self_inverse() {
        return Err(ScfError::DegenerateWitness(format!(
            "theta = {theta} is fixed by negation"
        )));
    }
    if theta > Turn::HALF {
        return Err(ScfError::invalid(format!(
            "theta = {theta} must lie in (0, 1/2)"
        )));
    }
    let (p, q) = (p as usize, q as usize);
    let ambient = GroupTag::new(Family::EvenOrthogonalD, p + q + 1)?;
    let first = GroupTag::new(Family::OddOrthogonalB, p)?;
    let second = GroupTag::new(Family::OddOrthogonalB, q)?;

    let mut x = vec![Turn::ZERO; p + q + 1];
    x[0] = theta;
    x[p] = theta;
    let mut y = vec![Turn::ZERO; p + q + 1];
    y[p] = theta;
    y[p + 1] = theta;

    PairWitness::new(
        TorusElement::new(x, ambient)?,
        TorusElement::new(y, ambient)?,
        ambient,
        vec![
            Block {
                group: first,
                range: 0..p,
            },
            Block {
                group: second,
                range: p..p + q,
            },
        ],
    )
}

/// The ambient group and block Weyl subgroup for the equal-rank families
/// with a classical block structure.
pub fn equal_rank_instance(kind: EqualRankKind) -> Result<(GroupTag, SignedPermGroupSpec)> {
    use EqualRankKind::*;
    PairFamily::EqualRank(kind).validate()?;
    let (ambient, factors) = match kind {
        UnitaryBlocks { p, q } => (
            GroupTag::unitary((p + q) as usize)?,
            vec![
                GroupTag::unitary(p as usize)?,
                GroupTag::unitary(q as usize)?,
            ],
        ),
        EvenOrthogonalBlocks { p, q } => (
            GroupTag::new(Family::EvenOrthogonalD, (p + q) as usize)?,
            vec![
                GroupTag::new(Family::EvenOrthogonalD, p as usize)?,
                GroupTag::new(Family::EvenOrthogonalD, q as usize)?,
            ],
        ),
        OddOrthogonalBlocks { p, q } => {
            let mut factors = vec![GroupTag::new(Family::EvenOrthogonalD, p as usize)?];
            if q > 0 {
                factors.push(GroupTag::new(Family::OddOrthogonalB, q as usize)?);
            }
            (
                GroupTag::new(Family::OddOrthogonalB, (p + q) as usize)?,
                factors,
            )
        }
        SymplecticBlocks { p, q } => (
            GroupTag::symplectic((p + q) as usize)?,
            vec![
                GroupTag::symplectic(p as usize)?,
                GroupTag::symplectic(q as usize)?,
            ],
        ),
        other => {
            return Err(ScfError::NoWitness(format!(
                "{} has no block torus model here",
                PairFamily::EqualRank(other).label()
            )))
        }
    };
    Ok((ambient, SignedPermGroupSpec::block_product(&factors)))
}

/// Smallest `d` for which `[1/d, 2/d, ..., r/d]` avoids `0, 1/2` and has a
/// free Weyl orbit.
pub fn regular_element(ambient: GroupTag) -> Result<TorusElement> {
    let r = ambient.rank() as i64;
    for d in 2..=4 * r + 4 {
        let turns: Vec<Turn> = (1..=r).map(|i| Turn::frac(i, d)).collect();
        if turns.iter().any(|t| t.is_self_inverse()) {
            continue;
        }
        let Ok(x) = TorusElement::new(turns, ambient) else {
            continue;
        };
        if weyl_orbit(&x)?.len() as u64 == ambient.weyl_order() {
            return Ok(x);
        }
    }
    Err(ScfError::NoWitness(format!(
        "no regular element found for {ambient}"
    )))
}

/// A regular `x` and `y = w(x)` for the first ambient Weyl element `w`
/// outside `sub_weyl`.
pub fn equal_rank_witness(
    ambient: GroupTag,
    sub_weyl: &SignedPermGroupSpec,
) -> Result<PairWitness> {
    if sub_weyl.degree() != ambient.rank() {
        return Err(ScfError::invalid(
            "subgroup Weyl group acts on the wrong number of coordinates",
        ));
    }
    if ambient.rank() > DEFAULT_ORACLE_LIMIT {
        return Err(ScfError::OracleLimit {
            rank: ambient.rank(),
            limit: DEFAULT_ORACLE_LIMIT,
        });
    }
    if let Some(g) = sub_weyl
        .generators()
        .iter()
        .find(|g| !g.belongs_to(ambient))
    {
        return Err(ScfError::invalid(format!(
            "generator {g:?} is not in the Weyl group of {ambient}"
        )));
    }
    if sub_weyl.blocks().is_empty() {
        return Err(ScfError::invalid(
            "equal-rank witnesses need the subgroup block structure",
        ));
    }
    let sub_elements: HashSet<_> = sub_weyl.elements();
    if sub_elements.len() as u64 == ambient.weyl_order() {
        return Err(ScfError::NoWitness(
            "subgroup Weyl group is the full Weyl group".into(),
        ));
    }
    let x = regular_element(ambient)?;
    let w = weyl_group(ambient)
        .into_iter()
        .find(|w| !sub_elements.contains(w))
        .expect("a proper subgroup misses some element");
    let y = TorusElement::new(w.apply(x.turns()), ambient)?;
    debug_assert!(!sub_weyl.orbit(x.turns()).contains(y.turns()));
    let blocks = sub_weyl
        .blocks()
        .iter()
        .map(|(group, range)| Block {
            group: *group,
            range: range.clone(),
        })
        .collect();
    PairWitness::new(x, y, ambient, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turn::parse_turns;

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_pair(PairFamily::SoSoOdd { n: 4 }).unwrap().status,
            ScfStatus::ScfRealizable
        );
        assert_eq!(
            classify_pair(PairFamily::SoSumOdd { p: 1, q: 2 })
                .unwrap()
                .status,
            ScfStatus::NotScf(ReasonCode::OddSumWitness)
        );
        assert_eq!(
            classify_pair(PairFamily::E6F4).unwrap().status,
            ScfStatus::ScfRealizable
        );
        assert!(classify_pair(PairFamily::SoSumOdd { p: 1, q: 1 }).is_err());
        assert!(classify_pair(PairFamily::SoSumOdd { p: 3, q: 2 }).is_err());
    }

    #[test]
    fn connectedness_flag() {
        let c = classify_pair(PairFamily::SuSoEven { n: 3 }).unwrap();
        assert_eq!(c.status, ScfStatus::ScfRealizable);
        assert_eq!(
            c.connected_status,
            ScfStatus::NotScf(ReasonCode::OuterAutomorphism)
        );
        let c = classify_pair(PairFamily::SuSoOdd { n: 3 }).unwrap();
        assert_eq!(c.connected_status, ScfStatus::ScfRealizable);
    }

    #[test]
    fn so_sum_witness_layout() {
        let w = build_witness_so_sum(1, 2, Turn::frac(1, 5)).unwrap();
        assert_eq!(
            w.ambient,
            GroupTag::new(Family::EvenOrthogonalD, 4).unwrap()
        );
        assert_eq!(w.x.turns(), parse_turns("1/5,1/5,0,0").unwrap().as_slice());
        assert_eq!(w.y.turns(), parse_turns("0,1/5,1/5,0").unwrap().as_slice());
        assert_eq!(w.subgroup_blocks[0].range, 0..1);
        assert_eq!(w.subgroup_blocks[1].range, 1..3);
        let v = verify_pair_witness(&w);
        assert!(v.ambient_conjugate && !v.subgroup_conjugate);
    }

    #[test]
    fn so_sum_witness_errors() {
        assert!(matches!(
            build_witness_so_sum(1, 2, Turn::ZERO),
            Err(ScfError::DegenerateWitness(_))
        ));
        assert!(matches!(
            build_witness_so_sum(1, 2, Turn::HALF),
            Err(ScfError::DegenerateWitness(_))
        ));
        assert!(build_witness_so_sum(1, 2, Turn::frac(3, 5)).is_err());
        assert!(build_witness_so_sum(1, 1, Turn::frac(1, 5)).is_err());
    }

    #[test]
    fn trivial_and_perturbed_witnesses() {
        let w = build_witness_so_sum(2, 2, Turn::frac(1, 7)).unwrap();
        let same = PairWitness::new(
            w.x.clone(),
            w.x.clone(),
            w.ambient,
            w.subgroup_blocks.clone(),
        )
        .unwrap();
        let v = verify_pair_witness(&same);
        assert!(v.ambient_conjugate && v.subgroup_conjugate);

        let mut turns = w.y.turns().to_vec();
        turns[2] = Turn::frac(2, 7);
        let y = TorusElement::new(turns, w.ambient).unwrap();
        let perturbed = PairWitness::new(w.x.clone(), y, w.ambient, w.subgroup_blocks).unwrap();
        let v = verify_pair_witness(&perturbed);
        assert!(!v.ambient_conjugate && !v.subgroup_conjugate);
    }

    #[test]
    fn equal_rank_instances() {
        let (amb, sub) =
            equal_rank_instance(EqualRankKind::EvenOrthogonalBlocks { p: 2, q: 2 }).unwrap();
        let w = equal_rank_witness(amb, &sub).unwrap();
        assert!(verify_pair_witness(&w).is_counterexample());
        assert_eq!(weyl_orbit(&w.x).unwrap().len() as u64, amb.weyl_order());

        let (amb, sub) =
            equal_rank_instance(EqualRankKind::SymplecticBlocks { p: 1, q: 1 }).unwrap();
        let w = equal_rank_witness(amb, &sub).unwrap();
        assert!(verify_pair_witness(&w).is_counterexample());

        assert!(equal_rank_instance(EqualRankKind::SymplecticUnitary { n: 2 }).is_err());
    }

    #[test]
    fn full_weyl_group_has_no_witness() {
        let c2 = GroupTag::symplectic(2).unwrap();
        let full = SignedPermGroupSpec::block_product(&[c2]);
        assert!(matches!(
            equal_rank_witness(c2, &full),
            Err(ScfError::NoWitness(_))
        ));
    }

    #[test]
    fn rejects_blocks_that_do_not_fit() {
        let d2 = GroupTag::new(Family::EvenOrthogonalD, 2).unwrap();
        let b1 = GroupTag::new(Family::OddOrthogonalB, 1).unwrap();
        let x = TorusElement::identity(d2);
        let bad = vec![Block {
            group: b1,
            range: 1..3,
        }];
        assert!(PairWitness::new(x.clone(), x, d2, bad).is_err());
    }
}
