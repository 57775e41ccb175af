//! Exact engines for deciding whether closed subgroups of compact classical
//! groups strongly control fusion.
//!
//! Everything works on torsion points of maximal tori with rational turns:
//!
//! * [`torus`] and [`weyl`]: Weyl-orbit canonical forms and a brute-force
//!   orbit oracle for the classical families.
//! * [`fusion`]: exhaustive elementwise fusion checks for torus embeddings.
//! * [`circle`]: circle subgroups of U(n) and the multiset congruence test.
//! * [`so3`]: sums of irreducible SO(3) representations.
//! * [`sympair`]: the simple compact symmetric pairs.
//!
//! Searches are bounded; a [`ScfVerdict::Holds`] always carries the bound it
//! was established up to.

pub mod circle;
pub mod error;
pub mod fusion;
pub mod group;
pub mod so3;
pub mod sympair;
pub mod torus;
pub mod turn;
pub mod verdict;
pub mod weyl;

pub use error::{Result, ScfError};
pub use group::{Family, GroupTag};
pub use torus::{canonical_form, conjugate_in, CanonicalForm, Chirality, TorusElement};
pub use turn::Turn;
pub use verdict::ScfVerdict;
