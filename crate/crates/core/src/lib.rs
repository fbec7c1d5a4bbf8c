//! Exact arithmetic for numerical semigroup rings `k[[S]]` and their monomial
//! ideals, with a focus on Arf semigroups: Arf checks and closure, the tower
//! of blow-ups, and the decomposition of every integrally closed ideal into
//! a product of maximal ideals of the rings in that tower.

pub mod arf;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod ideal;
pub mod oracle;
pub mod props;
pub mod semigroup;

pub use arf::{
    arf_closure, from_multiplicity_sequence, is_arf_pattern, is_arf_stability, lipman_tower,
    ArfVerdict, ArfWitness, LipmanTower, MultiplicitySequence,
};
pub use decomp::{decompose, decompose_fast, DecompositionResult};
pub use error::{Error, Result};
pub use ideal::{principal_closure, IntegrallyClosedIdeal, ValueIdeal};
pub use semigroup::NumericalSemigroup;
