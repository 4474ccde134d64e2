//! Dense finite-group engine with σ-partition layer: σ-Hall subgroups,
//! σ-subnormality, σ-permutability, H_σ-embedded subgroups, σ-nilpotent
//! residuals, σ-Carter subgroups and HσE-group recognition, plus a harness that
//! checks the equivalence theorems built on them on concrete groups.

pub mod analysis;
pub mod arith;
pub mod bitset;
pub mod corpus;
pub mod degeneration;
pub mod dsl;
pub mod embedding;
pub mod error;
pub mod group;
pub mod hse;
pub mod lemmas;
pub mod lattice;
pub mod partition;
pub mod perm;
pub mod quotient;
pub mod sigma;
pub mod structure;
pub mod subgroup;
pub mod sweep;
pub mod theorems;

pub use analysis::Analysis;
pub use bitset::ElemSet;
pub use error::{GroupError, Result};
pub use group::{Elem, Group};
pub use lattice::Lattice;
pub use partition::{Block, PrimePartition, SigmaSignature};
pub use perm::Permutation;
pub use quotient::QuotientMap;
pub use sigma::HallSigmaSet;
pub use structure::ChiefFactor;
pub use subgroup::Subgroup;
pub use theorems::{CheckOptions, ConditionVerdict, TheoremReport};
